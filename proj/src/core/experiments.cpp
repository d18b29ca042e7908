#include "locz/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <thread>

#include "json.hpp"
#include "locz/asymptotics.hpp"
#include "locz/error.hpp"
#include "locz/game.hpp"
#include "locz/gnp.hpp"
#include "locz/rng.hpp"
#include "locz/strategies.hpp"

namespace locz {

using nlohmann::ordered_json;

namespace {

constexpr std::size_t kMaxResamples = 10;
constexpr std::uint64_t kRobberStream = std::uint64_t{1} << 20;

// Runs body(0..count-1) on up to `threads` workers. Results must be written
// by index; the first failure (by index) is rethrown after all workers stop.
template <typename F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(threads, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = count;
  std::exception_ptr failure;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (i < failed_at) {
            failed_at = i;
            failure = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double degree_of(const ExperimentConfig& config) {
  return config.d ? *config.d : *config.p * config.n;
}

// i for sphere measurements: the regime's exponent when d is inside (1, n),
// else the override or 1.
int sphere_exponent(const ExperimentConfig& config, std::optional<RegimeParams>& regime) {
  const double d = degree_of(config);
  if (config.n >= 3 && d > 1 && d < config.n) {
    regime = compute_regime(config.n, d, config.i_override);
    return regime->i;
  }
  return config.i_override.value_or(1);
}

std::unique_ptr<RobberStrategy> make_robber(const std::string& name, std::uint64_t seed,
                                            std::optional<Distance> target) {
  if (name == "greedy-robber") return greedy_robber();
  if (name == "diametric-robber") return diametric_robber({target});
  if (name == "random-robber") return random_robber(seed);
  throw Error(ErrorCode::InvalidArgument, "unknown robber '" + name + "'");
}

Graph connected_sample(const ExperimentConfig& config, double p, std::uint64_t trial_seed,
                       std::size_t& resamples) {
  for (std::size_t a = 0;; ++a) {
    Graph g = generate_gnp({config.n, p, derive_seed(trial_seed, a + 1)});
    if (is_connected(g)) {
      resamples = a;
      return g;
    }
    if (a == kMaxResamples) {
      throw Error(ErrorCode::TooManyDisconnectedResamples,
                  "more than " + std::to_string(kMaxResamples) +
                      " disconnected samples in one trial");
    }
  }
}

CaptureStats run_games(const ExperimentConfig& config, bool survival) {
  validate(config, true);
  const double p = edge_probability(config);
  const std::size_t k = resolve_k(config).k;
  const std::size_t max_rounds = resolve_max_rounds(config);
  const std::string robber_name =
      !config.robber.empty() ? config.robber : (survival ? "diametric-robber" : "greedy-robber");
  std::optional<RegimeParams> regime;
  const int regime_i = sphere_exponent(config, regime);
  const bool has_regime = regime.has_value();

  std::vector<TrialRecord> records(config.trials);
  parallel_for(config.trials, thread_budget(config), [&](std::size_t t) {
    TrialRecord rec;
    rec.seed = derive_seed(config.seed, t);
    const Graph g = connected_sample(config, p, rec.seed, rec.resamples);
    std::optional<Distance> target;
    if (survival) target = diameter(g);
    auto cop = random_cop({k, std::nullopt});
    auto robber = make_robber(robber_name, derive_seed(rec.seed, kRobberStream), target);
    const Transcript tr = play(g, k, *cop, *robber, {max_rounds, derive_seed(rec.seed, 0)});
    rec.captured = tr.outcome == Outcome::CopWin;
    rec.rounds = tr.rounds_played;
    const Distance far_i =
        has_regime || !target ? static_cast<Distance>(regime_i) : *target - 1;
    for (const auto& round : tr.history.rounds) {
      rec.candidates.push_back(round.partition.total());
      if (survival) {
        const auto hit = constant_class(round.partition, *target);
        rec.target_class.push_back(hit ? round.partition.classes[*hit].members.size() : 0);
        rec.far_set.push_back(g.vertex_count() -
                              neighborhood(g, round.probes.vertices(), far_i).size());
      }
    }
    // |N(R^t,1)| for the last round, whose successor was never partitioned.
    if (!rec.captured && !tr.history.rounds.empty()) {
      const auto& last = tr.history.rounds.back();
      rec.candidates.push_back(
          closed_neighborhood(g, last.partition.classes[last.chosen].members).count());
    }
    records[t] = std::move(rec);
  });

  CaptureStats s;
  s.trials = config.trials;
  s.k = k;
  s.max_rounds = max_rounds;
  std::vector<double> shrink_sum;
  std::vector<std::size_t> shrink_count;
  for (const auto& rec : records) {
    s.resamples += rec.resamples;
    if (rec.captured) {
      ++s.captures;
      ++s.histogram[rec.rounds];
    }
    // Round t shrinks candidates[t-1] to candidates[t]; captured rounds have
    // no successor set.
    for (std::size_t r = 0; r + 1 < rec.candidates.size(); ++r) {
      if (shrink_sum.size() <= r) {
        shrink_sum.resize(r + 1, 0);
        shrink_count.resize(r + 1, 0);
      }
      shrink_sum[r] += static_cast<double>(rec.candidates[r + 1]) /
                       static_cast<double>(rec.candidates[r]);
      ++shrink_count[r];
    }
  }
  for (std::size_t r = 0; r < shrink_sum.size(); ++r) {
    s.mean_shrink.push_back(shrink_sum[r] / static_cast<double>(shrink_count[r]));
  }
  s.rate = static_cast<double>(s.captures) / static_cast<double>(s.trials);
  s.records = std::move(records);
  return s;
}

std::vector<Vertex> sample_vertices(Rng& rng, Vertex n, std::size_t count) {
  if (count > n) throw Error(ErrorCode::InvalidArgument, "more vertex samples than vertices");
  std::vector<Vertex> pool(n);
  std::iota(pool.begin(), pool.end(), Vertex{0});
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(pool[i], pool[i + rng.below(n - i)]);
  }
  pool.resize(count);
  return pool;
}

std::pair<Vertex, Vertex> sample_pair(Rng& rng, Vertex n) {
  const auto x = static_cast<Vertex>(rng.below(n));
  auto y = static_cast<Vertex>(rng.below(n - 1));
  if (y >= x) ++y;
  return {x, y};
}

std::string cell(std::uint64_t v) { return std::to_string(v); }
std::string cell(bool v) { return v ? "true" : "false"; }

ordered_json config_echo(const ExperimentConfig& c) {
  ordered_json j;
  j["n"] = c.n;
  if (c.p) j["p"] = *c.p;
  if (c.d) j["d"] = *c.d;
  if (c.k) j["k"] = *c.k;
  if (c.k_rule) {
    j["k_rule"] = *c.k_rule;
    j["k_multiplier"] = c.k_multiplier;
  }
  if (c.case_value) j["case_value"] = *c.case_value;
  j["trials"] = c.trials;
  if (c.max_rounds) {
    j["max_rounds"] = *c.max_rounds;
  } else {
    j["tf_multiplier"] = c.tf_multiplier;
  }
  j["seed"] = c.seed;
  if (c.i_override) j["i_override"] = *c.i_override;
  if (!c.robber.empty()) j["robber"] = c.robber;
  j["samples"] = c.samples;
  j["pairs"] = c.pairs;
  return j;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ExperimentReport finish(std::string_view kind, const ExperimentConfig* config,
                        ordered_json derived, ordered_json summary, std::vector<Table> tables,
                        const std::vector<std::uint64_t>& trial_seeds) {
  ordered_json m;
  m["experiment"] = kind;
  m["version"] = kVersion;
  if (config) m["config"] = config_echo(*config);
  m["derived"] = std::move(derived);
  if (!trial_seeds.empty()) m["trial_seeds"] = trial_seeds;
  m["summary"] = std::move(summary);
  ordered_json names = ordered_json::array();
  for (const auto& t : tables) names.push_back(t.name + ".csv");
  m["tables"] = names;
  if (config && config->timestamps) m["created_utc"] = utc_now();
  return {std::string(kind), m.dump(2) + "\n", std::move(tables)};
}

}  // namespace

void validate(const ExperimentConfig& c, bool needs_k) {
  auto bad = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  if (c.n < 1) bad("n must be >= 1");
  if (c.p.has_value() == c.d.has_value()) bad("give exactly one of p and d");
  if (c.p && !(*c.p >= 0 && *c.p <= 1)) bad("p must lie in [0, 1]");
  if (c.d && !(*c.d >= 0 && *c.d <= c.n)) bad("d must lie in [0, n]");
  if (c.trials < 1) bad("trials must be >= 1");
  if (needs_k) {
    if (c.k.has_value() == c.k_rule.has_value()) bad("give exactly one of k and k_rule");
    if (c.k && (*c.k < 1 || *c.k > c.n)) bad("k must lie in [1, n]");
    if (!(c.k_multiplier > 0)) bad("k_multiplier must be positive");
    if (c.max_rounds && *c.max_rounds < 1) bad("max_rounds must be >= 1");
    if (!c.max_rounds && !(c.tf_multiplier > 0)) bad("tf_multiplier must be positive");
  }
  if (c.i_override && *c.i_override < 1) bad("i_override must be >= 1");
}

double edge_probability(const ExperimentConfig& config) {
  if (config.p) return *config.p;
  return config.n > 0 ? std::min(1.0, *config.d / config.n) : 0.0;
}

unsigned thread_budget(const ExperimentConfig& config) {
  if (config.threads > 0) return config.threads;
  if (const char* env = std::getenv("LOCZ_THREADS")) {
    unsigned v = 0;
    const auto end = env + std::char_traits<char>::length(env);
    if (std::from_chars(env, end, v).ec == std::errc{} && v > 0) return v;
  }
  return 1;
}

ResolvedK resolve_k(const ExperimentConfig& config) {
  if (config.k) return {*config.k, std::nullopt};
  const std::string& rule = *config.k_rule;
  const double d = degree_of(config);
  double formula = 0;
  if (rule == "thm61") {
    formula = upper_bound_sensors_main(compute_regime(config.n, d, config.i_override));
  } else if (rule == "thm51") {
    formula = lower_bound_sensors(compute_regime(config.n, d, config.i_override)).value;
  } else if (rule.rfind("thm64-", 0) == 0) {
    const auto kind = case_kind_from_string(rule.substr(6));
    if (!kind || *kind == CaseKind::Subcritical) {
      throw Error(ErrorCode::InvalidArgument, "unknown k rule '" + rule + "'");
    }
    const auto r = compute_regime(config.n, d, config.i_override,
                                  ExponentRule::PowerAtMost3NLogN);
    formula = upper_bound_sensors_cases(r, {*kind, config.case_value});
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown k rule '" + rule + "'");
  }
  const double scaled = std::ceil(config.k_multiplier * formula);
  const double k = std::clamp(scaled, 1.0, static_cast<double>(config.n));
  return {static_cast<std::size_t>(k), formula};
}

std::size_t resolve_max_rounds(const ExperimentConfig& config) {
  if (config.max_rounds) return *config.max_rounds;
  if (config.n < 3) return 1;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(config.tf_multiplier * t_f(config.n))));
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string Table::to_csv() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      const std::string& c = row[i];
      if (c.find_first_of(",\"\n\r") == std::string::npos) {
        out += c;
        continue;
      }
      out += '"';
      for (char ch : c) {
        if (ch == '"') out += '"';
        out += ch;
      }
      out += '"';
    }
    out += '\n';
  };
  emit(header);
  for (const auto& r : rows) emit(r);
  return out;
}

Table Table::from_csv(std::string name, std::string_view text) {
  Table t;
  t.name = std::move(name);
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> row;
  std::string cur;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
      any = true;
    } else if (ch == ',') {
      row.push_back(std::move(cur));
      cur.clear();
      any = true;
    } else if (ch == '\n') {
      row.push_back(std::move(cur));
      cur.clear();
      records.push_back(std::move(row));
      row.clear();
      any = false;
    } else if (ch != '\r') {
      cur += ch;
      any = true;
    }
  }
  if (quoted) throw Error(ErrorCode::Parse, "csv: unterminated quote");
  if (any) {
    row.push_back(std::move(cur));
    records.push_back(std::move(row));
  }
  if (records.empty()) throw Error(ErrorCode::Parse, "csv: missing header");
  t.header = std::move(records.front());
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != t.header.size()) {
      throw Error(ErrorCode::Parse, "csv: row " + std::to_string(i) + " has wrong width");
    }
    t.rows.push_back(std::move(records[i]));
  }
  return t;
}

void write_report(const ExperimentReport& report, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir + ": " + ec.message());
  auto put = [&](const std::string& file, const std::string& body) {
    const auto path = (std::filesystem::path(dir) / file).string();
    std::ofstream out(path, std::ios::binary);
    out << body;
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  };
  put("manifest.json", report.manifest_json);
  for (const auto& t : report.tables) put(t.name + ".csv", t.to_csv());
}

CaptureStats mc_capture(const ExperimentConfig& config) { return run_games(config, false); }

CaptureStats mc_survival(const ExperimentConfig& config) { return run_games(config, true); }

ExpansionResult expansion_check(const ExperimentConfig& config) {
  validate(config, false);
  const double p = edge_probability(config);
  std::optional<RegimeParams> regime;
  ExpansionResult res;
  res.i = sphere_exponent(config, regime);
  res.d = p * config.n;
  if (regime) res.band = 1 / std::sqrt(regime->omega) + std::pow(regime->d, regime->i) / regime->n;
  if (config.samples == 0 && config.pairs == 0) return res;

  const Graph g = generate_gnp({config.n, p, derive_seed(config.seed, 0)});
  Rng rng(derive_seed(config.seed, 1));
  const auto vertices = sample_vertices(rng, config.n, config.samples);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  if (config.pairs > 0 && config.n < 2) throw Error(ErrorCode::InvalidArgument, "pairs need n >= 2");
  for (std::size_t q = 0; q < config.pairs; ++q) pairs.push_back(sample_pair(rng, config.n));

  const auto levels = static_cast<std::size_t>(res.i);
  std::vector<std::vector<std::size_t>> vertex_counts(vertices.size());
  parallel_for(vertices.size(), thread_budget(config), [&](std::size_t s) {
    const auto dist = bfs_distances(g, vertices[s]);
    std::vector<std::size_t> counts(levels + 1, 0);
    for (Distance x : dist) {
      if (x >= 1 && x <= levels) ++counts[x];
    }
    vertex_counts[s] = std::move(counts);
  });
  struct PairCounts {
    std::vector<std::size_t> set, diff;
  };
  std::vector<PairCounts> pair_counts(pairs.size());
  parallel_for(pairs.size(), thread_budget(config), [&](std::size_t q) {
    const auto dx = bfs_distances(g, pairs[q].first);
    const auto dy = bfs_distances(g, pairs[q].second);
    PairCounts pc{std::vector<std::size_t>(levels + 1, 0), std::vector<std::size_t>(levels + 1, 0)};
    for (Vertex v = 0; v < config.n; ++v) {
      const Distance m = std::min(dx[v], dy[v]);
      if (m >= 1 && m <= levels) ++pc.set[m];
      if (dx[v] >= 1 && dx[v] <= levels && dx[v] != dy[v]) ++pc.diff[dx[v]];
    }
    pair_counts[q] = std::move(pc);
  });

  for (std::size_t s = 0; s < vertices.size(); ++s) {
    for (int j = 1; j <= res.i; ++j) {
      res.vertices.push_back({vertices[s], std::nullopt, j, vertex_counts[s][j], std::pow(res.d, j)});
    }
  }
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    for (int j = 1; j <= res.i; ++j) {
      const double dj = std::pow(res.d, j);
      res.pair_sets.push_back({pairs[q].first, pairs[q].second, j, pair_counts[q].set[j], 2 * dj});
      res.pair_diffs.push_back({pairs[q].first, pairs[q].second, j, pair_counts[q].diff[j], dj});
    }
  }
  return res;
}

std::size_t measure_symmdiff(const Graph& g, Vertex x, Vertex y, Distance j) {
  if (x == y) throw Error(ErrorCode::InvalidPair, "need x != y");
  const auto dx = bfs_distances(g, x);
  const auto dy = bfs_distances(g, y);
  std::size_t count = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (dx[v] == j && dy[v] != j) ++count;
  }
  return count;
}

SymmdiffResult symmdiff_check(const ExperimentConfig& config) {
  validate(config, false);
  const double p = edge_probability(config);
  const double d = p * config.n;
  const auto regime = compute_regime(config.n, d, config.i_override);
  SymmdiffResult res;
  res.i = regime.i;
  res.c = regime.c;
  const auto pred = predicted_symmdiff(regime);
  res.predicted = pred.value;
  res.log4_branch = pred.log4_branch;
  const double ln = std::log(regime.n);
  res.dense_condition = d > ln * ln * ln;
  if (config.pairs == 0) return res;

  const Graph g = generate_gnp({config.n, p, derive_seed(config.seed, 0)});
  Rng rng(derive_seed(config.seed, 1));
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (std::size_t q = 0; q < config.pairs; ++q) pairs.push_back(sample_pair(rng, config.n));
  std::vector<std::size_t> measured(pairs.size());
  parallel_for(pairs.size(), thread_budget(config), [&](std::size_t q) {
    measured[q] = measure_symmdiff(g, pairs[q].first, pairs[q].second,
                                   static_cast<Distance>(res.i));
  });
  std::vector<double> ratios;
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    res.pairs.push_back({pairs[q].first, pairs[q].second, res.i, measured[q], res.predicted});
    ratios.push_back(static_cast<double>(measured[q]) / res.predicted);
  }
  if (!res.log4_branch) {
    std::sort(ratios.begin(), ratios.end());
    const std::size_t m = ratios.size() / 2;
    res.median_ratio = ratios.size() % 2 == 1 ? ratios[m] : (ratios[m - 1] + ratios[m]) / 2;
  }
  return res;
}

DiameterResult diameter_check(const ExperimentConfig& config) {
  validate(config, false);
  const double p = edge_probability(config);
  DiameterResult res;
  res.diameters.resize(config.trials);
  parallel_for(config.trials, thread_budget(config), [&](std::size_t t) {
    const auto seed = derive_seed(derive_seed(config.seed, t), 1);
    res.diameters[t] = diameter(generate_gnp({config.n, p, seed}));
  });
  for (Distance x : res.diameters) ++res.histogram[x];
  const double d = p * config.n;
  const double two_log_n = 2 * std::log(static_cast<double>(config.n));
  if (d > 1) {
    Distance j = 1;
    while (std::pow(d, j) / config.n - two_log_n <= 0) ++j;
    res.predicted = j;
  }
  return res;
}

SolveSmallResult solve_small(const Graph& g, const SolverBudget& budget, bool run_oracle) {
  if (g.vertex_count() > budget.max_vertices) {
    throw Error(ErrorCode::BudgetExceeded,
                "n=" + std::to_string(g.vertex_count()) + " exceeds the solver budget (" +
                    std::to_string(budget.max_vertices) + "); use the Monte Carlo commands");
  }
  SolveSmallResult res;
  res.n = g.vertex_count();
  res.zeta = localization_number(g, budget);
  const auto win = cop_wins(g, res.zeta, budget);
  res.depth_bound = win.depth_bound;
  res.states_explored = win.states_explored;
  res.beta = metric_dimension(g, budget);
  res.zeta_le_beta = res.zeta <= res.beta;
  if (run_oracle && res.n <= 8) {
    res.oracle_checked = true;
    res.oracle_agrees = true;
    const std::size_t depth = std::size_t{1} << res.n;
    for (std::size_t k = 1; k <= res.zeta; ++k) {
      const Verdict expect = k == res.zeta ? Verdict::CopWins : Verdict::RobberWins;
      if (naive_cop_wins_oracle(g, k, depth) != expect) res.oracle_agrees = false;
    }
  }
  if (!res.zeta_le_beta) {
    throw Error(ErrorCode::Internal, "localization number exceeds metric dimension");
  }
  return res;
}

ExperimentReport report(const ExperimentConfig& config, const CaptureStats& s,
                        std::string_view kind) {
  const bool survival = kind == "mc-survival";
  const ResolvedK rk = resolve_k(config);
  ordered_json derived;
  derived["p"] = edge_probability(config);
  derived["k"] = s.k;
  if (rk.formula) derived["k_formula"] = *rk.formula;
  derived["max_rounds"] = s.max_rounds;

  ordered_json summary;
  summary["trials"] = s.trials;
  summary["captures"] = s.captures;
  summary["capture_rate"] = s.rate;
  if (survival) summary["survival_rate"] = 1 - s.rate;
  summary["resamples"] = s.resamples;
  ordered_json shrink = ordered_json::array();
  for (double x : s.mean_shrink) shrink.push_back(x);
  summary["mean_shrink"] = shrink;
  if (survival) {
    std::optional<std::size_t> min_target;
    for (const auto& rec : s.records) {
      if (rec.captured) continue;
      for (auto x : rec.target_class) min_target = std::min(min_target.value_or(x), x);
    }
    summary["min_target_class_in_survivals"] =
        min_target ? ordered_json(*min_target) : ordered_json(nullptr);
  }

  Table trials{"trials", {"trial", "seed", "resamples", "captured", "rounds"}, {}};
  std::vector<std::uint64_t> seeds;
  for (std::size_t t = 0; t < s.records.size(); ++t) {
    const auto& rec = s.records[t];
    seeds.push_back(rec.seed);
    trials.rows.push_back({cell(std::uint64_t{t}), cell(rec.seed), cell(std::uint64_t{rec.resamples}),
                           cell(rec.captured), cell(std::uint64_t{rec.rounds})});
  }
  Table hist{"histogram", {"round", "captures"}, {}};
  for (auto [round, count] : s.histogram) {
    hist.rows.push_back({cell(std::uint64_t{round}), cell(std::uint64_t{count})});
  }
  Table shrink_table{"shrink", {"round", "mean_shrink"}, {}};
  for (std::size_t r = 0; r < s.mean_shrink.size(); ++r) {
    shrink_table.rows.push_back({cell(std::uint64_t{r + 1}), format_number(s.mean_shrink[r])});
  }
  std::vector<Table> tables{trials, hist, shrink_table};
  if (survival) {
    Table rounds{"rounds", {"trial", "round", "candidates", "target_class", "far_set"}, {}};
    for (std::size_t t = 0; t < s.records.size(); ++t) {
      const auto& rec = s.records[t];
      for (std::size_t r = 0; r < rec.target_class.size(); ++r) {
        rounds.rows.push_back({cell(std::uint64_t{t}), cell(std::uint64_t{r + 1}),
                               cell(std::uint64_t{rec.candidates[r]}),
                               cell(std::uint64_t{rec.target_class[r]}),
                               cell(std::uint64_t{rec.far_set[r]})});
      }
    }
    tables.push_back(std::move(rounds));
  }
  return finish(kind, &config, derived, summary, std::move(tables), seeds);
}

ExperimentReport report(const ExperimentConfig& config, const ExpansionResult& r) {
  ordered_json derived;
  derived["p"] = edge_probability(config);
  derived["d"] = r.d;
  derived["i"] = r.i;
  derived["band"] = r.band ? ordered_json(*r.band) : ordered_json(nullptr);
  auto rel = [](const SphereSample& s) {
    return (static_cast<double>(s.measured) - s.predicted) / s.predicted;
  };
  auto within = [&](const std::vector<SphereSample>& v, double tol) {
    if (v.empty()) return ordered_json(nullptr);
    std::size_t ok = 0;
    for (const auto& s : v) ok += std::abs(rel(s)) <= tol;
    return ordered_json(static_cast<double>(ok) / static_cast<double>(v.size()));
  };
  ordered_json summary;
  summary["vertex_samples"] = r.vertices.size();
  summary["pair_samples"] = r.pair_diffs.size();
  if (r.band) {
    summary["vertex_within_band"] = within(r.vertices, *r.band);
    summary["pair_set_within_band"] = within(r.pair_sets, *r.band);
    summary["pair_diff_within_band"] = within(r.pair_diffs, *r.band);
  }

  Table vt{"vertices", {"x", "j", "measured", "predicted", "rel_error"}, {}};
  for (const auto& s : r.vertices) {
    vt.rows.push_back({cell(std::uint64_t{s.x}), cell(std::uint64_t(s.j)),
                       cell(std::uint64_t{s.measured}), format_number(s.predicted),
                       format_number(rel(s))});
  }
  Table pt{"pairs",
           {"x", "y", "j", "set_measured", "set_predicted", "diff_measured", "diff_predicted"},
           {}};
  for (std::size_t q = 0; q < r.pair_sets.size(); ++q) {
    const auto& a = r.pair_sets[q];
    const auto& b = r.pair_diffs[q];
    pt.rows.push_back({cell(std::uint64_t{a.x}), cell(std::uint64_t{*a.y}),
                       cell(std::uint64_t(a.j)), cell(std::uint64_t{a.measured}),
                       format_number(a.predicted), cell(std::uint64_t{b.measured}),
                       format_number(b.predicted)});
  }
  return finish("expansion-check", &config, derived, summary, {vt, pt}, {});
}

ExperimentReport report(const ExperimentConfig& config, const SymmdiffResult& r) {
  ordered_json derived;
  derived["p"] = edge_probability(config);
  derived["i"] = r.i;
  derived["c"] = r.c;
  derived["predicted"] = r.predicted;
  derived["log4_branch"] = r.log4_branch;
  derived["dense_condition"] = r.dense_condition;
  ordered_json summary;
  summary["pairs"] = r.pairs.size();
  summary["median_ratio"] = r.median_ratio ? ordered_json(*r.median_ratio) : ordered_json(nullptr);
  if (!r.dense_condition) {
    summary["note"] = "d <= log^3 n: the error term is not small at this n";
  }
  Table pt{"pairs", {"x", "y", "j", "measured", "predicted", "ratio", "branch"}, {}};
  for (const auto& s : r.pairs) {
    const bool b = r.log4_branch;
    pt.rows.push_back({cell(std::uint64_t{s.x}), cell(std::uint64_t{*s.y}),
                       cell(std::uint64_t(s.j)), cell(std::uint64_t{s.measured}),
                       format_number(s.predicted),
                       b ? std::string() : format_number(static_cast<double>(s.measured) / s.predicted),
                       b ? "log4" : "main"});
  }
  return finish("symmdiff-check", &config, derived, summary, {pt}, {});
}

ExperimentReport report(const ExperimentConfig& config, const DiameterResult& r) {
  auto label = [](Distance x) { return x == kUnreachable ? std::string("inf") : std::to_string(x); };
  ordered_json derived;
  derived["p"] = edge_probability(config);
  derived["predicted_diameter"] = r.predicted;
  ordered_json summary;
  ordered_json hist = ordered_json::object();
  for (auto [x, count] : r.histogram) hist[label(x)] = count;
  summary["histogram"] = hist;
  const auto hit = r.histogram.find(r.predicted);
  summary["fraction_predicted"] =
      static_cast<double>(hit == r.histogram.end() ? 0 : hit->second) /
      static_cast<double>(r.diameters.size());
  Table st{"samples", {"trial", "seed", "diameter"}, {}};
  std::vector<std::uint64_t> seeds;
  for (std::size_t t = 0; t < r.diameters.size(); ++t) {
    seeds.push_back(derive_seed(config.seed, t));
    st.rows.push_back({cell(std::uint64_t{t}), cell(seeds.back()), label(r.diameters[t])});
  }
  Table ht{"histogram", {"diameter", "count"}, {}};
  for (auto [x, count] : r.histogram) ht.rows.push_back({label(x), cell(std::uint64_t{count})});
  return finish("diameter-check", &config, derived, summary, {st, ht}, seeds);
}

ExperimentReport report(const SolveSmallResult& r) {
  ordered_json summary;
  summary["n"] = r.n;
  summary["zeta"] = r.zeta;
  summary["beta"] = r.beta;
  summary["zeta_le_beta"] = r.zeta_le_beta;
  summary["depth_bound"] = r.depth_bound;
  summary["states_explored"] = r.states_explored;
  summary["oracle_checked"] = r.oracle_checked;
  if (r.oracle_checked) summary["oracle_agrees"] = r.oracle_agrees;
  return finish("solve-small", nullptr, ordered_json::object(), summary, {}, {});
}

std::string bounds_json(const BoundsQuery& q) {
  if (q.p.has_value() == q.d.has_value()) {
    throw Error(ErrorCode::InvalidArgument, "give exactly one of p and d");
  }
  const double d = q.d ? *q.d : *q.p * q.n;
  const auto r = compute_regime(q.n, d, q.i_override);
  auto regime_json = [](const RegimeParams& x) {
    ordered_json j;
    j["n"] = x.n;
    j["d"] = x.d;
    j["i"] = x.i;
    j["c"] = x.c;
    j["x"] = x.x;
    j["omega"] = x.omega;
    j["omega_prime"] = x.omega_prime;
    j["case"] = to_string(x.case_tag.kind);
    j["case_value"] = x.case_tag.value ? ordered_json(*x.case_tag.value) : ordered_json(nullptr);
    return j;
  };
  ordered_json out;
  out["regime"] = regime_json(r);
  const auto lower = lower_bound_sensors(r);
  out["lower_bound"] = {{"value", lower.value}, {"vacuous", lower.vacuous}};
  out["upper_bound_main"] = upper_bound_sensors_main(r);
  out["t_f"] = t_f(q.n);
  out["r"] = r_value(q.n, d);
  const auto sym = predicted_symmdiff(r);
  out["symmdiff"] = {{"value", sym.value},
                     {"log4_branch", sym.log4_branch},
                     {"log4_ceiling", sym.log4_ceiling}};
  ordered_json spheres = ordered_json::array();
  for (int j = 1; j <= r.i; ++j) {
    const auto one = predicted_sphere_size(r, j, 1);
    const auto two = predicted_sphere_size(r, j, 2);
    spheres.push_back({{"j", j}, {"single", one.value}, {"pair", two.value}, {"band", one.band}});
  }
  out["spheres"] = spheres;

  const auto cr = compute_regime(q.n, d, q.i_override, ExponentRule::PowerAtMost3NLogN);
  ordered_json cases;
  cases["regime"] = regime_json(cr);
  const std::pair<const char*, CaseTag> tags[] = {
      {"i", {CaseKind::FiniteA, q.a}},
      {"ii", {CaseKind::LargeCSmallB, std::nullopt}},
      {"iii", {CaseKind::FiniteB, q.b}},
      {"iv", {CaseKind::LargeB, std::nullopt}},
  };
  for (const auto& [name, tag] : tags) {
    const bool needs = tag.kind == CaseKind::FiniteA || tag.kind == CaseKind::FiniteB;
    if (needs && !tag.value) {
      cases[name] = nullptr;
      continue;
    }
    cases[name] = {{"k", upper_bound_sensors_cases(cr, tag)},
                   {"factor", case_factor(cr, tag)},
                   {"omega_prime", omega_prime_for(cr, tag.kind)},
                   {"s", predicted_s_case(cr, tag)}};
  }
  out["cases"] = cases;
  out["s_suggested"] = predicted_s_case(cr, cr.case_tag);
  return out.dump(2) + "\n";
}

ExperimentReport run_experiment(std::string_view kind, const ExperimentConfig& config) {
  if (kind == "mc-capture") return report(config, mc_capture(config), kind);
  if (kind == "mc-survival") return report(config, mc_survival(config), kind);
  if (kind == "expansion-check") return report(config, expansion_check(config));
  if (kind == "symmdiff-check") return report(config, symmdiff_check(config));
  if (kind == "diameter-check") return report(config, diameter_check(config));
  throw Error(ErrorCode::InvalidArgument, "unknown experiment '" + std::string(kind) + "'");
}

}  // namespace locz
