#include "locz/locz.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "locz/error.hpp"
#include "locz/experiments.hpp"
#include "locz/game.hpp"
#include "locz/gnp.hpp"
#include "locz/graph.hpp"
#include "locz/solver.hpp"
#include "locz/strategies.hpp"

struct locz_graph {
  locz::Graph graph;
};

struct locz_report {
  locz::ExperimentReport report;
  std::vector<std::string> csv;
};

namespace {

using nlohmann::json;

thread_local std::string last_error;

locz_status status_of(locz::ErrorCode code) {
  using locz::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return LOCZ_ERR_INVALID_ARGUMENT;
    case ErrorCode::DisconnectedGraph: return LOCZ_ERR_DISCONNECTED_GRAPH;
    case ErrorCode::InvalidK: return LOCZ_ERR_INVALID_K;
    case ErrorCode::BudgetExceeded: return LOCZ_ERR_BUDGET_EXCEEDED;
    case ErrorCode::IllegalRobberMove: return LOCZ_ERR_ILLEGAL_ROBBER_MOVE;
    case ErrorCode::InvalidPair: return LOCZ_ERR_INVALID_PAIR;
    case ErrorCode::CaseMismatch: return LOCZ_ERR_CASE_MISMATCH;
    case ErrorCode::EpsOutOfRange: return LOCZ_ERR_EPS_OUT_OF_RANGE;
    case ErrorCode::DegenerateRegime: return LOCZ_ERR_DEGENERATE_REGIME;
    case ErrorCode::TooManyDisconnectedResamples: return LOCZ_ERR_TOO_MANY_RESAMPLES;
    case ErrorCode::Parse: return LOCZ_ERR_PARSE;
    case ErrorCode::Io: return LOCZ_ERR_IO;
    case ErrorCode::Internal: return LOCZ_ERR_INTERNAL;
  }
  return LOCZ_ERR_INTERNAL;
}

template <typename F>
locz_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return LOCZ_OK;
  } catch (const locz::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const json::exception& e) {
    last_error = std::string("config: ") + e.what();
    return LOCZ_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return LOCZ_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return LOCZ_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw locz::Error(locz::ErrorCode::InvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse_config(const char* text) {
  if (text == nullptr || *text == '\0') return json::object();
  json j = json::parse(text);
  require(j.is_object(), "config must be a JSON object");
  return j;
}

void reject_unknown(const json& j, std::initializer_list<const char*> known) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) throw locz::Error(locz::ErrorCode::InvalidArgument, "unknown config key '" + item.key() + "'");
  }
}

template <typename T>
std::optional<T> opt(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<T>();
}

locz::ExperimentConfig experiment_config(const json& j) {
  reject_unknown(j, {"n", "p", "d", "k", "k_rule", "k_multiplier", "case_value", "trials",
                     "max_rounds", "tf_multiplier", "seed", "threads", "i_override", "robber",
                     "samples", "pairs", "timestamps"});
  locz::ExperimentConfig c;
  c.n = j.at("n").get<locz::Vertex>();
  c.p = opt<double>(j, "p");
  c.d = opt<double>(j, "d");
  c.k = opt<std::size_t>(j, "k");
  c.k_rule = opt<std::string>(j, "k_rule");
  c.k_multiplier = opt<double>(j, "k_multiplier").value_or(1.0);
  c.case_value = opt<double>(j, "case_value");
  c.trials = opt<std::size_t>(j, "trials").value_or(1);
  c.max_rounds = opt<std::size_t>(j, "max_rounds");
  c.tf_multiplier = opt<double>(j, "tf_multiplier").value_or(2.0);
  c.seed = opt<std::uint64_t>(j, "seed").value_or(0);
  c.threads = opt<unsigned>(j, "threads").value_or(0);
  c.i_override = opt<int>(j, "i_override");
  c.robber = opt<std::string>(j, "robber").value_or("");
  c.samples = opt<std::size_t>(j, "samples").value_or(0);
  c.pairs = opt<std::size_t>(j, "pairs").value_or(0);
  c.timestamps = opt<bool>(j, "timestamps").value_or(false);
  return c;
}

locz::SolverBudget budget_from(const json& j) {
  locz::SolverBudget b;
  if (auto v = opt<std::uint32_t>(j, "max_vertices")) b.max_vertices = *v;
  if (auto v = opt<std::uint32_t>(j, "max_sensors")) b.max_sensors = *v;
  if (auto v = opt<std::uint64_t>(j, "max_memo_entries")) b.max_memo_entries = *v;
  if (auto v = opt<std::uint64_t>(j, "max_probe_sets")) b.max_probe_sets = *v;
  require(b.max_vertices > 0 && b.max_sensors > 0 && b.max_memo_entries > 0 &&
              b.max_probe_sets > 0,
          "budget limits must be positive");
  return b;
}

}  // namespace

extern "C" {

const char* locz_version(void) { return locz::kVersion; }

const char* locz_last_error(void) { return last_error.c_str(); }

const char* locz_status_name(locz_status status) {
  switch (status) {
    case LOCZ_OK: return "ok";
    case LOCZ_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case LOCZ_ERR_DISCONNECTED_GRAPH: return "DisconnectedGraph";
    case LOCZ_ERR_INVALID_K: return "InvalidK";
    case LOCZ_ERR_BUDGET_EXCEEDED: return "BudgetExceeded";
    case LOCZ_ERR_ILLEGAL_ROBBER_MOVE: return "IllegalRobberMove";
    case LOCZ_ERR_INVALID_PAIR: return "InvalidPair";
    case LOCZ_ERR_CASE_MISMATCH: return "CaseMismatch";
    case LOCZ_ERR_EPS_OUT_OF_RANGE: return "EpsOutOfRange";
    case LOCZ_ERR_DEGENERATE_REGIME: return "DegenerateRegime";
    case LOCZ_ERR_TOO_MANY_RESAMPLES: return "TooManyDisconnectedResamples";
    case LOCZ_ERR_PARSE: return "Parse";
    case LOCZ_ERR_IO: return "Io";
    case LOCZ_ERR_INTERNAL: return "Internal";
  }
  return "unknown";
}

void locz_string_free(char* s) { std::free(s); }

locz_status locz_graph_generate(uint32_t n, double p, uint64_t seed, locz_graph** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    require(n >= 1, "n must be >= 1");
    require(p >= 0 && p <= 1, "p must lie in [0, 1]");
    *out = new locz_graph{locz::generate_gnp({n, p, seed})};
  });
}

locz_status locz_graph_family(const char* family, uint32_t size, locz_graph** out) {
  return guarded([&] {
    require(out != nullptr && family != nullptr, "null argument");
    const std::string f = family;
    if (f == "path") {
      *out = new locz_graph{locz::path_graph(size)};
    } else if (f == "cycle") {
      *out = new locz_graph{locz::cycle_graph(size)};
    } else if (f == "complete") {
      *out = new locz_graph{locz::complete_graph(size)};
    } else if (f == "star") {
      *out = new locz_graph{locz::star_graph(size)};
    } else {
      throw locz::Error(locz::ErrorCode::InvalidArgument, "unknown family '" + f + "'");
    }
  });
}

locz_status locz_graph_parse(const char* edge_list, locz_graph** out) {
  return guarded([&] {
    require(out != nullptr && edge_list != nullptr, "null argument");
    std::istringstream in{std::string(edge_list)};
    *out = new locz_graph{locz::read_edge_list(in)};
  });
}

locz_status locz_graph_load(const char* path, locz_graph** out) {
  return guarded([&] {
    require(out != nullptr && path != nullptr, "null argument");
    *out = new locz_graph{locz::load_edge_list(path)};
  });
}

locz_status locz_graph_save(const locz_graph* g, const char* path) {
  return guarded([&] {
    require(g != nullptr && path != nullptr, "null argument");
    locz::save_edge_list(g->graph, path);
  });
}

locz_status locz_graph_to_text(const locz_graph* g, char** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    std::ostringstream s;
    locz::write_edge_list(g->graph, s);
    *out = dup_string(s.str());
  });
}

void locz_graph_destroy(locz_graph* g) { delete g; }

uint32_t locz_graph_vertex_count(const locz_graph* g) { return g ? g->graph.vertex_count() : 0; }

uint64_t locz_graph_edge_count(const locz_graph* g) { return g ? g->graph.edge_count() : 0; }

uint64_t locz_graph_fingerprint(const locz_graph* g) { return g ? g->graph.fingerprint() : 0; }

int locz_graph_is_connected(const locz_graph* g) { return g && locz::is_connected(g->graph) ? 1 : 0; }

locz_status locz_graph_bfs(const locz_graph* g, uint32_t source, uint32_t* distances) {
  return guarded([&] {
    require(g != nullptr && distances != nullptr, "null argument");
    const auto row = locz::bfs_distances(g->graph, source);
    std::copy(row.begin(), row.end(), distances);
  });
}

locz_status locz_graph_diameter(const locz_graph* g, uint32_t* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = locz::diameter(g->graph);
  });
}

locz_status locz_play(const locz_graph* g, const char* config_json, char** transcript) {
  return guarded([&] {
    require(g != nullptr && transcript != nullptr, "null argument");
    const json j = parse_config(config_json);
    reject_unknown(j, {"k", "cop", "probes", "cop_seed", "robber", "target", "robber_seed", "mode",
                       "walk", "max_rounds", "seed"});
    const locz::Graph& graph = g->graph;
    const auto k = j.at("k").get<std::size_t>();
    const std::string cop_name = opt<std::string>(j, "cop").value_or("random-cop");
    std::unique_ptr<locz::CopStrategy> cop;
    if (cop_name == "random-cop") {
      cop = locz::random_cop({k, opt<std::uint64_t>(j, "cop_seed")});
    } else if (cop_name == "fixed-cop") {
      std::vector<locz::ProbeSet> seq;
      for (const auto& s : j.at("probes")) {
        seq.emplace_back(s.get<std::vector<locz::Vertex>>(), graph.vertex_count());
      }
      cop = locz::fixed_cop(std::move(seq));
    } else {
      throw locz::Error(locz::ErrorCode::InvalidArgument, "unknown cop '" + cop_name + "'");
    }
    locz::PlayOptions options;
    options.max_rounds = opt<std::size_t>(j, "max_rounds");
    options.seed = opt<std::uint64_t>(j, "seed").value_or(0);
    const std::string mode = opt<std::string>(j, "mode").value_or("class");
    locz::Transcript t;
    if (mode == "walk") {
      std::unique_ptr<locz::WalkChooser> walker;
      if (auto walk = opt<std::vector<locz::Vertex>>(j, "walk")) {
        walker = std::make_unique<locz::SequenceWalk>(std::move(*walk));
      } else {
        walker = std::make_unique<locz::RandomWalk>(
            opt<std::uint64_t>(j, "robber_seed").value_or(locz::derive_seed(options.seed, 1)));
      }
      t = locz::simulate_walk(graph, k, *cop, *walker, options);
    } else if (mode == "class") {
      const std::string robber_name = opt<std::string>(j, "robber").value_or("greedy-robber");
      std::unique_ptr<locz::RobberStrategy> robber;
      if (robber_name == "greedy-robber") {
        robber = locz::greedy_robber();
      } else if (robber_name == "diametric-robber") {
        robber = locz::diametric_robber({opt<locz::Distance>(j, "target")});
      } else if (robber_name == "random-robber") {
        robber = locz::random_robber(
            opt<std::uint64_t>(j, "robber_seed").value_or(locz::derive_seed(options.seed, 1)));
      } else {
        throw locz::Error(locz::ErrorCode::InvalidArgument, "unknown robber '" + robber_name + "'");
      }
      t = locz::play(graph, k, *cop, *robber, options);
    } else {
      throw locz::Error(locz::ErrorCode::InvalidArgument, "mode must be class or walk");
    }
    *transcript = dup_string(locz::transcript_to_json(t));
  });
}

locz_status locz_replay(const locz_graph* g, const char* transcript_json) {
  return guarded([&] {
    require(g != nullptr && transcript_json != nullptr, "null argument");
    locz::transcript_from_json(transcript_json, g->graph);
  });
}

locz_status locz_solve(const locz_graph* g, const char* config_json, char** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    const json j = parse_config(config_json);
    reject_unknown(j, {"k", "oracle", "max_vertices", "max_sensors", "max_memo_entries",
                       "max_probe_sets"});
    const auto budget = budget_from(j);
    if (auto k = opt<std::size_t>(j, "k")) {
      if (g->graph.vertex_count() > budget.max_vertices) {
        throw locz::Error(locz::ErrorCode::BudgetExceeded,
                          "n exceeds the solver budget; use the Monte Carlo commands");
      }
      const auto r = locz::cop_wins(g->graph, *k, budget);
      if (r.verdict == locz::Verdict::BudgetExceeded) {
        throw locz::Error(locz::ErrorCode::BudgetExceeded, r.budget_note);
      }
      *out = dup_string(locz::solve_result_to_json(r) + "\n");
      return;
    }
    const auto r = locz::solve_small(g->graph, budget, opt<bool>(j, "oracle").value_or(false));
    *out = dup_string(locz::report(r).manifest_json);
  });
}

locz_status locz_bounds(const char* config_json, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const json j = parse_config(config_json);
    reject_unknown(j, {"n", "p", "d", "i_override", "A", "B"});
    locz::BoundsQuery q;
    q.n = j.at("n").get<double>();
    q.p = opt<double>(j, "p");
    q.d = opt<double>(j, "d");
    q.i_override = opt<int>(j, "i_override");
    q.a = opt<double>(j, "A");
    q.b = opt<double>(j, "B");
    *out = dup_string(locz::bounds_json(q));
  });
}

locz_status locz_experiment(const char* kind, const char* config_json, locz_report** out) {
  return guarded([&] {
    require(kind != nullptr && out != nullptr, "null argument");
    const auto config = experiment_config(parse_config(config_json));
    auto r = std::make_unique<locz_report>();
    r->report = locz::run_experiment(kind, config);
    for (const auto& t : r->report.tables) r->csv.push_back(t.to_csv());
    *out = r.release();
  });
}

const char* locz_report_manifest(const locz_report* r) {
  return r ? r->report.manifest_json.c_str() : nullptr;
}

size_t locz_report_table_count(const locz_report* r) { return r ? r->report.tables.size() : 0; }

const char* locz_report_table_name(const locz_report* r, size_t index) {
  if (!r || index >= r->report.tables.size()) return nullptr;
  return r->report.tables[index].name.c_str();
}

const char* locz_report_table_csv(const locz_report* r, size_t index) {
  if (!r || index >= r->csv.size()) return nullptr;
  return r->csv[index].c_str();
}

locz_status locz_report_write(const locz_report* r, const char* dir) {
  return guarded([&] {
    require(r != nullptr && dir != nullptr, "null argument");
    locz::write_report(r->report, dir);
  });
}

void locz_report_destroy(locz_report* r) { delete r; }

}  // extern "C"
