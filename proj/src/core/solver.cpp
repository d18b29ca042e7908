#include "locz/solver.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

#include "json.hpp"
#include "locz/error.hpp"
#include "locz/rng.hpp"

namespace locz {

namespace {

constexpr std::size_t kMaskBits = 64;

// Advances `idx` (strictly increasing, values < n) to the next k-subset in
// lexicographic order; false after the last one.
bool next_combination(std::vector<Vertex>& idx, Vertex n) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (idx[i] < n - static_cast<Vertex>(k - i)) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<Vertex> first_combination(std::size_t k) {
  std::vector<Vertex> idx(k);
  std::iota(idx.begin(), idx.end(), Vertex{0});
  return idx;
}

// C(n, k) saturating at `cap` + 1.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

StateKey full_mask(Vertex n) {
  return n == kMaskBits ? ~StateKey{0} : (StateKey{1} << n) - 1;
}

struct MaskGraph {
  Vertex n = 0;
  std::vector<StateKey> closed;  // N(v, 1) as a mask
  std::vector<std::vector<Distance>> dist;

  explicit MaskGraph(const Graph& g) : n(g.vertex_count()), closed(n), dist(n) {
    for (Vertex v = 0; v < n; ++v) {
      closed[v] = StateKey{1} << v;
      for (Vertex w : g.neighbors(v)) closed[v] |= StateKey{1} << w;
      dist[v] = bfs_distances(g, v);
    }
  }

  StateKey closure(StateKey set) const {
    StateKey out = 0;
    while (set != 0) {
      out |= closed[static_cast<std::size_t>(std::countr_zero(set))];
      set &= set - 1;
    }
    return out;
  }

  // Class label of each vertex under the V-partition by `probes`; labels are
  // dense and follow signature order. Partitioning any C is the restriction.
  std::vector<std::uint8_t> labels(std::span<const Vertex> probes) const {
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    auto sig_less = [&](Vertex a, Vertex b) {
      for (Vertex s : probes) {
        if (dist[s][a] != dist[s][b]) return dist[s][a] < dist[s][b];
      }
      return false;
    };
    std::stable_sort(order.begin(), order.end(), sig_less);
    std::vector<std::uint8_t> out(n);
    std::uint8_t label = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i > 0 && sig_less(order[i - 1], order[i])) ++label;
      out[order[i]] = label;
    }
    return out;
  }
};

// Splits `state` by labels into class masks (nonzero entries only).
void split(StateKey state, const std::vector<std::uint8_t>& label,
           std::vector<StateKey>& scratch, std::vector<StateKey>& classes) {
  std::fill(scratch.begin(), scratch.end(), 0);
  classes.clear();
  for (StateKey rest = state; rest != 0; rest &= rest - 1) {
    const auto v = static_cast<std::size_t>(std::countr_zero(rest));
    scratch[label[v]] |= StateKey{1} << v;
  }
  for (StateKey c : scratch) {
    if (c != 0) classes.push_back(c);
  }
}

SolveResult budget_hit(std::size_t n, std::size_t k, std::string note) {
  SolveResult r;
  r.verdict = Verdict::BudgetExceeded;
  r.n = n;
  r.k = k;
  r.budget_note = std::move(note);
  return r;
}

class ExtractedCop final : public CopStrategy {
 public:
  explicit ExtractedCop(std::map<StateKey, ProbeSet> table) : table_(std::move(table)) {}
  std::string name() const override { return "extracted-cop"; }
  ProbeSet choose(const CopView& view, Rng&) override {
    const auto it = table_.find(state_key(view.candidates));
    if (it == table_.end()) {
      throw Error(ErrorCode::Internal, "extracted strategy has no move for this candidate set");
    }
    return it->second;
  }

 private:
  std::map<StateKey, ProbeSet> table_;
};

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CopWins: return "CopWins";
    case Verdict::RobberWins: return "RobberWins";
    case Verdict::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

StateKey state_key(const VertexBitset& set) {
  if (set.universe() > kMaskBits) {
    throw Error(ErrorCode::InvalidArgument, "state keys need n <= 64");
  }
  return set.words().empty() ? 0 : set.words()[0];
}

SolveResult cop_wins(const Graph& g, std::size_t k, const SolverBudget& budget,
                     const SolverOptions& options) {
  const Vertex n = g.vertex_count();
  if (!is_connected(g)) throw Error(ErrorCode::DisconnectedGraph, "solver needs a connected graph");
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidK, "need 1 <= k <= n");
  if (n > budget.max_vertices || n > kMaskBits) {
    return budget_hit(n, k, "n=" + std::to_string(n) + " exceeds max_vertices");
  }
  if (k > budget.max_sensors) {
    return budget_hit(n, k, "k=" + std::to_string(k) + " exceeds max_sensors");
  }
  const std::uint64_t probe_count = binomial_capped(n, k, budget.max_probe_sets);
  if (probe_count > budget.max_probe_sets) {
    return budget_hit(n, k, "C(n,k) exceeds max_probe_sets");
  }

  const MaskGraph mg(g);
  std::vector<std::vector<Vertex>> probes;
  std::vector<std::vector<std::uint8_t>> labels;
  probes.reserve(probe_count);
  auto idx = first_combination(k);
  do {
    probes.push_back(idx);
  } while (next_combination(idx, n));
  if (options.probe_order_seed) {
    Rng rng(*options.probe_order_seed);
    for (std::size_t i = probes.size(); i > 1; --i) {
      std::swap(probes[i - 1], probes[rng.below(i)]);
    }
  }
  labels.reserve(probes.size());
  for (const auto& s : probes) labels.push_back(mg.labels(s));

  // Reachable states from V; children[state][probe] lists the closed
  // neighborhoods of the non-singleton classes.
  std::vector<StateKey> states{full_mask(n)};
  std::unordered_map<StateKey, std::uint32_t> index{{states[0], 0}};
  std::vector<std::vector<std::vector<std::uint32_t>>> children;
  std::vector<StateKey> scratch(n), classes;
  std::uint64_t memo_entries = 1;
  for (std::size_t si = 0; si < states.size(); ++si) {
    std::vector<std::vector<std::uint32_t>> per_probe(probes.size());
    for (std::size_t p = 0; p < probes.size(); ++p) {
      split(states[si], labels[p], scratch, classes);
      for (StateKey c : classes) {
        if (std::has_single_bit(c)) continue;
        const StateKey next = mg.closure(c);
        auto [it, fresh] = index.try_emplace(next, static_cast<std::uint32_t>(states.size()));
        if (fresh) {
          states.push_back(next);
          if (states.size() > budget.max_memo_entries) {
            return budget_hit(n, k, "state count exceeds max_memo_entries");
          }
        }
        per_probe[p].push_back(it->second);
        ++memo_entries;
      }
      if (memo_entries > budget.max_memo_entries * 64) {
        return budget_hit(n, k, "transition table exceeds budget");
      }
    }
    children.push_back(std::move(per_probe));
  }

  // depth[s] = t > 0 once s enters Win_t. Round t only reads depths < t, so
  // updating in place still computes the synchronous iteration.
  std::vector<std::uint32_t> depth(states.size(), 0);
  std::vector<std::int32_t> move(states.size(), -1);
  for (std::uint32_t t = 1;; ++t) {
    bool changed = false;
    for (std::size_t si = 0; si < states.size(); ++si) {
      if (depth[si] != 0) continue;
      for (std::size_t p = 0; p < probes.size(); ++p) {
        const auto& kids = children[si][p];
        const bool wins = std::all_of(kids.begin(), kids.end(), [&](std::uint32_t c) {
          return depth[c] != 0 && depth[c] < t;
        });
        if (wins) {
          depth[si] = t;
          move[si] = static_cast<std::int32_t>(p);
          changed = true;
          break;
        }
      }
    }
    if (!changed || depth[0] != 0) break;
  }

  SolveResult result;
  result.n = n;
  result.k = k;
  result.states_explored = states.size();
  if (depth[0] == 0) {
    result.verdict = Verdict::RobberWins;
    return result;
  }
  result.verdict = Verdict::CopWins;
  result.depth_bound = depth[0];
  // Only states the strategy can actually lead to are kept.
  std::vector<std::uint32_t> stack{0};
  std::vector<bool> seen(states.size(), false);
  seen[0] = true;
  while (!stack.empty()) {
    const auto si = stack.back();
    stack.pop_back();
    const auto p = static_cast<std::size_t>(move[si]);
    result.strategy.emplace(states[si], ProbeSet(probes[p], n));
    for (auto c : children[si][p]) {
      if (!seen[c]) {
        seen[c] = true;
        stack.push_back(c);
      }
    }
  }
  return result;
}

std::size_t localization_number(const Graph& g, const SolverBudget& budget) {
  for (std::size_t k = 1; k <= g.vertex_count(); ++k) {
    const auto r = cop_wins(g, k, budget);
    if (r.verdict == Verdict::CopWins) return k;
    if (r.verdict == Verdict::BudgetExceeded) {
      throw Error(ErrorCode::BudgetExceeded, "localization number: " + r.budget_note);
    }
  }
  throw Error(ErrorCode::Internal, "no k <= n wins, which is impossible on a connected graph");
}

namespace {

struct NaiveSearch {
  Vertex n;
  std::size_t k;
  std::vector<StateKey> closed;
  std::vector<std::vector<Distance>> dist;
  std::vector<StateKey> path;

  bool superset_of_path(StateKey s) const {
    return std::any_of(path.begin(), path.end(), [&](StateKey a) { return (s & a) == a; });
  }

  bool same_signature(const std::vector<Vertex>& probes, Vertex a, Vertex b) const {
    return std::all_of(probes.begin(), probes.end(),
                       [&](Vertex s) { return dist[s][a] == dist[s][b]; });
  }

  bool cop_wins(StateKey state, std::size_t depth) {
    if (depth == 0) return false;
    path.push_back(state);
    auto probes = first_combination(k);
    bool found = false;
    do {
      if (probe_wins(state, probes, depth)) {
        found = true;
        break;
      }
    } while (next_combination(probes, n));
    path.pop_back();
    return found;
  }

  bool probe_wins(StateKey state, const std::vector<Vertex>& probes, std::size_t depth) {
    StateKey left = state;
    while (left != 0) {
      const auto v = static_cast<Vertex>(std::countr_zero(left));
      StateKey cls = 0;
      for (StateKey rest = left; rest != 0; rest &= rest - 1) {
        const auto u = static_cast<Vertex>(std::countr_zero(rest));
        if (same_signature(probes, v, u)) cls |= StateKey{1} << u;
      }
      left &= ~cls;
      if (std::has_single_bit(cls)) continue;
      StateKey next = 0;
      for (StateKey rest = cls; rest != 0; rest &= rest - 1) {
        next |= closed[static_cast<std::size_t>(std::countr_zero(rest))];
      }
      if (superset_of_path(next) || !cop_wins(next, depth - 1)) return false;
    }
    return true;
  }
};

}  // namespace

Verdict naive_cop_wins_oracle(const Graph& g, std::size_t k, std::size_t depth) {
  const Vertex n = g.vertex_count();
  if (n > 8) throw Error(ErrorCode::InvalidArgument, "naive oracle is limited to n <= 8");
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidK, "need 1 <= k <= n");
  NaiveSearch search{n, k, {}, {}, {}};
  for (Vertex v = 0; v < n; ++v) {
    StateKey m = StateKey{1} << v;
    for (Vertex w : g.neighbors(v)) m |= StateKey{1} << w;
    search.closed.push_back(m);
    // Plain BFS on the adjacency, independent of the graph's cache.
    std::vector<Distance> d(n, kUnreachable);
    std::vector<Vertex> q{v};
    d[v] = 0;
    for (std::size_t h = 0; h < q.size(); ++h) {
      for (Vertex w : g.neighbors(q[h])) {
        if (d[w] == kUnreachable) {
          d[w] = d[q[h]] + 1;
          q.push_back(w);
        }
      }
    }
    search.dist.push_back(std::move(d));
  }
  return search.cop_wins(full_mask(n), depth) ? Verdict::CopWins : Verdict::RobberWins;
}

ProbeSet metric_basis(const Graph& g, const SolverBudget& budget) {
  const Vertex n = g.vertex_count();
  if (!is_connected(g)) {
    throw Error(ErrorCode::DisconnectedGraph, "metric dimension needs a connected graph");
  }
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), Vertex{0});
  std::uint64_t tried = 0;
  for (std::size_t size = 1; size <= n; ++size) {
    if (size > budget.max_sensors) break;
    auto idx = first_combination(size);
    do {
      if (++tried > budget.max_probe_sets) {
        throw Error(ErrorCode::BudgetExceeded, "metric dimension: probe set budget exhausted");
      }
      ProbeSet s(idx, n);
      if (resolves(g, s, all)) return s;
    } while (next_combination(idx, n));
  }
  throw Error(ErrorCode::BudgetExceeded, "metric dimension exceeds max_sensors");
}

std::size_t metric_dimension(const Graph& g, const SolverBudget& budget) {
  return metric_basis(g, budget).size();
}

std::unique_ptr<CopStrategy> extracted_cop(const SolveResult& result) {
  if (result.verdict != Verdict::CopWins) {
    throw Error(ErrorCode::InvalidArgument, "no strategy to extract: verdict is not CopWins");
  }
  return std::make_unique<ExtractedCop>(result.strategy);
}

std::string solve_result_to_json(const SolveResult& result) {
  nlohmann::ordered_json j;
  j["n"] = result.n;
  j["k"] = result.k;
  j["verdict"] = to_string(result.verdict);
  j["states_explored"] = result.states_explored;
  j["depth_bound"] = result.depth_bound;
  return j.dump();
}

}  // namespace locz
