#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "locz/game.hpp"
#include "locz/graph.hpp"
#include "locz/signatures.hpp"

namespace locz {

struct SolverBudget {
  std::uint32_t max_vertices = 12;
  std::uint32_t max_sensors = 12;
  std::uint64_t max_memo_entries = std::uint64_t{1} << 22;
  std::uint64_t max_probe_sets = std::uint64_t{1} << 20;
};

enum class Verdict { CopWins, RobberWins, BudgetExceeded };

const char* to_string(Verdict v);

// Candidate set encoded as a bit mask over vertices 0..n-1 (n <= 64).
using StateKey = std::uint64_t;

struct SolveResult {
  Verdict verdict = Verdict::BudgetExceeded;
  std::size_t n = 0;
  std::size_t k = 0;
  // Probe set to play from each winning state; present iff CopWins.
  std::map<StateKey, ProbeSet> strategy;
  // With optimal play the cops capture within this many rounds (CopWins only).
  std::size_t depth_bound = 0;
  std::uint64_t states_explored = 0;
  std::string budget_note;  // which limit was hit, on BudgetExceeded
};

struct SolverOptions {
  // Visit probe sets in a seeded random order instead of lexicographic.
  // The verdict and depth do not depend on it; the extracted strategy may.
  std::optional<std::uint64_t> probe_order_seed;
};

StateKey state_key(const VertexBitset& set);

// Decides the class game with k sensors.
//
// Win_1 holds the states where some probe set splits the state into
// singletons; Win_{t+1} adds states where some probe set sends every
// non-singleton class R to a state N(R,1) already in Win_t. The iteration
// runs over all states reachable from V until nothing changes, which is the
// least fixpoint; cycles the robber can sustain are never entered into Win.
// Returns BudgetExceeded (not an exception) when a limit is hit.
// Throws DisconnectedGraph, InvalidK.
SolveResult cop_wins(const Graph& g, std::size_t k, const SolverBudget& budget = {},
                     const SolverOptions& options = {});

// Least k with a cop win, scanning k = 1, 2, ...; throws BudgetExceeded.
std::size_t localization_number(const Graph& g, const SolverBudget& budget = {});

// Memo-free alternating search: CopWins iff the cops can force capture within
// `depth` rounds. A branch where the robber reaches a superset of a state
// already on the current path is scored for the robber; this never cuts an
// optimal cop line, so the answer is exact. Requires n <= 8.
Verdict naive_cop_wins_oracle(const Graph& g, std::size_t k, std::size_t depth);

// Smallest resolving set size, by enumerating subsets in increasing size.
// Throws BudgetExceeded, DisconnectedGraph.
std::size_t metric_dimension(const Graph& g, const SolverBudget& budget = {});

// Smallest resolving set itself (lexicographically first of minimum size).
ProbeSet metric_basis(const Graph& g, const SolverBudget& budget = {});

// Plays the extracted strategy of a CopWins result. Throws Internal if the
// game reaches a state the strategy does not cover.
std::unique_ptr<CopStrategy> extracted_cop(const SolveResult& result);

// {n, k, verdict, states_explored, depth_bound}
std::string solve_result_to_json(const SolveResult& result);

}  // namespace locz
