#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "locz/graph.hpp"
#include "locz/solver.hpp"

namespace locz {

inline constexpr const char* kVersion = "1.0.0";

// Seeds, all derived from the master seed:
//   trial t            T = derive_seed(master, t)
//   game stream        derive_seed(T, 0)
//   graph attempt a    derive_seed(T, a + 1)   (a = 0 unless resampled)
//   robber stream      derive_seed(T, 1u << 20)
// Single-graph checks use derive_seed(master, 0) for the graph and
// derive_seed(master, 1) for sampling vertices and pairs.
struct ExperimentConfig {
  Vertex n = 0;
  std::optional<double> p;  // exactly one of p and d
  std::optional<double> d;
  std::optional<std::size_t> k;      // exactly one of k and k_rule (game runs)
  std::optional<std::string> k_rule;  // thm61, thm51, thm64-i .. thm64-iv
  double k_multiplier = 1.0;
  std::optional<double> case_value;  // A for thm64-i, B for thm64-iii
  std::size_t trials = 1;
  std::optional<std::size_t> max_rounds;  // default ceil(tf_multiplier * t_F(n))
  double tf_multiplier = 2.0;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: LOCZ_THREADS, else 1
  std::optional<int> i_override;
  std::string robber;  // empty: greedy-robber (capture), diametric-robber (survival)
  std::size_t samples = 0;
  std::size_t pairs = 0;
  bool timestamps = false;  // manifest timestamps break byte-identical reruns
};

// Throws InvalidArgument on an inconsistent config.
void validate(const ExperimentConfig& config, bool needs_k);

double edge_probability(const ExperimentConfig& config);

unsigned thread_budget(const ExperimentConfig& config);

struct ResolvedK {
  std::size_t k = 0;
  std::optional<double> formula;  // raw formula value when a rule was used
};

// k = clamp(ceil(k_multiplier * formula), 1, n) for a rule.
ResolvedK resolve_k(const ExperimentConfig& config);

std::size_t resolve_max_rounds(const ExperimentConfig& config);

// One CSV table. Cells are kept as text; numbers are written in shortest
// round-trip form.
struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  static Table from_csv(std::string name, std::string_view text);
  friend bool operator==(const Table&, const Table&) = default;
};

std::string format_number(double x);

struct ExperimentReport {
  std::string kind;
  std::string manifest_json;
  std::vector<Table> tables;
};

// Writes manifest.json and one <name>.csv per table into `dir`.
void write_report(const ExperimentReport& report, const std::string& dir);

struct TrialRecord {
  std::uint64_t seed = 0;
  std::size_t resamples = 0;
  bool captured = false;
  std::size_t rounds = 0;                // capture round, or rounds played
  std::vector<std::size_t> candidates;   // size of the set partitioned each round
  std::vector<std::size_t> target_class; // size of the all-target class each round
  std::vector<std::size_t> far_set;      // |V \ N(S, i)| each round
};

struct CaptureStats {
  std::size_t trials = 0;
  std::size_t captures = 0;
  double rate = 0;  // captures / trials
  std::size_t k = 0;
  std::size_t max_rounds = 0;
  std::map<std::size_t, std::size_t> histogram;  // capture round -> count
  std::vector<double> mean_shrink;  // round t: mean |N(R^t,1)| / |candidates_t|
  std::size_t resamples = 0;
  std::vector<TrialRecord> records;
};

CaptureStats mc_capture(const ExperimentConfig& config);
CaptureStats mc_survival(const ExperimentConfig& config);

struct SphereSample {
  Vertex x = 0;
  std::optional<Vertex> y;  // set for pair samples
  int j = 0;
  std::size_t measured = 0;
  double predicted = 0;
};

struct ExpansionResult {
  int i = 1;
  double d = 0;
  // 1/sqrt(omega) + d^i/n; absent when d is outside (1, n), e.g. p = 1.
  std::optional<double> band;
  std::vector<SphereSample> vertices;   // |S(v,j)| vs d^j
  std::vector<SphereSample> pair_sets;  // |S({x,y},j)| vs 2 d^j
  std::vector<SphereSample> pair_diffs; // |S(x,j) \ S(y,j)| vs d^j
};

ExpansionResult expansion_check(const ExperimentConfig& config);

// |S(x,j) \ S(y,j)|; throws InvalidPair if x == y.
std::size_t measure_symmdiff(const Graph& g, Vertex x, Vertex y, Distance j);

struct SymmdiffResult {
  int i = 1;
  double c = 0;
  double predicted = 0;
  bool log4_branch = false;
  bool dense_condition = false;  // d > log^3 n
  std::vector<SphereSample> pairs;
  std::optional<double> median_ratio;  // absent in the log^4 branch or with no pairs
};

SymmdiffResult symmdiff_check(const ExperimentConfig& config);

struct DiameterResult {
  std::vector<Distance> diameters;  // per trial, kUnreachable if disconnected
  std::map<Distance, std::size_t> histogram;  // kUnreachable: disconnected
  Distance predicted = 0;  // least j >= 1 with d^j/n - 2 log n > 0
};

DiameterResult diameter_check(const ExperimentConfig& config);

struct SolveSmallResult {
  std::size_t n = 0;
  std::size_t zeta = 0;
  std::size_t beta = 0;
  std::size_t depth_bound = 0;
  std::uint64_t states_explored = 0;
  bool zeta_le_beta = false;
  bool oracle_checked = false;
  bool oracle_agrees = false;
};

// Throws BudgetExceeded when n exceeds the budget.
SolveSmallResult solve_small(const Graph& g, const SolverBudget& budget, bool run_oracle);

ExperimentReport report(const ExperimentConfig& config, const CaptureStats& stats,
                        std::string_view kind);
ExperimentReport report(const ExperimentConfig& config, const ExpansionResult& result);
ExperimentReport report(const ExperimentConfig& config, const SymmdiffResult& result);
ExperimentReport report(const ExperimentConfig& config, const DiameterResult& result);
ExperimentReport report(const SolveSmallResult& result);

struct BoundsQuery {
  double n = 0;
  std::optional<double> p;  // exactly one of p and d
  std::optional<double> d;
  std::optional<int> i_override;
  std::optional<double> a;  // case (i)
  std::optional<double> b;  // case (iii)
};

// Every formula value for one (n, d) as a JSON document. The case formulas
// use i chosen by d^i / n <= 3 log n unless overridden.
std::string bounds_json(const BoundsQuery& q);

// kind: mc-capture, mc-survival, expansion-check, symmdiff-check, diameter-check.
ExperimentReport run_experiment(std::string_view kind, const ExperimentConfig& config);

}  // namespace locz
