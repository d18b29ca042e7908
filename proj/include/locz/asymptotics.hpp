#pragma once

#include <optional>
#include <string>

// Closed-form quantities for G(n,p) with d = pn. All logarithms are natural.
namespace locz {

// Finite-n stand-ins for the limiting regimes of c = d^i / n.
//   Subcritical   c -> 0
//   FiniteA       c -> A in (0, inf)
//   LargeCSmallB  c -> inf with B -> -inf
//   FiniteB       B finite
//   LargeB        B -> inf
// where B is the limit of c - (log d - log log d).
enum class CaseKind { Subcritical, FiniteA, LargeCSmallB, FiniteB, LargeB };

const char* to_string(CaseKind kind);
std::optional<CaseKind> case_kind_from_string(const std::string& s);

struct CaseTag {
  CaseKind kind = CaseKind::Subcritical;
  std::optional<double> value;  // A for FiniteA, B for FiniteB
};

// How i is picked when not overridden.
enum class ExponentRule {
  PowerAtMostN,       // largest i with d^i <= n (default)
  PowerAtMost3NLogN,  // largest i with d^i / n <= 3 log n
  PowerAtMost3LogN,   // largest i with d^i <= 3 log n, read literally
};

struct RegimeParams {
  double n = 0;
  double d = 0;
  int i = 1;
  double c = 0;  // d^i / n
  double x = 0;  // log d / log n
  double omega = 0;
  double omega_prime = 0;  // for case_tag.kind
  CaseTag case_tag;        // suggested from c unless set with with_case
};

// Throws DegenerateRegime unless n >= 3 and 1 < d < n, or if the rule or
// override gives i < 1.
RegimeParams compute_regime(double n, double d, std::optional<int> i_override = std::nullopt,
                            ExponentRule rule = ExponentRule::PowerAtMostN);

// Suggested tag from the finite-n proxies:
//   c < 1/log n                      Subcritical
//   1/log n <= c <= log log n        FiniteA (A = c)
//   otherwise z = c - (log d - log log d):
//     z < -log log n                 LargeCSmallB
//     |z| <= log log n               FiniteB (B = z)
//     z > log log n                  LargeB
CaseTag suggest_case(double n, double d, double c);

// omega' for a case: FiniteA uses min{d/log^3 n, log^2 n/(log log n)^2};
// the B-side cases use min{d/log^3 n, log log n}; Subcritical keeps omega.
double omega_prime_for(const RegimeParams& r, CaseKind kind);

// Copy of r with the tag replaced and omega' recomputed.
RegimeParams with_case(RegimeParams r, CaseTag tag);

struct BoundValue {
  double value = 0;
  bool vacuous = false;  // nonpositive: the bound says nothing
};

// (log d - 3 log log n) n / d^i. A leading factor within rounding of zero is
// returned as exactly 0.
BoundValue lower_bound_sensors(const RegimeParams& r);

// (1 + omega^{-1/3}) (log d + 2 log log n) n / d^i
double upper_bound_sensors_main(const RegimeParams& r);

// Case factor F: e^A/(1-e^-A), e^c, e^c/(e^B+1) or n/d^(i-1).
// Throws CaseMismatch for Subcritical, or when A/B is missing or supplied
// where it does not belong.
double case_factor(const RegimeParams& r, const CaseTag& tag);

// (1 + omega'^{-1/3}) (log d + 2 log log n) F, with omega' for tag.kind.
double upper_bound_sensors_cases(const RegimeParams& r, const CaseTag& tag);

struct SpherePrediction {
  double value = 0;  // d^j |V'|
  double band = 0;   // relative: 1/sqrt(omega) + d^j/n
};

// Throws InvalidArgument unless set_size is 1 or 2, j >= 0 and d^j <= n.
SpherePrediction predicted_sphere_size(const RegimeParams& r, int j, int set_size);

struct SymmdiffPrediction {
  double value = 0;            // n (1 - e^-c) e^-c
  bool log4_branch = false;    // c > log n - 4 log log n
  double log4_ceiling = 0;     // log^4 n, the order of the bound there
};

SymmdiffPrediction predicted_symmdiff(double n, double c);
SymmdiffPrediction predicted_symmdiff(const RegimeParams& r);

// Leading-order |D(x,y)| for the tag: 2d^i, 2n(1-e^-A)e^-A, 2n e^-c,
// 2d^(i-1)(1+e^-B), 2d^(i-1). Throws CaseMismatch like case_factor.
double predicted_s_case(const RegimeParams& r, const CaseTag& tag);

// 2 exp(-eps^2 mean / 3); throws EpsOutOfRange unless 0 < eps < 3/2 and
// InvalidArgument unless mean > 0.
double chernoff_tail(double mean, double eps);

// n log^3 n / d
double r_value(double n, double d);

// log n / log log n
double t_f(double n);

}  // namespace locz
