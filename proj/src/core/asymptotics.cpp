#include "locz/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "locz/error.hpp"

namespace locz {

namespace {

constexpr double kRelTol = 1e-12;

double loglog(double n) { return std::log(std::log(n)); }

void require_case_value(const CaseTag& tag) {
  const bool needs = tag.kind == CaseKind::FiniteA || tag.kind == CaseKind::FiniteB;
  if (tag.kind == CaseKind::Subcritical) {
    throw Error(ErrorCode::CaseMismatch, "no case formula for the subcritical regime");
  }
  if (needs && !tag.value) {
    throw Error(ErrorCode::CaseMismatch,
                std::string(to_string(tag.kind)) + " needs its limit value (A or B)");
  }
  if (!needs && tag.value) {
    throw Error(ErrorCode::CaseMismatch,
                std::string(to_string(tag.kind)) + " takes no A/B value");
  }
  if (tag.kind == CaseKind::FiniteA && !(*tag.value > 0)) {
    throw Error(ErrorCode::CaseMismatch, "A must be positive");
  }
}

}  // namespace

const char* to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::Subcritical: return "subcritical";
    case CaseKind::FiniteA: return "finite-a";
    case CaseKind::LargeCSmallB: return "large-c-small-b";
    case CaseKind::FiniteB: return "finite-b";
    case CaseKind::LargeB: return "large-b";
  }
  return "?";
}

std::optional<CaseKind> case_kind_from_string(const std::string& s) {
  for (auto k : {CaseKind::Subcritical, CaseKind::FiniteA, CaseKind::LargeCSmallB,
                 CaseKind::FiniteB, CaseKind::LargeB}) {
    if (s == to_string(k)) return k;
  }
  if (s == "i") return CaseKind::FiniteA;
  if (s == "ii") return CaseKind::LargeCSmallB;
  if (s == "iii") return CaseKind::FiniteB;
  if (s == "iv") return CaseKind::LargeB;
  return std::nullopt;
}

CaseTag suggest_case(double n, double d, double c) {
  const double ln = std::log(n);
  const double lln = loglog(n);
  if (c < 1.0 / ln) return {CaseKind::Subcritical, std::nullopt};
  if (c <= lln) return {CaseKind::FiniteA, c};
  const double z = c - (std::log(d) - std::log(std::log(d)));
  if (z < -lln) return {CaseKind::LargeCSmallB, std::nullopt};
  if (z <= lln) return {CaseKind::FiniteB, z};
  return {CaseKind::LargeB, std::nullopt};
}

double omega_prime_for(const RegimeParams& r, CaseKind kind) {
  const double ln = std::log(r.n);
  const double lln = loglog(r.n);
  const double dense = r.d / (ln * ln * ln);
  switch (kind) {
    case CaseKind::Subcritical: return r.omega;
    case CaseKind::FiniteA: return std::min(dense, ln * ln / (lln * lln));
    default: return std::min(dense, lln);
  }
}

RegimeParams compute_regime(double n, double d, std::optional<int> i_override,
                            ExponentRule rule) {
  if (!(n >= 3)) throw Error(ErrorCode::DegenerateRegime, "need n >= 3");
  if (!(d > 1) || !(d < n)) throw Error(ErrorCode::DegenerateRegime, "need 1 < d < n");
  RegimeParams r;
  r.n = n;
  r.d = d;
  if (i_override) {
    r.i = *i_override;
  } else {
    double limit = n;
    if (rule == ExponentRule::PowerAtMost3NLogN) limit = 3 * n * std::log(n);
    if (rule == ExponentRule::PowerAtMost3LogN) limit = 3 * std::log(n);
    limit *= 1 + kRelTol;
    // d > 1, so the powers grow and the loop stops.
    int i = 0;
    while (std::pow(d, i + 1) <= limit) ++i;
    r.i = i;
  }
  if (r.i < 1) throw Error(ErrorCode::DegenerateRegime, "exponent i must be >= 1");
  const double di = std::pow(d, r.i);
  const double ln = std::log(n);
  const double lln = loglog(n);
  r.c = di / n;
  r.x = std::log(d) / ln;
  r.omega = std::min({d / ln, n / di, ln * ln * ln * ln * lln * lln});
  r.case_tag = suggest_case(n, d, r.c);
  r.omega_prime = omega_prime_for(r, r.case_tag.kind);
  return r;
}

RegimeParams with_case(RegimeParams r, CaseTag tag) {
  r.case_tag = tag;
  r.omega_prime = omega_prime_for(r, tag.kind);
  return r;
}

BoundValue lower_bound_sensors(const RegimeParams& r) {
  const double ld = std::log(r.d);
  const double lead3 = 3 * loglog(r.n);
  double lead = ld - lead3;
  if (std::abs(lead) <= kRelTol * std::max(ld, lead3)) lead = 0;
  const double value = lead * r.n / std::pow(r.d, r.i);
  return {value, value <= 0};
}

double upper_bound_sensors_main(const RegimeParams& r) {
  return (1 + std::pow(r.omega, -1.0 / 3)) * (std::log(r.d) + 2 * loglog(r.n)) * r.n /
         std::pow(r.d, r.i);
}

double case_factor(const RegimeParams& r, const CaseTag& tag) {
  require_case_value(tag);
  switch (tag.kind) {
    case CaseKind::FiniteA: {
      const double a = *tag.value;
      return std::exp(a) / (1 - std::exp(-a));
    }
    case CaseKind::LargeCSmallB: return std::exp(r.c);
    case CaseKind::FiniteB: return std::exp(r.c) / (std::exp(*tag.value) + 1);
    case CaseKind::LargeB: return r.n / std::pow(r.d, r.i - 1);
    case CaseKind::Subcritical: break;
  }
  throw Error(ErrorCode::CaseMismatch, "no case formula");
}

double upper_bound_sensors_cases(const RegimeParams& r, const CaseTag& tag) {
  const double factor = case_factor(r, tag);
  const double wp = omega_prime_for(r, tag.kind);
  return (1 + std::pow(wp, -1.0 / 3)) * (std::log(r.d) + 2 * loglog(r.n)) * factor;
}

SpherePrediction predicted_sphere_size(const RegimeParams& r, int j, int set_size) {
  if (set_size != 1 && set_size != 2) {
    throw Error(ErrorCode::InvalidArgument, "set size must be 1 or 2");
  }
  if (j < 0) throw Error(ErrorCode::InvalidArgument, "j must be >= 0");
  const double dj = std::pow(r.d, j);
  if (dj > r.n * (1 + kRelTol)) throw Error(ErrorCode::InvalidArgument, "need d^j <= n");
  return {dj * set_size, 1 / std::sqrt(r.omega) + dj / r.n};
}

SymmdiffPrediction predicted_symmdiff(double n, double c) {
  SymmdiffPrediction p;
  p.value = n * -std::expm1(-c) * std::exp(-c);
  const double ln = std::log(n);
  p.log4_branch = c > ln - 4 * loglog(n);
  p.log4_ceiling = ln * ln * ln * ln;
  return p;
}

SymmdiffPrediction predicted_symmdiff(const RegimeParams& r) {
  return predicted_symmdiff(r.n, r.c);
}

double predicted_s_case(const RegimeParams& r, const CaseTag& tag) {
  switch (tag.kind) {
    case CaseKind::Subcritical:
      if (tag.value) throw Error(ErrorCode::CaseMismatch, "subcritical takes no A/B value");
      return 2 * std::pow(r.d, r.i);
    case CaseKind::FiniteA: {
      require_case_value(tag);
      const double a = *tag.value;
      return 2 * r.n * -std::expm1(-a) * std::exp(-a);
    }
    case CaseKind::LargeCSmallB:
      require_case_value(tag);
      return 2 * r.n * std::exp(-r.c);
    case CaseKind::FiniteB:
      require_case_value(tag);
      return 2 * std::pow(r.d, r.i - 1) * (1 + std::exp(-*tag.value));
    case CaseKind::LargeB:
      require_case_value(tag);
      return 2 * std::pow(r.d, r.i - 1);
  }
  throw Error(ErrorCode::CaseMismatch, "unknown case");
}

double chernoff_tail(double mean, double eps) {
  if (!(eps > 0) || !(eps < 1.5)) {
    throw Error(ErrorCode::EpsOutOfRange, "eps must lie in (0, 3/2)");
  }
  if (!(mean > 0)) throw Error(ErrorCode::InvalidArgument, "mean must be positive");
  return 2 * std::exp(-eps * eps * mean / 3);
}

double r_value(double n, double d) {
  if (!(n >= 3) || !(d > 0)) throw Error(ErrorCode::InvalidArgument, "need n >= 3, d > 0");
  const double ln = std::log(n);
  return n * ln * ln * ln / d;
}

double t_f(double n) {
  if (!(n >= 3)) throw Error(ErrorCode::InvalidArgument, "need n >= 3");
  return std::log(n) / loglog(n);
}

}  // namespace locz
