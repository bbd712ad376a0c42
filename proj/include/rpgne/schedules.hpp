#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rpgne/common.hpp"

namespace rpgne {

enum class GammaVariant { kFull, kPartial };

/// Time-varying positive parameter with a closed-form derivative.
///
/// Families:
///   constant(c)            c
///   power(c, p)            c·(1+t)^p
///   exponential(c, r)      c·e^{r·t}
///   sum(terms)             Σ terms
///   derived_gamma(...)     δ / (N·b1² + N·b2²·ε² + δ² [+ 1])
///
/// The derived step size uses the "+1" denominator for the
/// partial-decision variant.
class ParamSchedule {
 public:
  struct Constant {
    double c;
  };
  struct Power {
    double c;
    double p;
  };
  struct Exponential {
    double c;
    double r;
  };
  struct Sum {
    std::vector<ParamSchedule> terms;
  };
  struct DerivedGamma {
    std::shared_ptr<const ParamSchedule> delta;
    std::shared_ptr<const ParamSchedule> epsilon;
    double n_players;
    double b1;
    double b2;
    GammaVariant variant;
  };
  using Kind = std::variant<Constant, Power, Exponential, Sum, DerivedGamma>;

  ParamSchedule() : kind_(Constant{0.0}) {}

  static ParamSchedule constant(double c) {
    detail::require(std::isfinite(c) && c >= 0.0,
                    "constant schedule: c must be finite and >= 0");
    return ParamSchedule(Constant{c});
  }
  static ParamSchedule power(double c, double p) {
    detail::require(std::isfinite(c) && c > 0.0, "power schedule: c must be > 0");
    detail::require(std::isfinite(p), "power schedule: p must be finite");
    return ParamSchedule(Power{c, p});
  }
  static ParamSchedule exponential(double c, double r) {
    detail::require(std::isfinite(c) && c > 0.0,
                    "exponential schedule: c must be > 0");
    detail::require(std::isfinite(r), "exponential schedule: r must be finite");
    return ParamSchedule(Exponential{c, r});
  }
  static ParamSchedule sum(std::vector<ParamSchedule> terms) {
    detail::require(!terms.empty(), "sum schedule: needs at least one term");
    return ParamSchedule(Sum{std::move(terms)});
  }

  const Kind& kind() const { return kind_; }

  double eval(double t) const {
    return std::visit([t](const auto& k) { return eval_kind(k, t); }, kind_);
  }
  double derivative(double t) const {
    return std::visit([t](const auto& k) { return derivative_kind(k, t); }, kind_);
  }

  // Used by derive_gamma.
  explicit ParamSchedule(Kind kind) : kind_(std::move(kind)) {}

 private:
  static double eval_kind(const Constant& k, double) { return k.c; }
  static double eval_kind(const Power& k, double t) {
    return k.c * std::pow(1.0 + t, k.p);
  }
  static double eval_kind(const Exponential& k, double t) {
    return k.c * std::exp(k.r * t);
  }
  static double eval_kind(const Sum& k, double t) {
    double s = 0.0;
    for (const auto& term : k.terms) s += term.eval(t);
    return s;
  }
  static double denominator(const DerivedGamma& k, double d, double e) {
    double den = k.n_players * k.b1 * k.b1 +
                 k.n_players * k.b2 * k.b2 * e * e + d * d;
    if (k.variant == GammaVariant::kPartial) den += 1.0;
    return den;
  }
  static double eval_kind(const DerivedGamma& k, double t) {
    const double d = k.delta->eval(t);
    const double e = k.epsilon->eval(t);
    return d / denominator(k, d, e);
  }

  static double derivative_kind(const Constant&, double) { return 0.0; }
  static double derivative_kind(const Power& k, double t) {
    return k.c * k.p * std::pow(1.0 + t, k.p - 1.0);
  }
  static double derivative_kind(const Exponential& k, double t) {
    return k.c * k.r * std::exp(k.r * t);
  }
  static double derivative_kind(const Sum& k, double t) {
    double s = 0.0;
    for (const auto& term : k.terms) s += term.derivative(t);
    return s;
  }
  static double derivative_kind(const DerivedGamma& k, double t) {
    const double d = k.delta->eval(t);
    const double e = k.epsilon->eval(t);
    const double dd = k.delta->derivative(t);
    const double de = k.epsilon->derivative(t);
    const double den = denominator(k, d, e);
    const double dden =
        2.0 * k.n_players * k.b2 * k.b2 * e * de + 2.0 * d * dd;
    return (dd * den - d * dden) / (den * den);
  }

  Kind kind_;
};

inline double eval(const ParamSchedule& s, double t) { return s.eval(t); }
inline double eval_derivative(const ParamSchedule& s, double t) {
  return s.derivative(t);
}

/// γ(t) = δ/(N b1² + N b2² ε² + δ²), plus 1 in the denominator for the
/// partial-decision variant. b2 = 0 is accepted for games without a shared
/// constraint (the penalty term then vanishes).
inline ParamSchedule derive_gamma(Index n_players, double b1, double b2,
                                  const ParamSchedule& delta,
                                  const ParamSchedule& epsilon,
                                  GammaVariant variant) {
  detail::require(n_players >= 1, "derive_gamma: N must be >= 1");
  detail::require(std::isfinite(b1) && b1 > 0.0, "derive_gamma: b1 must be > 0");
  detail::require(std::isfinite(b2) && b2 >= 0.0, "derive_gamma: b2 must be >= 0");
  return ParamSchedule(ParamSchedule::DerivedGamma{
      std::make_shared<const ParamSchedule>(delta),
      std::make_shared<const ParamSchedule>(epsilon), double(n_players), b1, b2,
      variant});
}

/// δ, ε, γ, ς (sigma) and w.
struct ScheduleSet {
  ParamSchedule delta;
  ParamSchedule epsilon;
  ParamSchedule gamma;
  ParamSchedule sigma;
  ParamSchedule w;
};

/// Throws unless γ and ς are positive and δ, ε, w nonnegative at t.
inline void validate_at(const ScheduleSet& s, double t) {
  const double g = s.gamma.eval(t);
  const double sg = s.sigma.eval(t);
  detail::require(std::isfinite(g) && g > 0.0, "schedule gamma must be positive");
  detail::require(std::isfinite(sg) && sg > 0.0, "schedule sigma must be positive");
  detail::require(s.delta.eval(t) >= 0.0, "schedule delta must be >= 0");
  detail::require(s.epsilon.eval(t) >= 0.0, "schedule epsilon must be >= 0");
  detail::require(s.w.eval(t) >= 0.0, "schedule w must be >= 0");
}

// ---------------------------------------------------------------------------
// Condition checking on a finite log-spaced grid.
// ---------------------------------------------------------------------------

struct ConditionCheck {
  std::string name;
  bool passed = false;
  bool proxy = false;  // asymptotic claim checked by a finite-grid proxy
  std::optional<double> witness_t;
  std::string detail;
};

struct ConditionReport {
  std::string flow;
  double horizon = 0.0;
  int grid_size = 0;
  std::vector<ConditionCheck> checks;
  /// Running maximum of ∫₀ᵗ r₂ e^{E(s)} ds / e^{E(t)} (empirical c₀).
  double c0_empirical = 0.0;
  /// min over the grid of θ(t) - u₁ς/4 (partial-decision only).
  std::optional<double> min_theta_margin;
  /// min over the grid of w(t) - w_required(t) (partial-decision only).
  std::optional<double> min_w_margin;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const ConditionCheck& c) { return c.passed; });
  }
  const ConditionCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

/// t_j = (1+T)^{j/(n-1)} - 1, so 1+t is log-spaced and the grid spans [0, T].
inline std::vector<double> log_grid(double horizon, int n) {
  std::vector<double> t(static_cast<size_t>(n));
  const double top = std::log1p(horizon);
  for (int j = 0; j < n; ++j)
    t[static_cast<size_t>(j)] = std::expm1(top * double(j) / double(n - 1));
  t.back() = horizon;
  return t;
}

/// First grid index of the last decade of 1+t.
inline size_t last_decade_start(const std::vector<double>& t) {
  const double cut = (1.0 + t.back()) / 10.0 - 1.0;
  size_t j = 0;
  while (j + 1 < t.size() && t[j] < cut) ++j;
  return j;
}

/// Proxy for q(t) → 0: q(T) ≤ q(0)/10 and nonincreasing over the last
/// decade of the grid.
inline ConditionCheck to_zero_check(std::string name,
                                    const std::vector<double>& t,
                                    const std::vector<double>& q) {
  ConditionCheck c{std::move(name), true, true, std::nullopt, ""};
  const size_t start = last_decade_start(t);
  for (size_t j = start + 1; j < q.size(); ++j) {
    if (!(q[j] <= q[j - 1] * (1.0 + 1e-9))) {
      c.passed = false;
      c.witness_t = t[j];
      c.detail = "increases within the last decade";
      return c;
    }
  }
  if (!(q.back() <= q.front() / 10.0)) {
    c.passed = false;
    c.witness_t = t.back();
    c.detail = "decrease over the grid is less than a factor of 10";
  }
  return c;
}

/// Proxy for q(t) → ∞: q(T) ≥ 10·q(t_ref) and nondecreasing over the last
/// decade. t_ref is the grid start unless q vanishes there (integrals), in
/// which case the first grid point with 1+t ≥ 10 is used.
inline ConditionCheck to_infinity_check(std::string name,
                                        const std::vector<double>& t,
                                        const std::vector<double>& q) {
  ConditionCheck c{std::move(name), true, true, std::nullopt, ""};
  const size_t start = last_decade_start(t);
  for (size_t j = start + 1; j < q.size(); ++j) {
    if (!(q[j] >= q[j - 1] * (1.0 - 1e-9))) {
      c.passed = false;
      c.witness_t = t[j];
      c.detail = "decreases within the last decade";
      return c;
    }
  }
  size_t ref = 0;
  if (!(q[0] > 0.0)) {
    while (ref + 1 < t.size() && 1.0 + t[ref] < 10.0) ++ref;
  }
  if (!(q.back() >= 10.0 * q[ref]) || ref + 1 >= t.size()) {
    c.passed = false;
    c.witness_t = t.back();
    c.detail = "growth over the grid is less than a factor of 10";
  }
  return c;
}

struct RateInputs {
  std::vector<double> t;
  std::vector<double> rate;        // r₁ or u₁
  std::vector<double> r2;          // (|δ̇| + |ε̇|)/δ
  std::vector<double> sigma;
  double energy_divisor = 2.0;     // E = ∫ rate·ς / divisor
};

// Shared body of the full- and partial-decision checks. `rate_name` is "r1" or
// "u1".
inline void common_checks(ConditionReport& report, const ScheduleSet& s,
                          const RateInputs& in, const std::string& rate_name) {
  const auto& t = in.t;
  const size_t n = t.size();

  ConditionCheck in_unit{rate_name + " in (0,1)", true, false, std::nullopt, ""};
  for (size_t j = 0; j < n; ++j) {
    if (!(in.rate[j] > 0.0 && in.rate[j] < 1.0)) {
      in_unit.passed = false;
      in_unit.witness_t = t[j];
      in_unit.detail = rate_name + " = " + std::to_string(in.rate[j]);
      break;
    }
  }
  report.checks.push_back(in_unit);

  std::vector<double> ratio(n), rate_sigma(n);
  for (size_t j = 0; j < n; ++j) {
    rate_sigma[j] = in.rate[j] * in.sigma[j];
    ratio[j] = in.r2[j] / rate_sigma[j];
  }
  report.checks.push_back(
      to_zero_check("r2/(" + rate_name + "*sigma) -> 0", t, ratio));

  // ∫ rate·ς dt by trapezoid on the grid.
  std::vector<double> integral(n, 0.0);
  for (size_t j = 1; j < n; ++j)
    integral[j] = integral[j - 1] +
                  0.5 * (t[j] - t[j - 1]) * (rate_sigma[j] + rate_sigma[j - 1]);
  report.checks.push_back(
      to_infinity_check("int " + rate_name + "*sigma dt -> inf", t, integral));

  // R(t) = ∫₀ᵗ r₂ e^{E(s)} ds / e^{E(t)}, advanced cell by cell without
  // forming e^E. Within a cell E is taken linear and r₂ linear, and the
  // weighted integral is done exactly; a plain trapezoid would give
  // R ≈ h·r₂/2 once ΔE is large instead of the correct ≈ r₂/E'.
  std::vector<double> big_r(n, 0.0);
  for (size_t j = 1; j < n; ++j) {
    const double h = t[j] - t[j - 1];
    const double x = (integral[j] - integral[j - 1]) / in.energy_divisor;
    // phi1 = ∫₀ʰ e^{-xu/h} du, phi2 = ∫₀ʰ u e^{-xu/h} du
    double phi1, phi2;
    if (x < 1e-6) {
      phi1 = h * (1.0 - 0.5 * x);
      phi2 = h * h * (0.5 - x / 3.0);
    } else {
      phi1 = h * (-std::expm1(-x)) / x;
      phi2 = h * h * (-std::expm1(-x) - x * std::exp(-x)) / (x * x);
    }
    big_r[j] = std::exp(-x) * big_r[j - 1] + in.r2[j] * phi1 +
               (in.r2[j - 1] - in.r2[j]) / h * phi2;
  }
  report.checks.push_back({"int r2 e^E bounded or divergent", true, true,
                           std::nullopt,
                           "monotone integral of a positive function"});
  const size_t start = last_decade_start(t);
  double max_before = 0.0, max_last = 0.0;
  for (size_t j = 0; j < n; ++j) {
    if (j < start)
      max_before = std::max(max_before, big_r[j]);
    else
      max_last = std::max(max_last, big_r[j]);
  }
  report.c0_empirical = std::max(max_before, max_last);
  ConditionCheck bounded{"integral ratio bounded (c0)", true, true,
                         std::nullopt, ""};
  bounded.detail = "running max " + std::to_string(report.c0_empirical);
  if (!std::isfinite(report.c0_empirical) ||
      (start > 0 && max_last > max_before * (1.0 + 1e-6))) {
    bounded.passed = false;
    bounded.witness_t = t.back();
    bounded.detail += " still growing in the last decade";
  }
  report.checks.push_back(bounded);

  std::vector<double> delta(n), eps(n), d2e(n);
  for (size_t j = 0; j < n; ++j) {
    delta[j] = s.delta.eval(t[j]);
    eps[j] = s.epsilon.eval(t[j]);
    d2e[j] = delta[j] * delta[j] * eps[j];
  }
  ConditionCheck delta_zero{"delta -> 0", true, true, std::nullopt, ""};
  for (size_t j = 1; j < n; ++j) {
    if (!(delta[j] <= delta[j - 1] * (1.0 + 1e-12))) {
      delta_zero.passed = false;
      delta_zero.witness_t = t[j];
      delta_zero.detail = "delta increases";
      break;
    }
  }
  if (delta_zero.passed && !(delta.back() < delta.front() / 10.0)) {
    delta_zero.passed = false;
    delta_zero.witness_t = t.back();
    delta_zero.detail = "delta(T) >= delta(0)/10";
  }
  report.checks.push_back(delta_zero);
  report.checks.push_back(to_infinity_check("delta^2*eps -> inf", t, d2e));
  report.checks.push_back(to_infinity_check("eps -> inf", t, eps));
}

inline RateInputs sample_rates(const ScheduleSet& s, double horizon,
                               int grid_size) {
  RateInputs in;
  in.t = log_grid(horizon, grid_size);
  const size_t n = in.t.size();
  in.rate.resize(n);
  in.r2.resize(n);
  in.sigma.resize(n);
  for (size_t j = 0; j < n; ++j) {
    const double t = in.t[j];
    const double d = s.delta.eval(t);
    in.r2[j] = (std::abs(s.delta.derivative(t)) +
                std::abs(s.epsilon.derivative(t))) / d;
    in.sigma[j] = s.sigma.eval(t);
  }
  return in;
}

}  // namespace detail

/// Sufficient conditions for the full-decision flow. Asymptotic claims are
/// proxy-checked: a "→ 0" claim must shrink by 10x across the grid and be
/// nonincreasing over its last decade; "→ ∞" claims symmetrically.
inline ConditionReport check_full_decision_conditions(const ScheduleSet& s,
                                                 Index n_players, double b1,
                                                 double b2, double horizon,
                                                 int grid_size) {
  detail::require(horizon > 0.0, "check_full_decision_conditions: horizon must be > 0");
  detail::require(grid_size >= 100, "check_full_decision_conditions: grid_size must be >= 100");
  ConditionReport report;
  report.flow = "full-decision";
  report.horizon = horizon;
  report.grid_size = grid_size;
  auto in = detail::sample_rates(s, horizon, grid_size);
  const double n = double(n_players);
  for (size_t j = 0; j < in.t.size(); ++j) {
    const double t = in.t[j];
    const double g = s.gamma.eval(t), d = s.delta.eval(t), e = s.epsilon.eval(t);
    in.rate[j] = -g * g * (n * b1 * b1 + n * b2 * b2 * e * e + d * d) + 2.0 * g * d;
  }
  in.energy_divisor = 2.0;
  detail::common_checks(report, s, in, "r1");
  return report;
}

/// Sufficient conditions for the partial-decision flow, including the
/// consensus-gain condition θ(t) ≥ u₁ς/4.
inline ConditionReport check_partial_decision_conditions(const ScheduleSet& s,
                                                 Index n_players, double b1p,
                                                 double b2, double b3,
                                                 double lambda_min,
                                                 double horizon, int grid_size) {
  detail::require(lambda_min > 0.0, "check_partial_decision_conditions: lambda_min must be > 0");
  detail::require(horizon > 0.0, "check_partial_decision_conditions: horizon must be > 0");
  detail::require(grid_size >= 100, "check_partial_decision_conditions: grid_size must be >= 100");
  ConditionReport report;
  report.flow = "partial-decision";
  report.horizon = horizon;
  report.grid_size = grid_size;
  auto in = detail::sample_rates(s, horizon, grid_size);
  const double n = double(n_players);
  ConditionCheck theta{"theta >= u1*sigma/4", true, false, std::nullopt, ""};
  double min_margin = std::numeric_limits<double>::infinity();
  double min_w_margin = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < in.t.size(); ++j) {
    const double t = in.t[j];
    const double g = s.gamma.eval(t), d = s.delta.eval(t), e = s.epsilon.eval(t);
    const double sg = in.sigma[j];
    const double u1 =
        -g * g * (n * b1p * b1p + n * b2 * b2 * e * e + d * d + 1.0) + 2.0 * g * d;
    const double u2 = (g * g + 1.0) * (b3 * b3 + b2 * b2 * e * e);
    in.rate[j] = u1;
    const double penalty = u2 * sg / 2.0 +
                           sg * (2.0 - u1) * (n - 1.0) * (n - 1.0) / u1 +
                           u1 * u2 * sg / (4.0 * (2.0 - u1));
    const double w = s.w.eval(t);
    const double margin = w * lambda_min - penalty - u1 * sg / 4.0;
    const double w_required = (penalty + u1 * sg / 4.0) / lambda_min;
    if (!(margin >= min_margin)) min_margin = margin;
    min_w_margin = std::min(min_w_margin, w - w_required);
    if (theta.passed && !(margin >= 0.0)) {
      theta.passed = false;
      theta.witness_t = t;
      theta.detail = "w(t) = " + std::to_string(w) + " < required " +
                     std::to_string(w_required);
    }
  }
  in.energy_divisor = 4.0;
  detail::common_checks(report, s, in, "u1");
  report.checks.push_back(theta);
  report.min_theta_margin = min_margin;
  report.min_w_margin = min_w_margin;
  return report;
}

/// Conditions for the unconstrained flow. c1, c2 are free positive
/// constants with 1 - N/(2c1) - N/(2c2) > 0; l1, l2 are local Lipschitz
/// constants of the per-player gradients.
inline ConditionReport check_unconstrained_conditions(
    const ParamSchedule& delta, const ParamSchedule& w, Index n_players,
    double l1, double l2, double lambda_min, double c1, double c2,
    double horizon, int grid_size) {
  detail::require(lambda_min > 0.0, "check_unconstrained_conditions: lambda_min must be > 0");
  detail::require(c1 > 0.0 && c2 > 0.0, "check_unconstrained_conditions: c1, c2 must be > 0");
  detail::require(horizon > 0.0 && grid_size >= 100,
                  "check_unconstrained_conditions: bad horizon or grid");
  ConditionReport report;
  report.flow = "unconstrained";
  report.horizon = horizon;
  report.grid_size = grid_size;
  const auto t = detail::log_grid(horizon, grid_size);
  const size_t m = t.size();
  const double n = double(n_players);
  std::vector<double> d(m), integral(m, 0.0), ratio(m);
  for (size_t j = 0; j < m; ++j) {
    d[j] = delta.eval(t[j]);
    ratio[j] = std::abs(delta.derivative(t[j])) / (d[j] * d[j]);
    if (j > 0) integral[j] = integral[j - 1] + 0.5 * (t[j] - t[j - 1]) * (d[j] + d[j - 1]);
  }
  report.checks.push_back(detail::to_zero_check("delta -> 0", t, d));
  report.checks.push_back(detail::to_infinity_check("int delta dt -> inf", t, integral));
  report.checks.push_back(detail::to_zero_check("|delta'|/delta^2 -> 0", t, ratio));

  const double slack_factor = 1.0 - n / (2.0 * c1) - n / (2.0 * c2);
  ConditionCheck gain{"consensus gain", slack_factor > 0.0, false, std::nullopt, ""};
  if (!gain.passed) gain.detail = "1 - N/(2c1) - N/(2c2) must be > 0";
  double min_w_margin = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < m && gain.passed; ++j) {
    const double dj = d[j];
    const double lhs_terms = l1 * l1 * c1 / (2.0 * dj) + l1 * std::sqrt(n - 1.0) +
                             (n - 1.0) * c2 * (l2 + dj) * (l2 + dj) / (2.0 * dj);
    const double required = (lhs_terms + dj * slack_factor) / lambda_min;
    const double wj = w.eval(t[j]);
    min_w_margin = std::min(min_w_margin, wj - required);
    if (wj < required) {
      gain.passed = false;
      gain.witness_t = t[j];
      gain.detail = "w(t) = " + std::to_string(wj) + " < required " +
                    std::to_string(required);
    }
  }
  report.checks.push_back(gain);
  if (std::isfinite(min_w_margin)) report.min_w_margin = min_w_margin;
  return report;
}

}  // namespace rpgne
