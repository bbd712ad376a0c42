#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rpgne/common.hpp"
#include "rpgne/game_model.hpp"
#include "rpgne/graph.hpp"
#include "rpgne/penalty.hpp"
#include "rpgne/schedules.hpp"

namespace rpgne {

/// Actions x and, for the distributed flows, the estimate matrix Y whose
/// row i is player i's estimate of the whole action profile. The diagonal
/// of Y is not independent state: it always mirrors x.
class SwarmState {
 public:
  SwarmState() = default;

  /// Full-decision state (no estimates).
  explicit SwarmState(Vector x) : x_(std::move(x)) {}

  /// Estimates are taken from `y` off the diagonal; the diagonal is
  /// overwritten with x.
  SwarmState(Vector x, Matrix y) : x_(std::move(x)), y_(std::move(y)) {
    detail::require(y_.rows() == x_.size() && y_.cols() == x_.size(),
                    "SwarmState: Y must be N x N");
    y_.diagonal() = x_;
  }

  /// Every off-diagonal estimate set to `fill`.
  static SwarmState with_estimates(const Vector& x, double fill = 0.0) {
    return SwarmState(x, Matrix::Constant(x.size(), x.size(), fill));
  }

  /// Every player's estimate equals x.
  static SwarmState at_consensus(const Vector& x) {
    return SwarmState(x, Vector::Ones(x.size()) * x.transpose());
  }

  Index size() const { return x_.size(); }
  bool has_estimates() const { return y_.size() > 0; }
  const Vector& x() const { return x_; }
  const Matrix& y() const { return y_; }

  void set_x(Vector x) {
    detail::require_size(x, x_.size(), "SwarmState::set_x");
    x_ = std::move(x);
    if (has_estimates()) y_.diagonal() = x_;
  }
  void set_estimate(Index i, Index j, double v) {
    detail::require(has_estimates(), "SwarmState: no estimates");
    detail::require(i != j, "SwarmState: Y_ii is an alias of x_i");
    y_(i, j) = v;
  }

  /// N for full-decision states, N + N(N-1) otherwise.
  Index free_dimension() const {
    return has_estimates() ? x_.size() * x_.size() : x_.size();
  }

 private:
  Vector x_;
  Matrix y_;
};

/// max_i ‖Ŷ_i‖∞ = max_{j≠i} |y_ji - x_i|: how far the estimates are from
/// the actions they track.
inline double consensus_disagreement(const SwarmState& s) {
  if (!s.has_estimates()) return 0.0;
  return (s.y() - Vector::Ones(s.size()) * s.x().transpose())
      .cwiseAbs()
      .maxCoeff();
}

namespace detail {

// Packed layout: [x (N), off-diagonal Y row-major (N(N-1))].
inline Vector pack(const SwarmState& s) {
  const Index n = s.size();
  Vector z(s.free_dimension());
  z.head(n) = s.x();
  if (s.has_estimates()) {
    Index k = n;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (i != j) z(k++) = s.y()(i, j);
  }
  return z;
}

inline void unpack_estimates(const Vector& z, Index n, Matrix& y) {
  Index k = n;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) y(i, j) = (i == j) ? z(i) : z(k++);
  }
}

inline SwarmState unpack(const Vector& z, Index n, bool estimates) {
  if (!estimates) return SwarmState(Vector(z.head(n)));
  Matrix y(n, n);
  unpack_estimates(z, n, y);
  return SwarmState(Vector(z.head(n)), std::move(y));
}

inline void pack_derivative(const Vector& dx, const Matrix& dy, Vector& dz) {
  const Index n = dx.size();
  dz.head(n) = dx;
  Index k = n;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j) dz(k++) = dy(i, j);
}

struct FrozenParams {
  double delta;
  double epsilon;
  double gamma;
  double sigma;
  double w;
};

inline FrozenParams freeze(const ScheduleSet& s, double t) {
  return {s.delta.eval(t), s.epsilon.eval(t), s.gamma.eval(t), s.sigma.eval(t),
          s.w.eval(t)};
}

// ẋ_i for one player from its own estimate row y_i (with y_ii = x_i).
inline double action_rate(const GameModel& game, const ConstraintSet& constraints,
                          const FrozenParams& p, Index i, const Vector& y_i) {
  const double xi = y_i(i);
  const double grad = game.partial_gradient(i, y_i) +
                      p.epsilon * penalty_partial(constraints, i, y_i) +
                      p.delta * xi;
  const double moved =
      constraints.boxes()[static_cast<size_t>(i)].clamp(xi - p.gamma * grad);
  return p.sigma * (moved - xi);
}

// ẏ_ij = -w Σ_k a_ik (y_ij - y_kj) for j ≠ i; reads rows of i's neighbors only.
inline void consensus_rate(const CommGraph& graph, double w, Index i,
                           const Matrix& y, Matrix& dy) {
  const Index n = graph.size();
  for (Index j = 0; j < n; ++j) {
    if (j == i) {
      dy(i, j) = 0.0;
      continue;
    }
    double acc = 0.0;
    for (Index k : graph.neighbors(i)) acc += graph.weight(i, k) * (y(i, j) - y(k, j));
    dy(i, j) = -w * acc;
  }
}

}  // namespace detail

/// ς(t)·(P_Ω[x - γ(t)Φ_δε(x)] - x) with δ = δ(t), ε = ε(t).
inline Vector full_decision_rhs(const GameModel& game,
                                const ConstraintSet& constraints,
                                const ScheduleSet& schedules, double t,
                                const Vector& x) {
  detail::require_size(x, game.n_players(), "full_decision_rhs");
  detail::require(constraints.size() == game.n_players(),
                  "full_decision_rhs: constraint set size does not match game");
  const auto p = detail::freeze(schedules, t);
  const Vector phi = detail::phi(game, constraints, p.delta, p.epsilon, x);
  return p.sigma * (project_box(constraints, x - p.gamma * phi) - x);
}

/// Player i's part of the partial-decision flow: (ẋ_i, row i of Ẏ).
/// Reads only row i of Y and the rows of i's neighbors.
inline std::pair<double, Vector> partial_decision_player_rhs(
    const GameModel& game, const ConstraintSet& constraints,
    const ScheduleSet& schedules, const CommGraph& graph, double t,
    const SwarmState& state, Index i) {
  detail::require(state.has_estimates(), "partial_decision_rhs: state has no estimates");
  detail::require(graph.size() == state.size() && game.n_players() == state.size(),
                  "partial_decision_rhs: size mismatch");
  const auto p = detail::freeze(schedules, t);
  const Vector y_i = state.y().row(i).transpose();
  Matrix dy = Matrix::Zero(state.size(), state.size());
  detail::consensus_rate(graph, p.w, i, state.y(), dy);
  const double dxi = detail::action_rate(game, constraints, p, i, y_i);
  Vector row = dy.row(i).transpose();
  row(i) = dxi;
  return {dxi, row};
}

/// ẋ_i = ς(P_Ωi[x_i - γ(∇_i f_i(y_i) + ε∇_i P(y_i) + δx_i)] - x_i),
/// ẏ_ij = -w Σ_k a_ik (y_ij - y_kj), j ≠ i.
inline SwarmState partial_decision_rhs(const GameModel& game,
                                       const ConstraintSet& constraints,
                                       const ScheduleSet& schedules,
                                       const CommGraph& graph, double t,
                                       const SwarmState& state) {
  detail::require(state.has_estimates(), "partial_decision_rhs: state has no estimates");
  const Index n = state.size();
  detail::require(graph.size() == n && game.n_players() == n &&
                      constraints.size() == n,
                  "partial_decision_rhs: size mismatch");
  const auto p = detail::freeze(schedules, t);
  Vector dx(n);
  Matrix dy(n, n);
  for (Index i = 0; i < n; ++i) {
    const Vector y_i = state.y().row(i).transpose();
    dx(i) = detail::action_rate(game, constraints, p, i, y_i);
    detail::consensus_rate(graph, p.w, i, state.y(), dy);
  }
  return SwarmState(dx, dy);
}

/// ẋ_i = -(∇_i f_i(y_i) + δ(t)x_i), ẏ_ij = -w(t) Σ_k a_ik (y_ij - y_kj).
inline SwarmState unconstrained_rhs(const GameModel& game,
                                    const ParamSchedule& delta,
                                    const ParamSchedule& w,
                                    const CommGraph& graph, double t,
                                    const SwarmState& state) {
  detail::require(state.has_estimates(), "unconstrained_rhs: state has no estimates");
  const Index n = state.size();
  detail::require(graph.size() == n && game.n_players() == n,
                  "unconstrained_rhs: size mismatch");
  const double d = delta.eval(t);
  const double wt = w.eval(t);
  Vector dx(n);
  Matrix dy(n, n);
  for (Index i = 0; i < n; ++i) {
    const Vector y_i = state.y().row(i).transpose();
    dx(i) = -(game.partial_gradient(i, y_i) + d * y_i(i));
    detail::consensus_rate(graph, wt, i, state.y(), dy);
  }
  return SwarmState(dx, dy);
}

// ---------------------------------------------------------------------------
// Integration
// ---------------------------------------------------------------------------

/// Packed right-hand side: writes d/dt of the packed state into `dz`.
using PackedRhs = std::function<void(double t, const Vector& z, Vector& dz)>;

/// A flow ready for integration.
struct Dynamics {
  Index n_players = 0;
  bool estimates = false;
  PackedRhs rhs;
  /// ς(t); required by the reparameterized integrator.
  std::optional<ParamSchedule> time_scale;
  /// Shared-constraint violation of x (0 when unconstrained).
  std::function<double(const Vector&)> violation;
};

inline Dynamics make_full_decision(GameModel game, ConstraintSet constraints,
                                   ScheduleSet schedules) {
  detail::require(constraints.size() == game.n_players(),
                  "make_full_decision: constraint set size does not match game");
  Dynamics d;
  d.n_players = game.n_players();
  d.estimates = false;
  d.time_scale = schedules.sigma;
  d.violation = [constraints](const Vector& x) {
    return constraints.shared_violation(x);
  };
  d.rhs = [game = std::move(game), constraints = std::move(constraints),
           schedules = std::move(schedules)](double t, const Vector& z, Vector& dz) {
    dz = full_decision_rhs(game, constraints, schedules, t, z);
  };
  return d;
}

inline Dynamics make_partial_decision(GameModel game, ConstraintSet constraints,
                                      ScheduleSet schedules, CommGraph graph) {
  const Index n = game.n_players();
  detail::require(constraints.size() == n && graph.size() == n,
                  "make_partial_decision: size mismatch");
  Dynamics d;
  d.n_players = n;
  d.estimates = true;
  d.time_scale = schedules.sigma;
  d.violation = [constraints](const Vector& x) {
    return constraints.shared_violation(x);
  };
  struct Work {
    Matrix y, dy;
    Vector y_i, dx;
  };
  auto work = std::make_shared<Work>(
      Work{Matrix(n, n), Matrix(n, n), Vector(n), Vector(n)});
  d.rhs = [game = std::move(game), constraints = std::move(constraints),
           schedules = std::move(schedules), graph = std::move(graph), work,
           n](double t, const Vector& z, Vector& dz) {
    const auto p = detail::freeze(schedules, t);
    detail::unpack_estimates(z, n, work->y);
    for (Index i = 0; i < n; ++i) {
      work->y_i = work->y.row(i).transpose();
      work->dx(i) = detail::action_rate(game, constraints, p, i, work->y_i);
      detail::consensus_rate(graph, p.w, i, work->y, work->dy);
    }
    dz.resize(z.size());
    detail::pack_derivative(work->dx, work->dy, dz);
  };
  return d;
}

inline Dynamics make_unconstrained(GameModel game, ParamSchedule delta,
                                   ParamSchedule w, CommGraph graph) {
  const Index n = game.n_players();
  detail::require(graph.size() == n, "make_unconstrained: size mismatch");
  Dynamics d;
  d.n_players = n;
  d.estimates = true;
  d.violation = [](const Vector&) { return 0.0; };
  struct Work {
    Matrix y, dy;
    Vector y_i, dx;
  };
  auto work = std::make_shared<Work>(
      Work{Matrix(n, n), Matrix(n, n), Vector(n), Vector(n)});
  d.rhs = [game = std::move(game), delta = std::move(delta), w = std::move(w),
           graph = std::move(graph), work, n](double t, const Vector& z, Vector& dz) {
    const double dt = delta.eval(t);
    const double wt = w.eval(t);
    detail::unpack_estimates(z, n, work->y);
    for (Index i = 0; i < n; ++i) {
      work->y_i = work->y.row(i).transpose();
      work->dx(i) = -(game.partial_gradient(i, work->y_i) + dt * work->y_i(i));
      detail::consensus_rate(graph, wt, i, work->y, work->dy);
    }
    dz.resize(z.size());
    detail::pack_derivative(work->dx, work->dy, dz);
  };
  return d;
}

struct Rk4Fixed {
  double h = 1e-3;
};

struct Rk45Adaptive {
  double rtol = 1e-6;
  double atol = 1e-8;
  double h_min = 1e-12;
  double h_max = 0.1;
};

/// Adaptive RK45 in rescaled time τ with dτ = ς(t) dt.
struct ReparamRk45 {
  double rtol = 1e-6;
  double atol = 1e-8;
  double h_min = 1e-12;
  double h_max = 0.1;
};

using IntegratorMethod = std::variant<Rk4Fixed, Rk45Adaptive, ReparamRk45>;

struct IntegratorConfig {
  IntegratorMethod method = Rk45Adaptive{};
  /// Record a sample every `sample_stride` accepted steps (plus the ends).
  long sample_stride = 1;
  /// In t for the direct methods, in τ for the reparameterized one.
  double horizon = 1.0;
  long max_steps = 200'000'000;
  /// Store Y in samples (large for big N).
  bool record_estimates = true;
};

inline void validate(const IntegratorConfig& cfg) {
  detail::require(cfg.sample_stride >= 1, "IntegratorConfig: sample_stride must be >= 1");
  detail::require(std::isfinite(cfg.horizon) && cfg.horizon > 0.0,
                  "IntegratorConfig: horizon must be > 0");
  detail::require(cfg.max_steps >= 1, "IntegratorConfig: max_steps must be >= 1");
  std::visit(
      [](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Rk4Fixed>) {
          detail::require(m.h > 0.0, "rk4: step must be > 0");
        } else {
          detail::require(m.rtol > 0.0 && m.atol > 0.0,
                          "rk45: tolerances must be > 0");
          detail::require(m.h_min > 0.0 && m.h_min <= m.h_max,
                          "rk45: need 0 < h_min <= h_max");
        }
      },
      cfg.method);
}

struct TrajectorySample {
  double t = 0.0;
  double tau = 0.0;  // equals t for the direct methods
  Vector x;
  std::optional<Matrix> y;
  std::optional<double> err_to_ref;
  double violation = 0.0;
};

struct IntegratorStats {
  long steps = 0;
  long rejected = 0;
  long rhs_evals = 0;
  double final_step = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  IntegratorStats stats;

  const TrajectorySample& final() const { return samples.back(); }
};

/// Step size fell below h_min (or the step cap was hit). Carries the
/// trajectory up to the failure.
class IntegrationFailure : public std::runtime_error {
 public:
  IntegrationFailure(const std::string& what, Trajectory partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

namespace detail {

class Integrator {
 public:
  Integrator(const Dynamics& dyn, const IntegratorConfig& cfg,
             std::optional<Vector> ref)
      : dyn_(dyn), cfg_(cfg), ref_(std::move(ref)) {}

  Trajectory run(const SwarmState& initial) {
    detail::require(initial.size() == dyn_.n_players,
                    "integrate: initial state has the wrong size");
    detail::require(initial.has_estimates() == dyn_.estimates,
                    dyn_.estimates ? "integrate: this flow needs estimates"
                                   : "integrate: this flow takes actions only");
    if (ref_) detail::require_size(*ref_, dyn_.n_players, "integrate: reference");
    reparam_ = std::holds_alternative<ReparamRk45>(cfg_.method);
    if (reparam_ && !dyn_.time_scale)
      throw InvalidArgument("integrate: reparameterized method needs a time scale");

    Vector z = pack(initial);
    if (reparam_) {
      z.conservativeResize(z.size() + 1);
      z(z.size() - 1) = 0.0;  // t(τ = 0) = 0
    }
    record(0.0, z);

    std::visit([&](const auto& m) { this->solve(m, z); }, cfg_.method);
    return std::move(traj_);
  }

 private:
  // Evaluate the field in the integration variable (t or τ).
  void field(double s, const Vector& z, Vector& dz) {
    ++traj_.stats.rhs_evals;
    if (!reparam_) {
      dz.resize(z.size());
      dyn_.rhs(s, z, dz);
      return;
    }
    const Index m = z.size() - 1;
    const double t = z(m);
    scratch_in_ = z.head(m);
    dyn_.rhs(t, scratch_in_, scratch_out_);
    const double inv = 1.0 / dyn_.time_scale->eval(t);
    dz.resize(z.size());
    dz.head(m) = scratch_out_ * inv;
    dz(m) = inv;
  }

  double physical_time(double s, const Vector& z) const {
    return reparam_ ? z(z.size() - 1) : s;
  }

  void record(double s, const Vector& z) {
    TrajectorySample sample;
    sample.tau = s;
    sample.t = physical_time(s, z);
    const Index n = dyn_.n_players;
    sample.x = z.head(n);
    if (dyn_.estimates && cfg_.record_estimates) {
      Matrix y(n, n);
      unpack_estimates(z, n, y);
      sample.y = std::move(y);
    }
    if (ref_) sample.err_to_ref = (sample.x - *ref_).lpNorm<Eigen::Infinity>();
    sample.violation = dyn_.violation ? dyn_.violation(sample.x) : 0.0;
    traj_.samples.push_back(std::move(sample));
  }

  void solve(const Rk4Fixed& m, Vector& z) {
    const double horizon = cfg_.horizon;
    const long steps = static_cast<long>(std::ceil(horizon / m.h - 1e-9));
    if (steps > cfg_.max_steps)
      throw IntegrationFailure("integrate: step cap exceeded", std::move(traj_));
    Vector k1, k2, k3, k4, tmp;
    double s = 0.0;
    for (long i = 0; i < steps; ++i) {
      const double h = (i + 1 == steps) ? horizon - s : m.h;
      field(s, z, k1);
      tmp = z + 0.5 * h * k1;
      field(s + 0.5 * h, tmp, k2);
      tmp = z + 0.5 * h * k2;
      field(s + 0.5 * h, tmp, k3);
      tmp = z + h * k3;
      field(s + h, tmp, k4);
      z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      s = (i + 1 == steps) ? horizon : s + h;
      ++traj_.stats.steps;
      traj_.stats.final_step = h;
      if (!z.allFinite())
        throw IntegrationFailure("integrate: state became non-finite", std::move(traj_));
      if ((i + 1) % cfg_.sample_stride == 0 || i + 1 == steps) record(s, z);
    }
  }

  template <typename Adaptive>
  void solve(const Adaptive& m, Vector& z) {
    // Dormand–Prince 5(4) with FSAL.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                     a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                     a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double horizon = cfg_.horizon;
    Vector k1, k2, k3, k4, k5, k6, k7, tmp, z_new, err;
    double s = 0.0;
    field(s, z, k1);

    // Initial step from the field magnitude.
    double h;
    {
      const Vector scale = (m.atol + m.rtol * z.cwiseAbs().array()).matrix();
      const double d0 = (z.cwiseQuotient(scale)).norm() / std::sqrt(double(z.size()));
      const double d1 = (k1.cwiseQuotient(scale)).norm() / std::sqrt(double(z.size()));
      h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
      h = std::clamp(h, m.h_min, std::min(m.h_max, horizon));
    }

    long accepted = 0;
    while (s < horizon) {
      if (traj_.stats.steps + traj_.stats.rejected >= cfg_.max_steps)
        throw IntegrationFailure("integrate: step cap exceeded", std::move(traj_));
      bool last = false;
      if (s + h >= horizon) {
        h = horizon - s;
        last = true;
      }
      tmp = z + h * a21 * k1;
      field(s + c2 * h, tmp, k2);
      tmp = z + h * (a31 * k1 + a32 * k2);
      field(s + c3 * h, tmp, k3);
      tmp = z + h * (a41 * k1 + a42 * k2 + a43 * k3);
      field(s + c4 * h, tmp, k4);
      tmp = z + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      field(s + c5 * h, tmp, k5);
      tmp = z + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      field(s + h, tmp, k6);
      z_new = z + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      field(s + h, z_new, k7);
      err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      double en = 0.0;
      for (Index i = 0; i < z.size(); ++i) {
        const double sc = m.atol + m.rtol * std::max(std::abs(z(i)), std::abs(z_new(i)));
        const double r = err(i) / sc;
        en += r * r;
      }
      en = std::sqrt(en / double(z.size()));

      if (std::isfinite(en) && en <= 1.0) {
        s = last ? horizon : s + h;
        z.swap(z_new);
        k1.swap(k7);
        ++traj_.stats.steps;
        ++accepted;
        traj_.stats.final_step = h;
        if (accepted % cfg_.sample_stride == 0 || s >= horizon) record(s, z);
        const double factor =
            en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
        h = std::min(h * factor, m.h_max);
      } else {
        ++traj_.stats.rejected;
        const double factor =
            std::isfinite(en) ? std::clamp(0.9 * std::pow(en, -0.25), 0.1, 0.9) : 0.1;
        h *= factor;
      }
      if (s < horizon && h < m.h_min) {
        throw IntegrationFailure(
            "integrate: step size underflow at s = " + std::to_string(s),
            std::move(traj_));
      }
    }
  }

  const Dynamics& dyn_;
  const IntegratorConfig& cfg_;
  std::optional<Vector> ref_;
  bool reparam_ = false;
  Trajectory traj_;
  Vector scratch_in_, scratch_out_;
};

}  // namespace detail

/// Integrates `dyn` from `initial` over cfg.horizon. When `ref` is given,
/// every sample carries ‖x - ref‖∞.
inline Trajectory integrate(const Dynamics& dyn, const SwarmState& initial,
                            const IntegratorConfig& cfg,
                            std::optional<Vector> ref = std::nullopt) {
  validate(cfg);
  return detail::Integrator(dyn, cfg, std::move(ref)).run(initial);
}

struct TrajectoryMetrics {
  double final_err = 0.0;
  double final_violation = 0.0;
  bool err_monotone_after_transient = false;
  /// First sample time at which the error fell to half its initial value.
  std::optional<double> transient_cutoff;
  double final_disagreement = 0.0;
};

/// Summary of a trajectory against `ref`. After the error first drops to
/// half its initial value it must never rise more than 1e-3 above its
/// running minimum for the run to count as monotone.
inline TrajectoryMetrics metrics(const Trajectory& traj,
                                 const ConstraintSet& constraints,
                                 const Vector& ref) {
  detail::require(!traj.samples.empty(), "metrics: empty trajectory");
  constexpr double kWiggle = 1e-3;
  TrajectoryMetrics out;
  std::vector<double> err;
  err.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    detail::require_size(s.x, ref.size(), "metrics: reference");
    err.push_back((s.x - ref).lpNorm<Eigen::Infinity>());
  }
  const auto& last = traj.samples.back();
  out.final_err = err.back();
  out.final_violation =
      constraints.size() == last.x.size() ? constraints.shared_violation(last.x) : 0.0;
  if (last.y) out.final_disagreement = consensus_disagreement(SwarmState(last.x, *last.y));

  size_t cut = err.size();
  for (size_t j = 0; j < err.size(); ++j) {
    if (err[j] <= 0.5 * err.front()) {
      cut = j;
      break;
    }
  }
  if (cut == err.size()) return out;
  out.transient_cutoff = traj.samples[cut].t;
  double running_min = err[cut];
  out.err_monotone_after_transient = true;
  for (size_t j = cut + 1; j < err.size(); ++j) {
    if (err[j] > running_min + kWiggle) {
      out.err_monotone_after_transient = false;
      break;
    }
    running_min = std::min(running_min, err[j]);
  }
  return out;
}

/// CSV with header t,x_1..x_N,err,violation; 17 significant digits. The
/// err column is empty when no reference was given.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  if (traj.samples.empty()) return;
  const Index n = traj.samples.front().x.size();
  os << "t";
  for (Index i = 1; i <= n; ++i) os << ",x_" << i;
  os << ",err,violation\n";
  char buf[40];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
  };
  for (const auto& s : traj.samples) {
    put(s.t);
    for (Index i = 0; i < n; ++i) {
      os << ',';
      put(s.x(i));
    }
    os << ',';
    if (s.err_to_ref) put(*s.err_to_ref);
    os << ',';
    put(s.violation);
    os << '\n';
  }
}

}  // namespace rpgne
