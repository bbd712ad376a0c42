#pragma once

#include <algorithm>

#include "rpgne/common.hpp"
#include "rpgne/game_model.hpp"

namespace rpgne {

/// Quadratic penalty P(x) = Σ_k max(0, g_k(x))² with g(x) = Ax - b.
struct PenaltyEval {
  double value = 0.0;
  Vector gradient;
  Vector violation;  // max(0, g_k(x)) per row
};

inline PenaltyEval penalty_value(const Matrix& a, const Vector& b,
                                 const Vector& x) {
  detail::require(b.size() == a.rows(), "penalty_value: b must have one entry per row of A");
  detail::require_size(x, a.cols(), "penalty_value");
  PenaltyEval out;
  out.violation = (a * x - b).cwiseMax(0.0);
  out.value = out.violation.squaredNorm();
  out.gradient = 2.0 * a.transpose() * out.violation;
  return out;
}

/// ∇P(x), or zeros when there is no shared constraint.
inline Vector penalty_gradient(const ConstraintSet& constraints,
                               const Vector& x) {
  if (!constraints.has_shared()) return Vector::Zero(x.size());
  return 2.0 * constraints.a().transpose() *
         (constraints.a() * x - constraints.b()).cwiseMax(0.0);
}

/// ∂P/∂x_i at x: the i-th entry of ∇P, computed from one column of A.
inline double penalty_partial(const ConstraintSet& constraints, Index i,
                              const Vector& x) {
  if (!constraints.has_shared()) return 0.0;
  const Matrix& a = constraints.a();
  const Vector& b = constraints.b();
  double out = 0.0;
  for (Index k = 0; k < a.rows(); ++k) {
    const double aki = a(k, i);
    if (aki == 0.0) continue;
    const double g = a.row(k).dot(x) - b(k);
    if (g > 0.0) out += 2.0 * aki * g;
  }
  return out;
}

/// Componentwise clamp onto the boxes.
inline Vector project_box(const std::vector<Interval>& boxes, const Vector& v) {
  detail::require_size(v, static_cast<Index>(boxes.size()), "project_box");
  Vector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = boxes[static_cast<size_t>(i)].clamp(v(i));
  return out;
}

inline Vector project_box(const ConstraintSet& constraints, const Vector& v) {
  return project_box(constraints.boxes(), v);
}

namespace detail {

// Φ_δε without the δ > 0 precondition; the unregularized dynamics use δ = 0.
inline Vector phi(const GameModel& game, const ConstraintSet& constraints,
                  double delta, double epsilon, const Vector& x) {
  Vector out = pseudo_gradient(game, x) + delta * x;
  if (epsilon != 0.0 && constraints.has_shared())
    out += epsilon * penalty_gradient(constraints, x);
  return out;
}

}  // namespace detail

/// Φ_δε(x) = F(x) + δx + ε∇P(x). With ε = 0 this is the regularized map Φ_δ.
inline Vector regularized_penalized_map(const GameModel& game,
                                        const ConstraintSet& constraints,
                                        double delta, double epsilon,
                                        const Vector& x) {
  detail::require(delta > 0.0, "regularized_penalized_map: delta must be > 0");
  detail::require(epsilon >= 0.0, "regularized_penalized_map: epsilon must be >= 0");
  detail::require(constraints.size() == game.n_players(),
                  "regularized_penalized_map: constraint set size does not match game");
  return detail::phi(game, constraints, delta, epsilon, x);
}

}  // namespace rpgne
