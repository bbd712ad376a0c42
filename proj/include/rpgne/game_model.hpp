#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rpgne/common.hpp"
#include "rpgne/linalg.hpp"

namespace rpgne {

/// Closed interval [lo, hi] of admissible actions for one player.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return lo <= v && v <= hi; }
  double clamp(double v) const { return std::min(std::max(v, lo), hi); }
};

/// Lipschitz constants feeding the step-size schedules.
///   b1: F over the ball of the given radius,
///   b2: ∇P (global),
///   b3: per-player gradients in the estimate argument.
struct LipschitzEstimates {
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;
  double radius = 0.0;
};

/// Per-player box constraints plus an optional shared affine constraint
/// Ax - b <= 0. Boxes are nonempty and bounded; when the shared constraint
/// is present, a strict interior point is located on construction.
class ConstraintSet {
 public:
  explicit ConstraintSet(std::vector<Interval> boxes)
      : boxes_(std::move(boxes)) {
    validate_boxes(/*require_bounded=*/true);
  }

  ConstraintSet(std::vector<Interval> boxes, Matrix a, Vector b)
      : boxes_(std::move(boxes)), a_(std::move(a)), b_(std::move(b)) {
    validate_boxes(/*require_bounded=*/true);
    const Index n = static_cast<Index>(boxes_.size());
    detail::require(a_.cols() == n,
                    "ConstraintSet: A must have one column per player");
    detail::require(a_.rows() >= 1, "ConstraintSet: A must have at least one row");
    detail::require(b_.size() == a_.rows(),
                    "ConstraintSet: b must have one entry per row of A");
    detail::require(a_.allFinite() && b_.allFinite(),
                    "ConstraintSet: A and b must be finite");
    has_shared_ = true;
    find_slater_point();
  }

  /// R^N with no shared constraint (the unconstrained-game setting).
  static ConstraintSet unconstrained(Index n) {
    detail::require(n >= 1, "ConstraintSet: need at least one player");
    const double inf = std::numeric_limits<double>::infinity();
    ConstraintSet out;
    out.boxes_.assign(static_cast<size_t>(n), Interval{-inf, inf});
    out.validate_boxes(/*require_bounded=*/false);
    return out;
  }

  Index size() const { return static_cast<Index>(boxes_.size()); }
  const std::vector<Interval>& boxes() const { return boxes_; }
  bool has_shared() const { return has_shared_; }
  bool bounded() const { return bounded_; }
  const Matrix& a() const { return a_; }
  const Vector& b() const { return b_; }
  Index shared_rows() const { return has_shared_ ? a_.rows() : 0; }

  Vector lower() const {
    Vector v(size());
    for (Index i = 0; i < size(); ++i) v(i) = boxes_[static_cast<size_t>(i)].lo;
    return v;
  }
  Vector upper() const {
    Vector v(size());
    for (Index i = 0; i < size(); ++i) v(i) = boxes_[static_cast<size_t>(i)].hi;
    return v;
  }

  /// Strictly feasible point found during validation (box midpoint when
  /// there is no shared constraint).
  const Vector& slater_point() const { return slater_; }

  /// g(x) = Ax - b; empty when there is no shared constraint.
  Vector shared_value(const Vector& x) const {
    detail::require_size(x, size(), "shared_value");
    if (!has_shared_) return Vector();
    return a_ * x - b_;
  }

  /// max_k max(0, g_k(x)); zero without a shared constraint.
  double shared_violation(const Vector& x) const {
    if (!has_shared_) return 0.0;
    return std::max(0.0, shared_value(x).maxCoeff());
  }

  bool in_boxes(const Vector& x) const {
    for (Index i = 0; i < size(); ++i)
      if (!boxes_[static_cast<size_t>(i)].contains(x(i))) return false;
    return true;
  }

 private:
  ConstraintSet() = default;

  void validate_boxes(bool require_bounded) {
    detail::require(!boxes_.empty(), "ConstraintSet: need at least one player");
    bounded_ = true;
    for (const auto& box : boxes_) {
      if (std::isnan(box.lo) || std::isnan(box.hi))
        throw ValidationError("ConstraintSet: box bounds must not be NaN");
      if (box.lo > box.hi)
        throw ValidationError("ConstraintSet: empty box (lo > hi)");
      if (!std::isfinite(box.lo) || !std::isfinite(box.hi)) bounded_ = false;
    }
    if (require_bounded && !bounded_)
      throw ValidationError("ConstraintSet: boxes must be bounded");
    slater_ = Vector::Zero(size());
    if (bounded_) slater_ = 0.5 * (lower() + upper());
  }

  // Deterministic interior search: start at the box midpoint and take a
  // fixed number of projected steps on the most violated row, aiming each
  // step at a small negative level of that row.
  void find_slater_point() {
    constexpr int kSteps = 100;
    Vector x = 0.5 * (lower() + upper());
    for (int step = 0; step <= kSteps; ++step) {
      const Vector g = a_ * x - b_;
      Index k = 0;
      const double worst = g.maxCoeff(&k);
      if (worst < 0.0) {
        slater_ = x;
        return;
      }
      if (step == kSteps) break;
      const double row_norm2 = a_.row(k).squaredNorm();
      if (row_norm2 == 0.0) break;
      const double margin = 1e-3 * std::max(1.0, std::sqrt(row_norm2));
      x -= ((worst + margin) / row_norm2) * a_.row(k).transpose();
      for (Index i = 0; i < size(); ++i)
        x(i) = boxes_[static_cast<size_t>(i)].clamp(x(i));
    }
    throw ValidationError(
        "ConstraintSet: no strictly feasible point found (Slater condition)");
  }

  std::vector<Interval> boxes_;
  Matrix a_;
  Vector b_;
  bool has_shared_ = false;
  bool bounded_ = true;
  Vector slater_;
};

/// ∂f_i/∂x_i evaluated at a full action (or estimate) vector.
using PartialGradientFn = std::function<double(Index player, const Vector& x)>;

/// N scalar-action players. Either quadratic costs with affine
/// pseudo-gradient F(x) = Mx + m, or an arbitrary per-player gradient
/// callback. Immutable once built.
class GameModel {
 public:
  static GameModel quadratic(Matrix m_matrix, Vector m_vector) {
    detail::require(m_matrix.rows() >= 1, "GameModel: need at least one player");
    detail::require(m_matrix.rows() == m_matrix.cols(),
                    "GameModel: M must be square");
    detail::require(m_vector.size() == m_matrix.rows(),
                    "GameModel: m must have length N");
    detail::require(m_matrix.allFinite() && m_vector.allFinite(),
                    "GameModel: M and m must be finite");
    GameModel g;
    g.n_ = m_matrix.rows();
    g.affine_ = std::make_shared<Affine>(Affine{std::move(m_matrix),
                                                std::move(m_vector)});
    return g;
  }

  /// The callback must be deterministic. `estimates`, when given, is what
  /// lipschitz_bounds returns for this game.
  static GameModel callback(Index n, PartialGradientFn gradient,
                            std::optional<LipschitzEstimates> estimates = {}) {
    detail::require(n >= 1, "GameModel: need at least one player");
    detail::require(static_cast<bool>(gradient),
                    "GameModel: gradient callback is empty");
    GameModel g;
    g.n_ = n;
    g.callback_ = std::move(gradient);
    g.user_estimates_ = estimates;
    return g;
  }

  Index n_players() const { return n_; }
  bool is_quadratic() const { return static_cast<bool>(affine_); }
  const std::optional<LipschitzEstimates>& user_estimates() const {
    return user_estimates_;
  }

  /// ∇_{x_i} f_i(x). No size check; callers validate once.
  double partial_gradient(Index i, const Vector& x) const {
    if (affine_) return affine_->m_matrix.row(i).dot(x) + affine_->m_vector(i);
    return callback_(i, x);
  }

  const Matrix& m_matrix() const { return affine().m_matrix; }
  const Vector& m_vector() const { return affine().m_vector; }

 private:
  struct Affine {
    Matrix m_matrix;
    Vector m_vector;
  };

  const Affine& affine() const {
    if (!affine_)
      throw UnsupportedOperation(
          "affine form is only available for quadratic games");
    return *affine_;
  }

  Index n_ = 0;
  std::shared_ptr<const Affine> affine_;
  PartialGradientFn callback_;
  std::optional<LipschitzEstimates> user_estimates_;
};

/// F(x) = [∇_{x_i} f_i(x)]_i.
inline Vector pseudo_gradient(const GameModel& game, const Vector& x) {
  detail::require_size(x, game.n_players(), "pseudo_gradient");
  if (game.is_quadratic()) return game.m_matrix() * x + game.m_vector();
  Vector out(game.n_players());
  for (Index i = 0; i < game.n_players(); ++i) out(i) = game.partial_gradient(i, x);
  return out;
}

struct AffineForm {
  Matrix m_matrix;
  Vector m_vector;
};

inline AffineForm affine_form(const GameModel& game) {
  return {game.m_matrix(), game.m_vector()};
}

struct MonotonicityReport {
  bool monotone = false;
  bool strongly_monotone = false;
  double min_sym_eigenvalue = 0.0;
};

/// Classifies x ↦ Mx by the smallest eigenvalue of (M + Mᵀ)/2.
/// A negative `tol` selects the default 1e-9·‖M‖_F.
inline MonotonicityReport check_monotone(const Matrix& m, double tol = -1.0) {
  detail::require(m.rows() == m.cols() && m.rows() >= 1,
                  "check_monotone: matrix must be square and nonempty");
  if (tol < 0.0) tol = 1e-9 * m.norm();
  MonotonicityReport r;
  r.min_sym_eigenvalue = min_symmetric_eigenvalue(m);
  r.monotone = r.min_sym_eigenvalue >= -tol;
  r.strongly_monotone = r.min_sym_eigenvalue > tol;
  return r;
}

/// Closed-form Lipschitz over-estimates for quadratic games:
///   b1 = b3 = max_i ‖row_i(M)‖₂,
///   b2 = 2·max_i Σ_k |A_ki|·‖A_k‖₂  (0 without a shared constraint).
/// Affine maps make these global, so `radius` is only echoed back.
inline LipschitzEstimates lipschitz_bounds(const GameModel& game,
                                           const ConstraintSet& constraints,
                                           double radius) {
  detail::require(radius > 0.0, "lipschitz_bounds: radius must be positive");
  detail::require(constraints.size() == game.n_players(),
                  "lipschitz_bounds: constraint set size does not match game");
  if (!game.is_quadratic()) {
    if (!game.user_estimates())
      throw UnsupportedOperation(
          "lipschitz_bounds: callback games need user-supplied estimates");
    LipschitzEstimates e = *game.user_estimates();
    e.radius = radius;
    return e;
  }
  LipschitzEstimates e;
  e.b1 = game.m_matrix().rowwise().norm().maxCoeff();
  e.b3 = e.b1;
  e.b2 = 0.0;
  if (constraints.has_shared()) {
    const Matrix& a = constraints.a();
    const Vector row_norms = a.rowwise().norm();
    for (Index i = 0; i < a.cols(); ++i)
      e.b2 = std::max(e.b2, 2.0 * a.col(i).cwiseAbs().dot(row_norms));
  }
  e.radius = radius;
  return e;
}

}  // namespace rpgne
