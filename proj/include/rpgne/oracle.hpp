#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "rpgne/common.hpp"
#include "rpgne/game_model.hpp"
#include "rpgne/penalty.hpp"

// Independent verification solvers. Nothing here touches the dynamics.

namespace rpgne {

struct PathEntry {
  double delta = 0.0;
  std::optional<double> epsilon;  // empty on the exact-feasible-set path
  Vector x;
};

struct OracleResult {
  Vector x_star;
  double residual = 0.0;
  long iterations = 0;
  std::vector<PathEntry> path;
};

/// Euclidean projection onto Q = Ω ∩ {Ax <= b} by Dykstra's method, cycling
/// through the box and each halfspace. Stops when one full cycle moves the
/// iterate by at most `tol` (∞-norm).
inline Vector project_feasible(const ConstraintSet& constraints, const Vector& v,
                               double tol = 1e-12, long max_cycles = 200000) {
  detail::require_size(v, constraints.size(), "project_feasible");
  detail::require(tol > 0.0, "project_feasible: tol must be > 0");
  detail::require(detail::all_finite(v), "project_feasible: v must be finite");
  if (!constraints.has_shared()) return project_box(constraints, v);

  const Matrix& a = constraints.a();
  const Vector& b = constraints.b();
  const Index rows = a.rows();
  const Vector row_norm2 = a.rowwise().squaredNorm();

  Vector x = v;
  Vector p_box = Vector::Zero(v.size());
  Matrix p_half = Matrix::Zero(v.size(), rows);
  Vector y(v.size()), prev(v.size());

  for (long cycle = 0; cycle < max_cycles; ++cycle) {
    prev = x;
    y = x + p_box;
    x = project_box(constraints, y);
    p_box = y - x;
    for (Index k = 0; k < rows; ++k) {
      if (row_norm2(k) == 0.0) continue;
      y = x + p_half.col(k);
      const double g = a.row(k).dot(y) - b(k);
      x = y;
      if (g > 0.0) x -= (g / row_norm2(k)) * a.row(k).transpose();
      p_half.col(k) = y - x;
    }
    if ((x - prev).lpNorm<Eigen::Infinity>() <= tol) return x;
  }
  throw ConvergenceFailure("project_feasible: cycle cap exceeded", x,
                           (x - prev).lpNorm<Eigen::Infinity>(), max_cycles);
}

/// Natural-map residual ‖x - P_Q[x - F(x)]‖∞.
inline double kkt_residual(const GameModel& game, const ConstraintSet& constraints,
                           const Vector& x, double tol = 1e-12) {
  detail::require(detail::all_finite(x), "kkt_residual: x must be finite");
  const Vector fx = pseudo_gradient(game, x);
  return (x - project_feasible(constraints, x - fx, tol)).lpNorm<Eigen::Infinity>();
}

namespace detail {

inline void require_monotone(const GameModel& game, const char* where) {
  if (game.is_quadratic() && !check_monotone(game.m_matrix()).monotone)
    throw ValidationError(std::string(where) + ": pseudo-gradient is not monotone");
}

inline double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return std::sqrt(std::max(0.0, symmetric_eigenvalues(m.transpose() * m).maxCoeff()));
}

// Global Lipschitz constant of F + δx + ε∇P.
inline double map_lipschitz(const GameModel& game, const ConstraintSet& constraints,
                            double delta, double epsilon) {
  if (game.is_quadratic()) {
    const double a_norm = constraints.has_shared() ? spectral_norm(constraints.a()) : 0.0;
    return spectral_norm(game.m_matrix()) + delta + 2.0 * epsilon * a_norm * a_norm;
  }
  const auto est = lipschitz_bounds(game, constraints, 1.0);
  const double rn = std::sqrt(double(game.n_players()));
  return rn * est.b1 + rn * est.b2 * epsilon + delta;
}

// Extragradient for VI(S, G): y = P(x - sG(x)), x+ = P(x - sG(y)). Stops when
// ‖x+ - x‖₂/s <= tol.
template <typename Map, typename Proj>
OracleResult extragradient(const Map& g, const Proj& proj, Vector x, double step,
                           double tol, long max_iter, const char* where) {
  OracleResult out;
  Vector y, x_next;
  double res = std::numeric_limits<double>::infinity();
  x = proj(x);
  for (long it = 1; it <= max_iter; ++it) {
    y = proj(x - step * g(x));
    x_next = proj(x - step * g(y));
    res = (x_next - x).norm() / step;
    x.swap(x_next);
    if (!x.allFinite())
      throw ConvergenceFailure(std::string(where) + ": iterate became non-finite",
                               x, res, it);
    if (res <= tol) {
      out.x_star = x;
      out.residual = res;
      out.iterations = it;
      return out;
    }
  }
  throw ConvergenceFailure(std::string(where) + ": iteration cap exceeded", x, res,
                           max_iter);
}

}  // namespace detail

/// Unique solution x_t* of VI(Ω, Φ_δε) (boxes only; the shared constraint
/// enters through the penalty).
inline OracleResult solve_regularized_vi(const GameModel& game,
                                         const ConstraintSet& constraints,
                                         double delta, double epsilon,
                                         double tol = 1e-9,
                                         std::optional<Vector> x0 = std::nullopt,
                                         long max_iter = 1'000'000) {
  detail::require(delta > 0.0, "solve_regularized_vi: delta must be > 0");
  detail::require(epsilon >= 0.0, "solve_regularized_vi: epsilon must be >= 0");
  detail::require(tol > 0.0, "solve_regularized_vi: tol must be > 0");
  detail::require(constraints.size() == game.n_players(),
                  "solve_regularized_vi: constraint set size does not match game");
  detail::require_monotone(game, "solve_regularized_vi");
  const Vector start = x0 ? *x0 : constraints.slater_point();
  detail::require_size(start, game.n_players(), "solve_regularized_vi: x0");

  const double step = 0.9 / detail::map_lipschitz(game, constraints, delta, epsilon);
  auto g = [&](const Vector& x) {
    return detail::phi(game, constraints, delta, epsilon, x);
  };
  auto proj = [&](const Vector& x) { return project_box(constraints, x); };
  return detail::extragradient(g, proj, start, step, tol, max_iter,
                               "solve_regularized_vi");
}

struct PathConfig {
  double delta0 = 1.0;
  double rho = 0.5;
  long max_steps = 60;
  long inner_max_iter = 1'000'000;
  double projection_tol = 1e-13;
};

/// Least-norm solution of VI(Q, F), followed along the Tikhonov path
/// VI(Q, F + δ_k x), δ_k = δ₀ρ^k, each solve warm-started from the last.
/// Done when ‖x_{k+1} - x_k‖∞ <= tol and the natural-map residual is at
/// most 10·tol.
inline OracleResult least_norm_ve(const GameModel& game,
                                  const ConstraintSet& constraints,
                                  double tol = 1e-6, const PathConfig& cfg = {}) {
  detail::require(tol > 0.0, "least_norm_ve: tol must be > 0");
  detail::require(cfg.delta0 > 0.0 && cfg.rho > 0.0 && cfg.rho < 1.0,
                  "least_norm_ve: need delta0 > 0 and rho in (0, 1)");
  detail::require(cfg.max_steps >= 2, "least_norm_ve: need at least two path steps");
  detail::require(constraints.size() == game.n_players(),
                  "least_norm_ve: constraint set size does not match game");
  detail::require_monotone(game, "least_norm_ve");

  const double l_f = detail::map_lipschitz(game, constraints, 0.0, 0.0);
  auto proj = [&](const Vector& x) {
    return project_feasible(constraints, x, cfg.projection_tol);
  };

  OracleResult out;
  Vector x = proj(constraints.slater_point());
  std::optional<Vector> prev;
  double delta = cfg.delta0;
  double last_kkt = std::numeric_limits<double>::infinity();
  double last_move = std::numeric_limits<double>::infinity();

  for (long k = 0; k < cfg.max_steps; ++k, delta *= cfg.rho) {
    auto g = [&](const Vector& z) { return Vector(pseudo_gradient(game, z) + delta * z); };
    // Inner accuracy tightens with δ so the path increments dominate the
    // solve error.
    const double inner_tol = 0.1 * tol * std::min(1.0, delta);
    auto inner = detail::extragradient(g, proj, x, 0.9 / (l_f + delta), inner_tol,
                                       cfg.inner_max_iter, "least_norm_ve");
    out.iterations += inner.iterations;
    x = inner.x_star;
    out.path.push_back({delta, std::nullopt, x});
    if (prev) {
      last_move = (x - *prev).lpNorm<Eigen::Infinity>();
      if (last_move <= tol) {
        last_kkt = kkt_residual(game, constraints, x, cfg.projection_tol);
        if (last_kkt <= 10.0 * tol) {
          out.x_star = x;
          out.residual = last_kkt;
          return out;
        }
      }
    }
    prev = x;
  }
  throw ConvergenceFailure(
      "least_norm_ve: path not Cauchy after " + std::to_string(cfg.max_steps) +
          " continuation steps (last move " + std::to_string(last_move) +
          ", last kkt " + std::to_string(last_kkt) + ")",
      x, last_move, out.iterations);
}

}  // namespace rpgne
