#pragma once

#include <vector>

#include "rpgne/common.hpp"
#include "rpgne/game_model.hpp"
#include "rpgne/graph.hpp"

namespace rpgne::builtin {

/// Five players with
///   f1 = x1² - x1x2 - x1x5,        f2 = 1.5x2² - x1x2 - x2x3 - x2x4,
///   f3 = 0.5x3² - x2x3,            f4 = 0.5x4² - x2x4,
///   f5 = 0.5x5² - x1x5.
/// M has zero row sums, so constant vectors are equilibria of F.
inline GameModel five_player_game() {
  Matrix m(5, 5);
  // clang-format off
  m <<  2, -1,  0,  0, -1,
       -1,  3, -1, -1,  0,
        0, -1,  1,  0,  0,
        0, -1,  0,  1,  0,
       -1,  0,  0,  0,  1;
  // clang-format on
  return GameModel::quadratic(m, Vector::Zero(5));
}

/// Ω_i = [-i, i]; with the shared constraint x1 + ... + x5 + 1 <= 0.
inline ConstraintSet five_player_constraints(bool with_shared = true) {
  std::vector<Interval> boxes;
  for (int i = 1; i <= 5; ++i) boxes.push_back({-double(i), double(i)});
  if (!with_shared) return ConstraintSet(std::move(boxes));
  return ConstraintSet(std::move(boxes), Matrix::Ones(1, 5),
                       Vector::Constant(1, -1.0));
}

/// Coefficients used in the connectivity-control example.
inline Vector robot_swarm_coefficients() {
  Vector a(8);
  a << 0.2, 0.2, 0.2, 0.0, 0.0, 0.6, 0.6, 0.6;
  return a;
}

/// f_i = a_i (x_i - i)² + (1 - a_i) Σ_{j∈N_i} (x_i - x_j)², with 1-based
/// targets i. Gradient row i: 2a_i(x_i - i) + 2(1 - a_i) Σ_j a_ij (x_i - x_j).
inline GameModel robot_swarm_game(const Vector& a, const CommGraph& graph) {
  const Index n = a.size();
  detail::require(graph.size() == n, "robot_swarm_game: graph size mismatch");
  for (Index i = 0; i < n; ++i)
    detail::require(a(i) >= 0.0 && a(i) <= 1.0,
                    "robot_swarm_game: coefficients must lie in [0, 1]");
  const Matrix lap = laplacian(graph);
  Matrix m = 2.0 * (Vector::Ones(n) - a).asDiagonal() * lap;
  m.diagonal() += 2.0 * a;
  Vector lin(n);
  for (Index i = 0; i < n; ++i) lin(i) = -2.0 * a(i) * double(i + 1);
  return GameModel::quadratic(m, lin);
}

/// Boxes [lo, hi] and, for every edge, both |x_i - x_j| <= max_gap rows.
inline ConstraintSet robot_swarm_constraints(const CommGraph& graph,
                                             double lo = 0.0, double hi = 10.0,
                                             double max_gap = 1.0) {
  const Index n = graph.size();
  std::vector<Interval> boxes(static_cast<size_t>(n), Interval{lo, hi});
  const auto edges = graph.edges();
  Matrix a = Matrix::Zero(2 * static_cast<Index>(edges.size()), n);
  Vector b = Vector::Constant(a.rows(), max_gap);
  Index row = 0;
  for (const auto& e : edges) {
    a(row, e.from) = 1.0;
    a(row, e.to) = -1.0;
    ++row;
    a(row, e.from) = -1.0;
    a(row, e.to) = 1.0;
    ++row;
  }
  return ConstraintSet(std::move(boxes), std::move(a), std::move(b));
}

/// f_i = Σ_{j∈N_i} a_ij (x_i - x_j)²; F(x) = 2Lx. Every consensus vector is
/// a Nash equilibrium; the least-norm one is 0.
inline GameModel consensus_game(const CommGraph& graph) {
  return GameModel::quadratic(2.0 * laplacian(graph), Vector::Zero(graph.size()));
}

}  // namespace rpgne::builtin
