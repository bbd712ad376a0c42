#include <gtest/gtest.h>

#include <cmath>

#include "rpgne/builtin_games.hpp"
#include "rpgne/oracle.hpp"
#include "support/property_checks.hpp"

using namespace rpgne;

TEST(SolveRegularizedVi, SinglePlayerInterior) {
  const auto g = GameModel::quadratic(Matrix::Ones(1, 1), Vector::Zero(1));
  const auto r = solve_regularized_vi(g, ConstraintSet({{-1, 1}}), 1.0, 0.0);
  EXPECT_NEAR(r.x_star(0), 0.0, 1e-8);
}

TEST(SolveRegularizedVi, SinglePlayerBoundary) {
  const auto g = GameModel::quadratic(Matrix::Ones(1, 1), Vector::Constant(1, -2.0));
  const auto r = solve_regularized_vi(g, ConstraintSet({{-1, 1}}), 0.1, 0.0);
  EXPECT_NEAR(r.x_star(0), 1.0, 1e-8);
}

// The solution is a fixed point of x ↦ P_Ω[x - Φ(x)].
TEST(SolveRegularizedVi, FivePlayerFixedPoint) {
  const auto g = builtin::five_player_game();
  const auto c = builtin::five_player_constraints();
  const auto r = solve_regularized_vi(g, c, 0.1, 20.0, 1e-11);
  const Vector phi = regularized_penalized_map(g, c, 0.1, 20.0, r.x_star);
  EXPECT_LE((r.x_star - project_box(c, r.x_star - phi)).lpNorm<Eigen::Infinity>(), 1e-9);
}

TEST(SolveRegularizedVi, RejectsNonMonotoneAndBadDelta) {
  const auto bad = GameModel::quadratic(-Matrix::Identity(2, 2), Vector::Zero(2));
  const ConstraintSet box({{-1, 1}, {-1, 1}});
  EXPECT_THROW(solve_regularized_vi(bad, box, 0.1, 0.0), ValidationError);
  const auto ok = GameModel::quadratic(Matrix::Identity(2, 2), Vector::Zero(2));
  EXPECT_THROW(solve_regularized_vi(ok, box, 0.0, 0.0), InvalidArgument);
}

TEST(SolveRegularizedVi, IterationCapReportsBestIterate) {
  const auto g = builtin::five_player_game();
  const auto c = builtin::five_player_constraints();
  try {
    solve_regularized_vi(g, c, 1e-3, 50.0, 1e-14, std::nullopt, 5);
    FAIL() << "expected ConvergenceFailure";
  } catch (const ConvergenceFailure& e) {
    EXPECT_EQ(e.best_iterate().size(), 5);
    EXPECT_EQ(e.iterations(), 5);
  }
}

TEST(LeastNormVe, FivePlayer) {
  const auto r = least_norm_ve(builtin::five_player_game(), builtin::five_player_constraints());
  EXPECT_LE((r.x_star - Vector::Constant(5, -0.2)).lpNorm<Eigen::Infinity>(), 1e-3);
  EXPECT_LE(r.residual, 1e-5);
}

TEST(LeastNormVe, FivePlayerNoShared) {
  const auto r = least_norm_ve(builtin::five_player_game(), builtin::five_player_constraints(false));
  EXPECT_LE(r.x_star.lpNorm<Eigen::Infinity>(), 1e-3);
}

// Path norms are nondecreasing as δ shrinks (Tikhonov path).
TEST(LeastNormVe, PathNormsNondecreasing) {
  const auto r = least_norm_ve(builtin::five_player_game(), builtin::five_player_constraints());
  ASSERT_GE(r.path.size(), 2u);
  for (size_t k = 1; k < r.path.size(); ++k) {
    EXPECT_LT(r.path[k].delta, r.path[k - 1].delta);
    EXPECT_GE(r.path[k].x.norm(), r.path[k - 1].x.norm() - 1e-6);
  }
}

// Every consensus vector solves the consensus game; on boxes of half-width 1
// around c the least-norm one is the projection of 0.
TEST(LeastNormVe, ConsensusGameShiftedBoxes) {
  const auto ring = CommGraph::ring(5);
  const auto g = builtin::consensus_game(ring);
  const auto r = least_norm_ve(g, ConstraintSet(std::vector<Interval>(5, {0.5, 3.0})));
  EXPECT_LE((r.x_star - Vector::Constant(5, 0.5)).lpNorm<Eigen::Infinity>(), 1e-3);
}

// For F = x - c the regularized solution is c/(1 + δ).
TEST(LeastNormVe, TikhonovPathHasClosedForm) {
  Vector c(2);
  c << 0.4, -0.3;
  const auto g = GameModel::quadratic(Matrix::Identity(2, 2), -c);
  const auto r = least_norm_ve(g, ConstraintSet({{-1, 1}, {-1, 1}}), 1e-8);
  for (const auto& p : r.path)
    EXPECT_LE((p.x - c / (1.0 + p.delta)).lpNorm<Eigen::Infinity>(), 1e-7) << "delta " << p.delta;
  EXPECT_LE((r.x_star - c).lpNorm<Eigen::Infinity>(), 1e-6);
}

TEST(LeastNormVe, RobotSwarmOnRing) {
  const auto ring = CommGraph::ring(8);
  const auto r = least_norm_ve(
      builtin::robot_swarm_game(builtin::robot_swarm_coefficients(), ring),
      builtin::robot_swarm_constraints(ring));
  Vector printed(8);
  printed << 5.4018, 4.7259, 4.7316, 5.1702, 5.6088, 6.0473, 6.5569, 6.4018;
  const double gap = (r.x_star - printed).lpNorm<Eigen::Infinity>();
  RecordProperty("gap_to_printed_values", std::to_string(gap));
  EXPECT_LE(r.residual, 1e-5);
  // Same ordering shape as the printed values whatever the topology.
  EXPECT_GT(r.x_star(6), r.x_star(1));
}

TEST(LeastNormVe, NonMonotoneRejected) {
  const auto g = GameModel::quadratic(-Matrix::Identity(1, 1), Vector::Zero(1));
  EXPECT_THROW(least_norm_ve(g, ConstraintSet({{-1, 1}})), ValidationError);
}

TEST(ProjectFeasible, Examples) {
  const auto c = builtin::five_player_constraints();
  const Vector inside = Vector::Constant(5, -0.5);
  EXPECT_LE((project_feasible(c, inside) - inside).norm(), 1e-15);

  std::vector<Interval> unit(5, {-1, 1});
  const ConstraintSet q(unit, Matrix::Ones(1, 5), Vector::Constant(1, -1.0));
  EXPECT_LE((project_feasible(q, Vector::Zero(5)) - Vector::Constant(5, -0.2)).lpNorm<Eigen::Infinity>(),
            1e-12);

  // Single halfspace x <= 0 inside a wide box: 3 -> 0.
  const ConstraintSet half({{-1e6, 1e6}}, Matrix::Ones(1, 1), Vector::Zero(1));
  EXPECT_NEAR(project_feasible(half, Vector::Constant(1, 3.0))(0), 0.0, 1e-12);
}

// Dykstra output satisfies the variational characterization against
// random feasible points.
TEST(ProjectFeasible, VariationalCharacterization) {
  const auto ring = CommGraph::ring(8);
  const auto c = builtin::robot_swarm_constraints(ring);
  std::mt19937 rng(17);
  for (int k = 0; k < 200; ++k) {
    const Vector v = props::random_vector(rng, 8, 15.0);
    const Vector p = project_feasible(c, v);
    ASSERT_GE(p.minCoeff(), -1e-9);
    ASSERT_LE(p.maxCoeff(), 10.0 + 1e-9);
    ASSERT_LE(c.shared_violation(p), 1e-9);
    const Vector f = project_feasible(c, props::random_vector(rng, 8, 15.0));
    ASSERT_GE((f - p).dot(p - v), -1e-7) << "pair " << k;
  }
}

TEST(KktResidual, Examples) {
  const auto g = builtin::five_player_game();
  const auto c = builtin::five_player_constraints();
  EXPECT_LE(kkt_residual(g, c, Vector::Constant(5, -0.2)), 1e-6);
  EXPECT_GT(kkt_residual(g, c, Vector::Zero(5)), 0.1);
  EXPECT_EQ(kkt_residual(g, c, Vector::Constant(5, -0.5)), 0.0);
}

TEST(Property, OracleMatchesGrid) {
  const auto r = props::oracle_matches_grid();
  EXPECT_TRUE(r.passed) << r.detail;
}
