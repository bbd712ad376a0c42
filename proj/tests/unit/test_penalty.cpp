#include <gtest/gtest.h>

#include "rpgne/builtin_games.hpp"
#include "rpgne/penalty.hpp"
#include "support/property_checks.hpp"

using namespace rpgne;

namespace {

const Matrix kOnes = Matrix::Ones(1, 5);
const Vector kMinusOne = Vector::Constant(1, -1.0);

}  // namespace

TEST(PenaltyValue, OnTheBoundary) {
  const auto p = penalty_value(kOnes, kMinusOne, Vector::Constant(5, -0.2));
  EXPECT_NEAR(p.value, 0.0, 1e-30);
  EXPECT_LE(p.gradient.lpNorm<Eigen::Infinity>(), 1e-15);
}

TEST(PenaltyValue, AtOrigin) {
  const auto p = penalty_value(kOnes, kMinusOne, Vector::Zero(5));
  EXPECT_DOUBLE_EQ(p.value, 1.0);
  EXPECT_EQ(p.gradient, Vector::Constant(5, 2.0));
  EXPECT_DOUBLE_EQ(p.violation(0), 1.0);
}

TEST(PenaltyValue, StrictInterior) {
  const auto p = penalty_value(kOnes, kMinusOne, Vector::Constant(5, -1.0));
  EXPECT_EQ(p.value, 0.0);
  EXPECT_EQ(p.gradient, Vector::Zero(5));
}

TEST(PenaltyValue, DimensionMismatch) {
  EXPECT_THROW(penalty_value(kOnes, kMinusOne, Vector::Zero(4)), InvalidArgument);
  EXPECT_THROW(penalty_value(kOnes, Vector::Zero(2), Vector::Zero(5)), InvalidArgument);
}

TEST(PenaltyPartial, MatchesGradient) {
  const auto cons = builtin::robot_swarm_constraints(CommGraph::ring(8));
  std::mt19937 rng(9);
  for (int k = 0; k < 50; ++k) {
    const Vector x = props::random_vector(rng, 8, 6.0);
    const Vector g = penalty_gradient(cons, x);
    for (Index i = 0; i < 8; ++i) EXPECT_NEAR(penalty_partial(cons, i, x), g(i), 1e-12);
  }
}

TEST(ProjectBox, Examples) {
  EXPECT_EQ(project_box(std::vector<Interval>{{-1, 1}}, Vector::Constant(1, 3.0))(0), 1.0);
  Vector inside(3);
  inside << 0.5, -0.25, 0.0;
  EXPECT_EQ(project_box(std::vector<Interval>(3, {-1, 1}), inside), inside);

  Vector v(5), expect(5);
  v << 3, 0, 2, 0, 0;
  expect << 1, 0, 2, 0, 0;
  EXPECT_EQ(project_box(builtin::five_player_constraints(), v), expect);
}

TEST(Phi, AtEquilibriumIsDeltaX) {
  const auto g = builtin::five_player_game();
  const auto c = builtin::five_player_constraints();
  const Vector x = Vector::Constant(5, -0.2);
  for (double eps : {0.0, 1.0, 1e4}) {
    const Vector phi = regularized_penalized_map(g, c, 0.3, eps, x);
    EXPECT_LE((phi - 0.3 * x).lpNorm<Eigen::Infinity>(), 1e-12);
  }
}

TEST(Phi, ZeroAtOrigin) {
  const auto g = builtin::five_player_game();
  const auto c = builtin::five_player_constraints(false);
  EXPECT_EQ(regularized_penalized_map(g, c, 1.0, 0.0, Vector::Zero(5)), Vector::Zero(5));
}

TEST(Phi, SinglePlayerHandValue) {
  const auto g = GameModel::quadratic(Matrix::Ones(1, 1), Vector::Constant(1, -2.0));
  const ConstraintSet box({{-1, 1}});
  EXPECT_NEAR(regularized_penalized_map(g, box, 0.1, 0.0, Vector::Ones(1))(0), -0.9, 1e-15);
}

TEST(Phi, PreconditionsEnforced) {
  const auto g = builtin::five_player_game();
  const auto c = builtin::five_player_constraints();
  EXPECT_THROW(regularized_penalized_map(g, c, 0.0, 1.0, Vector::Zero(5)), InvalidArgument);
  EXPECT_THROW(regularized_penalized_map(g, c, 1.0, -1.0, Vector::Zero(5)), InvalidArgument);
}

TEST(Property, ProjectionProperties) {
  const auto r = props::projection_properties();
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Property, PenaltyGradientMatchesFiniteDifferences) {
  const auto r = props::penalty_gradient_matches_fd();
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Property, PhiStronglyMonotone) {
  const auto r = props::phi_strongly_monotone();
  EXPECT_TRUE(r.passed) << r.detail;
}
