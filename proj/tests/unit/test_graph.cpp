#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rpgne/graph.hpp"
#include "rpgne/linalg.hpp"
#include "support/oracles.hpp"
#include "support/property_checks.hpp"

using namespace rpgne;

TEST(Laplacian, TwoNodes) {
  Matrix expect(2, 2);
  expect << 1, -1, -1, 1;
  EXPECT_EQ(laplacian(CommGraph::path(2)), expect);
}

TEST(Laplacian, Path3) {
  Matrix expect(3, 3);
  expect << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  EXPECT_EQ(laplacian(CommGraph::path(3)), expect);
}

TEST(Laplacian, WeightedEdges) {
  const auto g = CommGraph::from_edges(3, {{0, 1, 2.0}, {1, 2, 0.5}});
  Matrix expect(3, 3);
  expect << 2, -2, 0, -2, 2.5, -0.5, 0, -0.5, 0.5;
  EXPECT_EQ(laplacian(g), expect);
}

TEST(ReducedConsensusMatrix, Path3) {
  const auto g = CommGraph::path(3);
  EXPECT_EQ(reduced_consensus_matrix(g, 1), Matrix::Identity(2, 2));
  Matrix expect(2, 2);
  expect << 2, -1, -1, 1;
  EXPECT_EQ(reduced_consensus_matrix(g, 0), expect);
}

TEST(ReducedConsensusMatrix, K2) {
  const auto m = reduced_consensus_matrix(CommGraph::complete(2), 0);
  ASSERT_EQ(m.rows(), 1);
  EXPECT_EQ(m(0, 0), 1.0);
}

TEST(LambdaMinAll, Examples) {
  EXPECT_NEAR(lambda_min_all(CommGraph::path(3)), (3.0 - std::sqrt(5.0)) / 2.0, 1e-9);
  EXPECT_NEAR(lambda_min_all(CommGraph::complete(2)), 1.0, 1e-12);
}

TEST(LambdaMinAll, Ring5AgainstBisection) {
  const auto g = CommGraph::ring(5);
  double expect = 1e300;
  for (Index i = 0; i < 5; ++i) {
    const auto ev = oracles::bisection_eigenvalues(reduced_consensus_matrix(g, i));
    expect = std::min(expect, ev.front());
  }
  EXPECT_NEAR(lambda_min_all(g), expect, 1e-9);
  EXPECT_GT(expect, 0.0);
}

// Connected random graphs: a spanning tree plus random extra edges.
TEST(LambdaMinAll, RandomConnectedGraphsPositive) {
  std::mt19937 rng(21);
  for (int k = 0; k < 100; ++k) {
    const Index n = 2 + k % 9;
    std::vector<Edge> edges;
    std::uniform_real_distribution<double> w(0.1, 3.0), coin(0.0, 1.0);
    for (Index i = 1; i < n; ++i)
      edges.push_back({std::uniform_int_distribution<Index>(0, i - 1)(rng), i, w(rng)});
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        if (coin(rng) < 0.2 &&
            std::none_of(edges.begin(), edges.end(), [&](const Edge& e) {
              return (e.from == i && e.to == j) || (e.from == j && e.to == i);
            }))
          edges.push_back({i, j, w(rng)});
    const auto g = CommGraph::from_edges(n, edges);
    const double lmin = lambda_min_all(g);
    ASSERT_GT(lmin, 0.0) << "graph " << k;
    double expect = 1e300;
    for (Index i = 0; i < n; ++i)
      expect = std::min(expect, oracles::bisection_eigenvalues(reduced_consensus_matrix(g, i)).front());
    ASSERT_NEAR(lmin, expect, 1e-9 * std::max(1.0, expect)) << "graph " << k;
  }
}

TEST(SymmetricEigenvalues, JacobiAgainstBisection) {
  std::mt19937 rng(3);
  for (int k = 0; k < 200; ++k) {
    const int n = 1 + k % 8;
    const Matrix a = oracles::random_symmetric(rng, n);
    Vector ev = symmetric_eigenvalues(a);
    std::sort(ev.data(), ev.data() + ev.size());
    const auto ref = oracles::bisection_eigenvalues(a);
    for (int i = 0; i < n; ++i) ASSERT_NEAR(ev(i), ref[size_t(i)], 1e-9) << "matrix " << k;
  }
}

TEST(IsConnected, Examples) {
  EXPECT_TRUE(is_connected(CommGraph::path(4)));
  EXPECT_TRUE(is_connected(CommGraph::ring(5)));
  EXPECT_FALSE(is_connected(Matrix(Matrix::Zero(2, 2))));
  EXPECT_THROW(CommGraph::from_edges(3, {{0, 1, 1.0}}), ValidationError);
}

TEST(CommGraph, ValidationErrors) {
  Matrix asym(2, 2);
  asym << 0, 1, 2, 0;
  EXPECT_THROW(CommGraph{asym}, ValidationError);
  Matrix neg(2, 2);
  neg << 0, -1, -1, 0;
  EXPECT_THROW(CommGraph{neg}, ValidationError);
  EXPECT_THROW(CommGraph::named("star:4"), InvalidArgument);
}

TEST(CommGraph, NamedSpecs) {
  EXPECT_EQ(CommGraph::named("ring:5").weights(), CommGraph::ring(5).weights());
  EXPECT_EQ(CommGraph::named("path:3").weights(), CommGraph::path(3).weights());
  EXPECT_EQ(CommGraph::named("complete:4").edges().size(), 6u);
  const auto n = CommGraph::ring(8).neighbors(0);
  EXPECT_EQ(n, (std::vector<Index>{1, 7}));
}

TEST(Property, Path3LambdaMin) {
  const auto r = props::path3_lambda_min();
  EXPECT_TRUE(r.passed) << r.detail;
}
