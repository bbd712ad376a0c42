#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "rpgne/common.hpp"
#include "rpgne/linalg.hpp"

namespace rpgne {

/// Undirected weighted edge between 0-based nodes.
struct Edge {
  Index from;
  Index to;
  double weight = 1.0;
};

/// Returns true when every node is reachable from node 0 over edges with
/// positive weight. An empty or single-node graph is connected.
inline bool is_connected(const Matrix& weights) {
  const Index n = weights.rows();
  if (n <= 1) return true;
  std::vector<bool> seen(static_cast<size_t>(n), false);
  std::queue<Index> frontier;
  frontier.push(0);
  seen[0] = true;
  Index reached = 1;
  while (!frontier.empty()) {
    const Index i = frontier.front();
    frontier.pop();
    for (Index j = 0; j < n; ++j) {
      if (!seen[static_cast<size_t>(j)] && weights(i, j) > 0.0) {
        seen[static_cast<size_t>(j)] = true;
        ++reached;
        frontier.push(j);
      }
    }
  }
  return reached == n;
}

/// Undirected, connected communication graph with nonnegative weights.
class CommGraph {
 public:
  explicit CommGraph(Matrix weights) : weights_(std::move(weights)) {
    detail::require(weights_.rows() == weights_.cols(),
                    "CommGraph: weight matrix must be square");
    detail::require(weights_.rows() >= 1, "CommGraph: need at least one node");
    const Index n = weights_.rows();
    for (Index i = 0; i < n; ++i) {
      if (weights_(i, i) != 0.0)
        throw ValidationError("CommGraph: diagonal weights must be zero");
      for (Index j = 0; j < n; ++j) {
        const double w = weights_(i, j);
        if (!std::isfinite(w) || w < 0.0)
          throw ValidationError("CommGraph: weights must be finite and >= 0");
        if (w != weights_(j, i))
          throw ValidationError("CommGraph: weight matrix must be symmetric");
      }
    }
    if (!rpgne::is_connected(weights_))
      throw ValidationError("CommGraph: graph is not connected");
    neighbors_.resize(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (weights_(i, j) > 0.0) neighbors_[static_cast<size_t>(i)].push_back(j);
  }

  static CommGraph from_edges(Index n, const std::vector<Edge>& edges) {
    detail::require(n >= 1, "CommGraph: need at least one node");
    Matrix w = Matrix::Zero(n, n);
    for (const auto& e : edges) {
      detail::require(e.from >= 0 && e.from < n && e.to >= 0 && e.to < n,
                      "CommGraph: edge endpoint out of range");
      detail::require(e.from != e.to, "CommGraph: self-loops are not allowed");
      detail::require(e.weight > 0.0, "CommGraph: edge weights must be > 0");
      w(e.from, e.to) = e.weight;
      w(e.to, e.from) = e.weight;
    }
    return CommGraph(std::move(w));
  }

  static CommGraph ring(Index n) {
    detail::require(n >= 2, "ring graph needs at least 2 nodes");
    std::vector<Edge> edges;
    for (Index i = 0; i < n; ++i) {
      const Index j = (i + 1) % n;
      if (n == 2 && i == 1) break;
      edges.push_back({i, j, 1.0});
    }
    return from_edges(n, edges);
  }

  static CommGraph path(Index n) {
    detail::require(n >= 1, "path graph needs at least 1 node");
    std::vector<Edge> edges;
    for (Index i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
    return from_edges(n, edges);
  }

  static CommGraph complete(Index n) {
    detail::require(n >= 1, "complete graph needs at least 1 node");
    Matrix w = Matrix::Ones(n, n);
    w.diagonal().setZero();
    return CommGraph(std::move(w));
  }

  /// Parses "ring:N", "path:N" or "complete:N".
  static CommGraph named(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos)
      throw InvalidArgument("graph name must look like kind:N, got '" +
                            std::string(spec) + "'");
    const std::string kind(spec.substr(0, colon));
    long n = 0;
    try {
      size_t used = 0;
      const std::string count(spec.substr(colon + 1));
      n = std::stol(count, &used);
      if (used != count.size()) throw InvalidArgument("trailing characters");
    } catch (const std::exception&) {
      throw InvalidArgument("bad node count in graph name '" +
                            std::string(spec) + "'");
    }
    if (kind == "ring") return ring(n);
    if (kind == "path") return path(n);
    if (kind == "complete") return complete(n);
    throw InvalidArgument("unknown graph kind '" + kind + "'");
  }

  Index size() const { return weights_.rows(); }
  const Matrix& weights() const { return weights_; }
  double weight(Index i, Index j) const { return weights_(i, j); }
  const std::vector<Index>& neighbors(Index i) const {
    return neighbors_[static_cast<size_t>(i)];
  }

  /// Undirected edges (i < j) with their weights.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Index i = 0; i < size(); ++i)
      for (Index j = i + 1; j < size(); ++j)
        if (weights_(i, j) > 0.0) out.push_back({i, j, weights_(i, j)});
    return out;
  }

 private:
  Matrix weights_;
  std::vector<std::vector<Index>> neighbors_;
};

inline bool is_connected(const CommGraph& g) {
  return is_connected(g.weights());
}

/// L = D - A.
inline Matrix laplacian(const CommGraph& g) {
  const Matrix& a = g.weights();
  Matrix l = -a;
  l.diagonal() = a.rowwise().sum();
  return l;
}

/// L_i + B_i: Laplacian of the subgraph on V \ {i} plus diag(a_ji), j != i.
inline Matrix reduced_consensus_matrix(const CommGraph& g, Index i) {
  const Index n = g.size();
  detail::require(i >= 0 && i < n, "reduced_consensus_matrix: bad player index");
  detail::require(n >= 2, "reduced_consensus_matrix: need at least 2 nodes");
  std::vector<Index> keep;
  for (Index j = 0; j < n; ++j)
    if (j != i) keep.push_back(j);
  const Index m = n - 1;
  Matrix out = Matrix::Zero(m, m);
  for (Index r = 0; r < m; ++r) {
    double degree = 0.0;
    for (Index c = 0; c < m; ++c) {
      if (r == c) continue;
      const double w = g.weight(keep[static_cast<size_t>(r)],
                                keep[static_cast<size_t>(c)]);
      out(r, c) = -w;
      degree += w;
    }
    out(r, r) = degree + g.weight(keep[static_cast<size_t>(r)], i);
  }
  return out;
}

/// min_i λ_min(L_i + B_i); strictly positive on connected graphs.
inline double lambda_min_all(const CommGraph& g) {
  detail::require(g.size() >= 2, "lambda_min_all: need at least 2 nodes");
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < g.size(); ++i)
    best = std::min(best, min_symmetric_eigenvalue(reduced_consensus_matrix(g, i)));
  return best;
}

}  // namespace rpgne
