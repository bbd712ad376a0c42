#pragma once

// Test-only reference computations, written independently of the library.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracles {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Number of eigenvalues of symmetric `a` strictly below `shift`, by
// Sylvester's law of inertia on the LDLᵀ factorization of a - shift·I.
inline int count_below(const MatrixXd& a, double shift) {
  const int n = static_cast<int>(a.rows());
  MatrixXd m = 0.5 * (a + a.transpose());
  m.diagonal().array() -= shift;
  int negatives = 0;
  for (int k = 0; k < n; ++k) {
    double pivot = m(k, k);
    if (pivot == 0.0) pivot = -1e-300;  // nudge; counts as just below
    if (pivot < 0.0) ++negatives;
    for (int i = k + 1; i < n; ++i) {
      const double f = m(i, k) / pivot;
      for (int j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return negatives;
}

// All eigenvalues of a symmetric matrix by bisection on count_below.
inline std::vector<double> bisection_eigenvalues(const MatrixXd& a, double tol = 1e-13) {
  const int n = static_cast<int>(a.rows());
  const MatrixXd s = 0.5 * (a + a.transpose());
  double r = 0.0;  // Gershgorin radius bound
  for (int i = 0; i < n; ++i) r = std::max(r, s.row(i).cwiseAbs().sum());
  std::vector<double> out;
  for (int k = 0; k < n; ++k) {
    double lo = -r - 1.0, hi = r + 1.0;
    while (hi - lo > tol * std::max(1.0, std::abs(lo) + std::abs(hi))) {
      const double mid = 0.5 * (lo + hi);
      if (count_below(s, mid) > k)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

inline VectorXd central_gradient(const std::function<double(const VectorXd&)>& f,
                                 const VectorXd& x, double h = 1e-6) {
  VectorXd g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    VectorXd xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    g(i) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

// Exact Euclidean projection onto Q = [-1,1]² ∩ {a·x <= b} (assumed
// nonempty), via the clipped polygon.
struct Polygon2 {
  std::vector<Eigen::Vector2d> vertices;

  static Polygon2 clip_box(const Eigen::Vector2d& a, double b) {
    const std::vector<Eigen::Vector2d> box = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    Polygon2 p;
    for (size_t k = 0; k < box.size(); ++k) {
      const auto& u = box[k];
      const auto& v = box[(k + 1) % box.size()];
      const double gu = a.dot(u) - b, gv = a.dot(v) - b;
      if (gu <= 0.0) p.vertices.push_back(u);
      if ((gu < 0.0 && gv > 0.0) || (gu > 0.0 && gv < 0.0)) {
        const double s = gu / (gu - gv);
        p.vertices.push_back(u + s * (v - u));
      }
    }
    return p;
  }

  bool contains(const Eigen::Vector2d& x, const Eigen::Vector2d& a, double b) const {
    return std::abs(x(0)) <= 1.0 && std::abs(x(1)) <= 1.0 && a.dot(x) <= b;
  }

  Eigen::Vector2d project(const Eigen::Vector2d& x, const Eigen::Vector2d& a,
                          double b) const {
    if (contains(x, a, b)) return x;
    Eigen::Vector2d best = vertices.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < vertices.size(); ++k) {
      const auto& u = vertices[k];
      const auto& v = vertices[(k + 1) % vertices.size()];
      const Eigen::Vector2d e = v - u;
      const double len2 = e.squaredNorm();
      const double s = len2 > 0.0 ? std::clamp((x - u).dot(e) / len2, 0.0, 1.0) : 0.0;
      const Eigen::Vector2d c = u + s * e;
      const double d = (x - c).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    return best;
  }
};

// Least-norm solution of VI(Q, Mx + m) on Q = [-1,1]² ∩ {a·x <= b} by
// exhaustive search over a (2k+1)² grid: keep the points whose natural
// residual is within `slack` of the smallest one, return the least-norm one.
inline Eigen::Vector2d grid_least_norm_ve(const Eigen::Matrix2d& mm, const Eigen::Vector2d& m,
                                          const Eigen::Vector2d& a, double b, int k = 1000,
                                          double slack = 0.0) {
  const Polygon2 q = Polygon2::clip_box(a, b);
  const double h = 1.0 / k;
  std::vector<std::pair<double, Eigen::Vector2d>> pts;
  double r_min = std::numeric_limits<double>::infinity();
  for (int i = -k; i <= k; ++i) {
    for (int j = -k; j <= k; ++j) {
      const Eigen::Vector2d x(i * h, j * h);
      if (!q.contains(x, a, b)) continue;
      const Eigen::Vector2d f = mm * x + m;
      const double r = (x - q.project(x - f, a, b)).norm();
      r_min = std::min(r_min, r);
      pts.emplace_back(r, x);
    }
  }
  Eigen::Vector2d best = pts.front().second;
  double best_norm = std::numeric_limits<double>::infinity();
  for (const auto& [r, x] : pts) {
    if (r <= r_min + slack && x.norm() < best_norm) {
      best_norm = x.norm();
      best = x;
    }
  }
  return best;
}

inline MatrixXd random_symmetric(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = u(rng);
  return a;
}

}  // namespace oracles
