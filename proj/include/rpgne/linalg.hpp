#pragma once

#include <algorithm>
#include <cmath>

#include "rpgne/common.hpp"

namespace rpgne {

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations,
/// sorted ascending. Only the symmetric part (A + Aᵀ)/2 is used.
inline Vector symmetric_eigenvalues(const Matrix& input, double tol = 1e-14,
                                    int max_sweeps = 100) {
  detail::require(input.rows() == input.cols(),
                  "symmetric_eigenvalues: matrix must be square");
  const Index n = input.rows();
  Matrix a = 0.5 * (input + input.transpose());
  if (n == 0) return Vector();

  const double scale = std::max(a.norm(), 1.0);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= tol * scale) break;

    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        // Classic rotation angle choice (smaller root) for stability.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  Vector eig = a.diagonal();
  std::sort(eig.data(), eig.data() + eig.size());
  return eig;
}

inline double min_symmetric_eigenvalue(const Matrix& a) {
  const Vector eig = symmetric_eigenvalues(a);
  detail::require(eig.size() > 0, "min_symmetric_eigenvalue: empty matrix");
  return eig(0);
}

}  // namespace rpgne
