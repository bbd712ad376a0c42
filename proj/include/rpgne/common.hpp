#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>

namespace rpgne {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Dimension mismatch, out-of-range parameter, malformed input.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested operation has no meaning for this kind of object
/// (e.g. the affine form of a callback game).
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Construction-time validation failed (Slater point not found, graph
/// disconnected, empty box, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver hit its cap. Carries the best iterate found.
class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& what, Vector best, double residual,
                     long iterations)
      : std::runtime_error(what),
        best_(std::move(best)),
        residual_(residual),
        iterations_(iterations) {}

  const Vector& best_iterate() const { return best_; }
  double residual() const { return residual_; }
  long iterations() const { return iterations_; }

 private:
  Vector best_;
  double residual_;
  long iterations_;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

inline void require_size(const Vector& v, Index n, const char* what) {
  if (v.size() != n) {
    throw InvalidArgument(std::string(what) + ": expected length " +
                          std::to_string(n) + ", got " +
                          std::to_string(v.size()));
  }
}

inline bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace detail

}  // namespace rpgne
