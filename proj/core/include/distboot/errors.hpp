#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace distboot {

/// Cholesky factorization failed even after the ridge retry.
class SingularHessianError : public std::runtime_error {
 public:
  explicit SingularHessianError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Newton solver hit the iteration cap before reaching the gradient
/// tolerance. Carries the last iterate so callers can inspect or log it.
class NoConvergenceError : public std::runtime_error {
 public:
  NoConvergenceError(const std::string& what, Eigen::VectorXd last)
      : std::runtime_error(what), last_iterate(std::move(last)) {}

  Eigen::VectorXd last_iterate;
};

}  // namespace distboot
