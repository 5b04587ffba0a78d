#pragma once

#include <Eigen/Core>
#include <vector>

#include "distboot/errors.hpp"

namespace distboot {

enum class ModelFamily { Linear, Logistic };

/// Which loss family is in play. Linear is squared error /2; Logistic is
/// -y*b + log(1+exp(b)) with b = x'theta.
struct ModelSpec {
  ModelFamily family = ModelFamily::Linear;
};

/// One observation: covariate vector and scalar response
/// (y in {0,1} for the logistic family).
struct Datum {
  Eigen::VectorXd x;
  double y = 0.0;
};

/// One machine's local data, stored densely: row i of X pairs with y(i).
struct Shard {
  Eigen::MatrixXd X;  // n x d
  Eigen::VectorXd y;  // n

  long size() const { return X.rows(); }
  long dim() const { return X.cols(); }
  Datum datum(long i) const { return Datum{X.row(i).transpose(), y(i)}; }
};

struct SolverConfig {
  int max_newton_iters = 50;
  double grad_tol = 1e-10;
  // Diagonal regularizer, applied only when the Cholesky factorization
  // fails; ridge = 0 disables the retry.
  double ridge = 1e-8;
};

/// log(1 + exp(b)) without overflow for large |b|.
double log1p_exp(double b);

double sigmoid(double b);

double loss(const ModelSpec& model, const Eigen::VectorXd& theta,
            const Datum& z);

Eigen::VectorXd gradient(const ModelSpec& model, const Eigen::VectorXd& theta,
                         const Datum& z);

Eigen::MatrixXd hessian(const ModelSpec& model, const Eigen::VectorXd& theta,
                        const Datum& z);

/// Mean loss over a shard.
double shard_loss(const ModelSpec& model, const Eigen::VectorXd& theta,
                  const Shard& shard);

/// Mean per-datum gradient over a shard.
Eigen::VectorXd shard_gradient(const ModelSpec& model,
                               const Eigen::VectorXd& theta,
                               const Shard& shard);

/// Mean per-datum Hessian over a shard; symmetric PSD by construction.
Eigen::MatrixXd shard_hessian(const ModelSpec& model,
                              const Eigen::VectorXd& theta,
                              const Shard& shard);

/// Solves H * x = b by Cholesky; on factorization failure retries once
/// with +ridge*I, then throws SingularHessianError.
Eigen::VectorXd spd_solve(const Eigen::MatrixXd& H, const Eigen::VectorXd& b,
                          double ridge);

/// Inverse of an SPD matrix under the same ridge-retry policy.
Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& H, double ridge);

/// Local empirical-loss minimizer on one shard. Linear: exact normal
/// equations. Logistic: damped Newton to ||shard_gradient||_inf <= grad_tol.
Eigen::VectorXd fit_local(const ModelSpec& model, const Shard& shard,
                          const SolverConfig& cfg = {});

/// Weighted variant used by the resampling baselines: minimizes
/// sum_i w_i * L(theta; z_i) with w_i >= 0. Weights are normalized by
/// their sum internally, so weight vectors on a count scale are fine.
Eigen::VectorXd fit_local_weighted(const ModelSpec& model, const Shard& shard,
                                   const Eigen::VectorXd& weights,
                                   const SolverConfig& cfg = {});

}  // namespace distboot
