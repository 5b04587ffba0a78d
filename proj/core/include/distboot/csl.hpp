#pragma once

#include <Eigen/Core>
#include <vector>

#include "distboot/cluster.hpp"
#include "distboot/model.hpp"

namespace distboot {

/// State after t surrogate-Newton rounds. For t >= 1 the caches hold the
/// ingredients of the last update: the k local gradients and the master
/// inverse Hessian, both evaluated at theta_prev, with
/// theta = theta_prev - inv_hessian_at_prev * mean(grads_at_prev).
struct CslState {
  int t = 0;
  Eigen::VectorXd theta_prev;
  Eigen::VectorXd theta;
  std::vector<Eigen::VectorXd> grads_at_prev;
  Eigen::MatrixXd inv_hessian_at_prev;
};

/// Everything the bootstrap consumes: the final estimate, plus the local
/// gradients and master inverse Hessian from the last round (i.e.
/// evaluated at the (tau-1)-step iterate).
struct CslRunResult {
  Eigen::VectorXd theta;                     // tau-step estimate
  Eigen::VectorXd theta_prev;                // (tau-1)-step iterate
  std::vector<Eigen::VectorXd> shard_grads;  // at theta_prev
  Eigen::MatrixXd inv_hessian;               // at theta_prev
};

/// Round 0: fit the master shard locally. No communication.
CslState csl_init(const Cluster& cluster, const SolverConfig& cfg = {});

/// One communication round: gather gradients at the current iterate,
/// invert the master Hessian there, take the surrogate Newton step.
CslState csl_round(const CslState& state, const Cluster& cluster,
                   const SolverConfig& cfg = {});

/// Init plus tau >= 1 rounds.
CslRunResult csl_run(const Cluster& cluster, int tau,
                     const SolverConfig& cfg = {});

/// Mean of the k local gradients, i.e. the global gradient at the point
/// where they were evaluated.
Eigen::VectorXd mean_gradient(const std::vector<Eigen::VectorXd>& grads);

}  // namespace distboot
