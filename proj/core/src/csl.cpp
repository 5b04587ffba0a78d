#include "distboot/csl.hpp"

#include <stdexcept>

namespace distboot {

Eigen::VectorXd mean_gradient(const std::vector<Eigen::VectorXd>& grads) {
  if (grads.empty()) throw std::invalid_argument("mean_gradient: empty list");
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(grads.front().size());
  for (const auto& g : grads) sum += g;
  return sum / static_cast<double>(grads.size());
}

CslState csl_init(const Cluster& cluster, const SolverConfig& cfg) {
  CslState state;
  state.t = 0;
  state.theta = fit_local(cluster.model(), cluster.master_shard(), cfg);
  return state;
}

CslState csl_round(const CslState& state, const Cluster& cluster,
                   const SolverConfig& cfg) {
  const Eigen::VectorXd& at = state.theta;
  CslState next;
  next.t = state.t + 1;
  next.theta_prev = at;
  next.grads_at_prev = cluster.broadcast_and_gather_gradients(at);
  next.inv_hessian_at_prev = cluster.master_hessian_inverse(at, cfg.ridge);
  next.theta =
      at - next.inv_hessian_at_prev * mean_gradient(next.grads_at_prev);
  return next;
}

CslRunResult csl_run(const Cluster& cluster, int tau,
                     const SolverConfig& cfg) {
  if (tau < 1) throw std::invalid_argument("csl_run: tau must be >= 1");
  CslState state = csl_init(cluster, cfg);
  for (int t = 0; t < tau; ++t) state = csl_round(state, cluster, cfg);
  return CslRunResult{state.theta, state.theta_prev, state.grads_at_prev,
                      state.inv_hessian_at_prev};
}

}  // namespace distboot
