#include "distboot/cluster.hpp"

namespace distboot {

std::vector<Eigen::VectorXd> Cluster::broadcast_and_gather_gradients(
    const Eigen::VectorXd& theta) const {
  std::vector<Eigen::VectorXd> grads;
  grads.reserve(static_cast<std::size_t>(k()));
  for (long j = 0; j < k(); ++j) {
    if (j > 0) worker_reads_.fetch_add(1);
    grads.push_back(shard_gradient(model_, theta, sharded_.shards[j]));
  }
  ledger_.rounds.fetch_add(1);
  ledger_.scalars_sent.fetch_add(
      2 * static_cast<std::uint64_t>(k() - 1) *
      static_cast<std::uint64_t>(dim()));
  return grads;
}

std::vector<Eigen::VectorXd> Cluster::master_per_datum_gradients(
    const Eigen::VectorXd& theta) const {
  const Shard& master = sharded_.master();
  std::vector<Eigen::VectorXd> grads;
  grads.reserve(static_cast<std::size_t>(master.size()));
  for (long i = 0; i < master.size(); ++i) {
    grads.push_back(gradient(model_, theta, master.datum(i)));
  }
  return grads;
}

Eigen::MatrixXd Cluster::master_hessian_inverse(const Eigen::VectorXd& theta,
                                                double ridge) const {
  return spd_inverse(shard_hessian(model_, theta, sharded_.master()), ridge);
}

}  // namespace distboot
