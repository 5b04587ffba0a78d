#pragma once

#include <Eigen/Core>
#include <atomic>
#include <cstdint>
#include <vector>

#include "distboot/model.hpp"
#include "distboot/synthdata.hpp"

namespace distboot {

/// Tally of simulated master<->worker traffic. One broadcast+gather cycle
/// counts as one round and moves 2*(k-1)*d scalars (theta out, one
/// gradient back per worker); the master's own work is free.
struct CommLedger {
  std::atomic<std::uint64_t> rounds{0};
  std::atomic<std::uint64_t> scalars_sent{0};

  CommLedger() = default;
  CommLedger(const CommLedger& other)
      : rounds(other.rounds.load()), scalars_sent(other.scalars_sent.load()) {}
  CommLedger& operator=(const CommLedger& other) {
    rounds.store(other.rounds.load());
    scalars_sent.store(other.scalars_sent.load());
    return *this;
  }
};

/// In-process stand-in for a master-worker cluster: node 0 is the master
/// and owns shard 0, nodes 1..k-1 are workers. Immutable after
/// construction except for the ledger counters.
class Cluster {
 public:
  Cluster(ShardedDataset sharded, ModelSpec model)
      : sharded_(std::move(sharded)), model_(model) {}

  Cluster(const Cluster& other)
      : sharded_(other.sharded_),
        model_(other.model_),
        ledger_(other.ledger_),
        worker_reads_(other.worker_reads_.load()) {}
  Cluster(Cluster&& other) noexcept
      : sharded_(std::move(other.sharded_)),
        model_(other.model_),
        ledger_(other.ledger_),
        worker_reads_(other.worker_reads_.load()) {}

  long k() const { return sharded_.k; }
  long n() const { return sharded_.n; }
  long N() const { return sharded_.N(); }
  long dim() const { return sharded_.dim(); }
  const ModelSpec& model() const { return model_; }
  const Shard& master_shard() const { return sharded_.master(); }

  std::uint64_t rounds() const { return ledger_.rounds.load(); }
  std::uint64_t scalars_sent() const { return ledger_.scalars_sent.load(); }
  /// Instrumentation: number of worker-shard evaluations so far. Only
  /// broadcast_and_gather_gradients may move this.
  std::uint64_t worker_reads() const { return worker_reads_.load(); }

  /// One communication round: broadcast theta, gather the k local mean
  /// gradients [grad L_1(theta), ..., grad L_k(theta)].
  std::vector<Eigen::VectorXd> broadcast_and_gather_gradients(
      const Eigen::VectorXd& theta) const;

  /// Per-datum gradients on the master shard; no communication.
  std::vector<Eigen::VectorXd> master_per_datum_gradients(
      const Eigen::VectorXd& theta) const;

  /// Inverse of the master-shard mean Hessian at theta; no communication.
  Eigen::MatrixXd master_hessian_inverse(const Eigen::VectorXd& theta,
                                         double ridge = 1e-8) const;

 private:
  ShardedDataset sharded_;
  ModelSpec model_;
  mutable CommLedger ledger_;
  mutable std::atomic<std::uint64_t> worker_reads_{0};
};

}  // namespace distboot
