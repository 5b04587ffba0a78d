#pragma once

#include <Eigen/Core>

#include "distboot/bootstrap.hpp"
#include "distboot/model.hpp"
#include "distboot/synthdata.hpp"

namespace distboot {

/// Centralized fit plus the oracle multiplier-bootstrap quantile on one
/// dataset; width is the induced region width 2 * N^{-1/2} c_star.
struct OracleResult {
  Eigen::VectorXd theta_hat;
  double width = 0.0;
  double c_star = 0.0;
};

struct BlbConfig {
  long r = 100;  // Monte-Carlo resamples per subset
  double alpha = 0.95;
};

/// The pooled empirical-loss minimizer over all N data.
Eigen::VectorXd centralized_fit(const Dataset& data, const ModelSpec& model,
                                const SolverConfig& cfg = {});

/// 2 x the alpha empirical quantile of norm(theta_hat - theta_star) over
/// `reps` fresh datasets of size N. Dataset r uses stream (seed, r), so
/// the result is identical for any thread count.
double oracle_width(const DesignSpec& spec, long N, long reps, double alpha,
                    const SeedSpec& seed,
                    const NormFunctional& norm = NormFunctional::sup(),
                    const SolverConfig& cfg = {}, int threads = 1);

/// Classical multiplier bootstrap on the pooled data: one N(0,1)
/// multiplier per datum applied to the centered per-datum gradients at
/// theta_hat, mapped through the inverse full-data Hessian. Returns the
/// alpha quantile of the B statistics; multipliers for round b come from
/// stream (seed, b) in datum order.
double oracle_multiplier_boot(const Dataset& data, const ModelSpec& model,
                              const Eigen::VectorXd& theta_hat, long B,
                              double alpha, const NormFunctional& norm,
                              const SeedSpec& seed, double ridge = 1e-8);

/// Convenience wrapper: centralized fit + oracle bootstrap quantile.
OracleResult oracle_estimate(const Dataset& data, const ModelSpec& model,
                             long B, double alpha,
                             const NormFunctional& norm, const SeedSpec& seed,
                             const SolverConfig& cfg = {});

/// Bag-of-little-bootstraps width with the k shards as the subsets: per
/// shard, r weighted refits under Multinomial(N; n) weights, a per-shard
/// width 2 * quantile(sup-norm deviations), then the mean over shards.
/// Resample (j, b) uses stream (seed, j, b). Reimplementation for width
/// comparison only.
double blb_width(const ShardedDataset& sharded, const ModelSpec& model,
                 const BlbConfig& cfg, const SeedSpec& seed,
                 const SolverConfig& solver = {});

/// Subsampled double bootstrap width: one Multinomial(N; n) resample and
/// one weighted refit per shard, deviations pooled across the k shards
/// into a single quantile. Shard j uses stream (seed, j).
/// Reimplementation for width comparison only.
double sdb_width(const ShardedDataset& sharded, const ModelSpec& model,
                 double alpha, const SeedSpec& seed,
                 const SolverConfig& solver = {});

}  // namespace distboot
