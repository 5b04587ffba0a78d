#include "distboot/baselines.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "distboot/parallel.hpp"

namespace distboot {

Eigen::VectorXd centralized_fit(const Dataset& data, const ModelSpec& model,
                                const SolverConfig& cfg) {
  return fit_local(model, data.as_shard(), cfg);
}

double oracle_width(const DesignSpec& spec, long N, long reps, double alpha,
                    const SeedSpec& seed, const NormFunctional& norm,
                    const SolverConfig& cfg, int threads) {
  if (reps < 1) throw std::invalid_argument("oracle_width: reps must be >= 1");
  std::vector<double> deviations(static_cast<std::size_t>(reps));
  parallel_for(reps, threads, [&](long r) {
    const Dataset data =
        sample_dataset(spec, N, seed.with(static_cast<std::uint64_t>(r)));
    const Eigen::VectorXd theta_hat = centralized_fit(data, spec.model, cfg);
    deviations[static_cast<std::size_t>(r)] =
        apply_norm(norm, theta_hat - spec.theta_star);
  });
  return 2.0 * empirical_quantile(deviations, alpha);
}

double oracle_multiplier_boot(const Dataset& data, const ModelSpec& model,
                              const Eigen::VectorXd& theta_hat, long B,
                              double alpha, const NormFunctional& norm,
                              const SeedSpec& seed, double ridge) {
  if (B < 1) throw std::invalid_argument("oracle boot: B must be >= 1");
  const long N = data.size();
  const long d = data.dim();
  const Shard pooled = data.as_shard();
  const Eigen::MatrixXd hess_inv =
      spd_inverse(shard_hessian(model, theta_hat, pooled), ridge);

  Eigen::MatrixXd grads(N, d);
  for (long i = 0; i < N; ++i) {
    grads.row(i) = gradient(model, theta_hat, data.datum(i)).transpose();
  }
  const Eigen::RowVectorXd gbar = grads.colwise().mean();
  grads.rowwise() -= gbar;

  detail::MultiplierKernel kernel;
  kernel.A = grads * (-hess_inv.transpose());
  kernel.inv_sqrt_scale = 1.0 / std::sqrt(static_cast<double>(N));

  std::vector<double> draws(static_cast<std::size_t>(B));
  Eigen::VectorXd eps(N);
  for (long b = 0; b < B; ++b) {
    Rng rng(seed.with(static_cast<std::uint64_t>(b)));
    for (long i = 0; i < N; ++i) eps(i) = rng.normal();
    draws[static_cast<std::size_t>(b)] = kernel.draw(eps, norm);
  }
  return empirical_quantile(draws, alpha);
}

OracleResult oracle_estimate(const Dataset& data, const ModelSpec& model,
                             long B, double alpha,
                             const NormFunctional& norm, const SeedSpec& seed,
                             const SolverConfig& cfg) {
  OracleResult out;
  out.theta_hat = centralized_fit(data, model, cfg);
  out.c_star = oracle_multiplier_boot(data, model, out.theta_hat, B, alpha,
                                      norm, seed, cfg.ridge);
  out.width = 2.0 * out.c_star / std::sqrt(static_cast<double>(data.size()));
  return out;
}

namespace {

// sup-norm deviation of a weighted refit from the plain local fit.
double resample_deviation(const Shard& shard, const ModelSpec& model,
                          const Eigen::VectorXd& theta_local, Rng& rng,
                          long balls, const SolverConfig& solver) {
  const std::vector<long> counts =
      multinomial_uniform_counts(balls, shard.size(), rng);
  Eigen::VectorXd weights(shard.size());
  for (long i = 0; i < shard.size(); ++i) {
    weights(i) = static_cast<double>(counts[static_cast<std::size_t>(i)]);
  }
  const Eigen::VectorXd refit =
      fit_local_weighted(model, shard, weights, solver);
  return (refit - theta_local).lpNorm<Eigen::Infinity>();
}

}  // namespace

double blb_width(const ShardedDataset& sharded, const ModelSpec& model,
                 const BlbConfig& cfg, const SeedSpec& seed,
                 const SolverConfig& solver) {
  if (cfg.r < 1) throw std::invalid_argument("blb_width: r must be >= 1");
  const long N = sharded.N();
  double width_sum = 0.0;
  for (long j = 0; j < sharded.k; ++j) {
    const Shard& shard = sharded.shards[static_cast<std::size_t>(j)];
    const Eigen::VectorXd theta_local = fit_local(model, shard, solver);
    std::vector<double> deviations(static_cast<std::size_t>(cfg.r));
    for (long b = 0; b < cfg.r; ++b) {
      Rng rng(seed.with(static_cast<std::uint64_t>(j))
                  .with(static_cast<std::uint64_t>(b)));
      deviations[static_cast<std::size_t>(b)] =
          resample_deviation(shard, model, theta_local, rng, N, solver);
    }
    width_sum += 2.0 * empirical_quantile(deviations, cfg.alpha);
  }
  return width_sum / static_cast<double>(sharded.k);
}

double sdb_width(const ShardedDataset& sharded, const ModelSpec& model,
                 double alpha, const SeedSpec& seed,
                 const SolverConfig& solver) {
  const long N = sharded.N();
  std::vector<double> pooled(static_cast<std::size_t>(sharded.k));
  for (long j = 0; j < sharded.k; ++j) {
    const Shard& shard = sharded.shards[static_cast<std::size_t>(j)];
    const Eigen::VectorXd theta_local = fit_local(model, shard, solver);
    Rng rng(seed.with(static_cast<std::uint64_t>(j)));
    pooled[static_cast<std::size_t>(j)] =
        resample_deviation(shard, model, theta_local, rng, N, solver);
  }
  return 2.0 * empirical_quantile(pooled, alpha);
}

}  // namespace distboot
