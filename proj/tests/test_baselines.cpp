#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "distboot/baselines.hpp"
#include "distboot/csl.hpp"
#include "distboot/cluster.hpp"
#include "test_util.hpp"

using namespace distboot;

namespace {

DesignSpec make_spec(long d, ModelFamily family, CovKind cov,
                     std::uint64_t seed, double noise_sd = 1.0) {
  DesignSpec spec;
  spec.d = d;
  spec.cov = cov;
  spec.model.family = family;
  spec.theta_star = draw_theta_star(d, SeedSpec{seed, {}});
  spec.noise_sd = noise_sd;
  return spec;
}

}  // namespace

TEST_CASE("centralized fit zeroes the pooled gradient") {
  const DesignSpec lin = make_spec(3, ModelFamily::Linear, CovKind::Toeplitz, 1);
  const Dataset data = sample_dataset(lin, 200, SeedSpec{2, {}});
  const Eigen::VectorXd theta = centralized_fit(data, lin.model);
  CHECK(shard_gradient(lin.model, theta, data.as_shard())
            .lpNorm<Eigen::Infinity>() < 1e-10);
  // Same op as a one-shard local fit.
  CHECK(theta == fit_local(lin.model, data.as_shard()));

  const DesignSpec logit =
      make_spec(2, ModelFamily::Logistic, CovKind::Toeplitz, 3);
  const Dataset bdata = sample_dataset(logit, 500, SeedSpec{4, {}});
  const Eigen::VectorXd btheta = centralized_fit(bdata, logit.model);
  CHECK(shard_gradient(logit.model, btheta, bdata.as_shard())
            .lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("oracle width: degenerate noise collapses to zero") {
  const DesignSpec spec =
      make_spec(2, ModelFamily::Linear, CovKind::Identity, 5, 1e-12);
  const double width =
      oracle_width(spec, 64, 50, 0.95, SeedSpec{6, {}});
  CHECK(width >= 0.0);
  CHECK(width < 1e-9);
}

TEST_CASE("oracle width is deterministic and scales like 1/sqrt(N)") {
  const DesignSpec spec =
      make_spec(2, ModelFamily::Linear, CovKind::Toeplitz, 7);
  const SeedSpec seed{8, {}};
  const double w1 = oracle_width(spec, 512, 300, 0.95, seed);
  CHECK(w1 == oracle_width(spec, 512, 300, 0.95, seed));
  // Same streams under 4 threads.
  CHECK(w1 == oracle_width(spec, 512, 300, 0.95, seed,
                           NormFunctional::sup(), SolverConfig{}, 4));
  const double w2 = oracle_width(spec, 1024, 300, 0.95, seed);
  const double ratio = w2 / w1;
  CHECK(ratio > 0.707 - 0.12);
  CHECK(ratio < 0.707 + 0.12);
}

TEST_CASE("oracle multiplier boot: identical data give zero quantile") {
  Dataset data;
  data.X.resize(8, 2);
  data.y.resize(8);
  for (long i = 0; i < 8; ++i) {
    data.X.row(i) << 1.0, -2.0;
    data.y(i) = 0.5;
  }
  Eigen::VectorXd theta(2);
  theta << 0.1, 0.2;
  // Identical data: per-datum gradients all equal their mean, so every
  // centered term vanishes (the rank-1 Hessian needs the ridge retry).
  const double c = oracle_multiplier_boot(
      data, ModelSpec{ModelFamily::Linear}, theta, 32, 0.95,
      NormFunctional::sup(), SeedSpec{9, {}});
  CHECK(c < 1e-14);
}

TEST_CASE("oracle boot equals the k=1 nk1grad pipeline with shared "
          "multipliers") {
  const DesignSpec spec =
      make_spec(2, ModelFamily::Linear, CovKind::Toeplitz, 10);
  const Dataset data = sample_dataset(spec, 64, SeedSpec{11, {}});
  const ModelSpec model = spec.model;
  const Eigen::VectorXd theta_hat = centralized_fit(data, model);

  const SeedSpec boots{12, {}};
  const long B = 100;
  const double c_star = oracle_multiplier_boot(
      data, model, theta_hat, B, 0.95, NormFunctional::sup(), boots);

  // k = 1 pipeline on the same data with Theta = full-data inverse
  // Hessian and the same multiplier streams.
  const Shard pooled = data.as_shard();
  const Eigen::MatrixXd hess_inv =
      spd_inverse(shard_hessian(model, theta_hat, pooled), 1e-8);
  std::vector<Eigen::VectorXd> master_grads;
  for (long i = 0; i < data.size(); ++i) {
    master_grads.push_back(gradient(model, theta_hat, data.datum(i)));
  }
  const std::vector<Eigen::VectorXd> shard_grads{
      shard_gradient(model, theta_hat, pooled)};
  const BootstrapSummary s =
      dist_boots(BootMethod::NK1Grad, theta_hat, shard_grads, master_grads,
                 hess_inv, data.size(), B, 0.95, NormFunctional::sup(),
                 boots);
  CHECK(std::abs(s.c_alpha - c_star) <= 1e-12);
}

TEST_CASE("oracle boot quantile is scale-equivariant through the Hessian") {
  const DesignSpec spec =
      make_spec(2, ModelFamily::Linear, CovKind::Toeplitz, 13);
  const Dataset data = sample_dataset(spec, 32, SeedSpec{14, {}});
  const Eigen::VectorXd theta_hat = centralized_fit(data, spec.model);
  const SeedSpec seed{15, {}};
  const double base =
      oracle_multiplier_boot(data, spec.model, theta_hat, 64, 0.9,
                             NormFunctional::sup(), seed);
  CHECK(base > 0.0);
  // Scaling the data scales H^{-1} by 1/4 exactly (powers of two), so
  // the statistic scales accordingly: verify via a scaled-theta route.
  Dataset doubled = data;
  doubled.X *= 2.0;
  doubled.y *= 2.0;
  const Eigen::VectorXd theta_same = theta_hat;  // same minimizer
  const double scaled =
      oracle_multiplier_boot(doubled, spec.model, theta_same, 64, 0.9,
                             NormFunctional::sup(), seed);
  // gradients scale by 4, H^{-1} by 1/4: statistic unchanged.
  CHECK(scaled == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("oracle estimate bundles fit, quantile, and width") {
  const DesignSpec spec =
      make_spec(2, ModelFamily::Linear, CovKind::Toeplitz, 16);
  const Dataset data = sample_dataset(spec, 128, SeedSpec{17, {}});
  const OracleResult res = oracle_estimate(data, spec.model, 50, 0.95,
                                           NormFunctional::sup(),
                                           SeedSpec{18, {}});
  CHECK(res.width >= 0.0);
  CHECK(res.width ==
        doctest::Approx(2.0 * res.c_star / std::sqrt(128.0)).epsilon(1e-15));
  CHECK(shard_gradient(spec.model, res.theta_hat, data.as_shard())
            .lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("oracle multiplier boot covers theta_star about 95% of the time") {
  const DesignSpec spec =
      make_spec(2, ModelFamily::Linear, CovKind::Toeplitz, 19);
  const long N = 1024;
  const long reps = 400;
  long covered = 0;
  for (long r = 0; r < reps; ++r) {
    const Dataset data = sample_dataset(
        spec, N, SeedSpec{20, {static_cast<std::uint64_t>(r)}});
    const OracleResult res = oracle_estimate(
        data, spec.model, 300, 0.95, NormFunctional::sup(),
        SeedSpec{21, {static_cast<std::uint64_t>(r)}});
    covered += covers(spec.theta_star, res.theta_hat, res.c_star, N,
                      NormFunctional::sup())
                   ? 1
                   : 0;
  }
  const double coverage = static_cast<double>(covered) / reps;
  CHECK(coverage > 0.92);
  CHECK(coverage < 0.98);
}

TEST_CASE("blb width is deterministic and positive") {
  const DesignSpec spec =
      make_spec(3, ModelFamily::Linear, CovKind::Toeplitz, 22);
  const Dataset data = sample_dataset(spec, 256, SeedSpec{23, {}});
  const ShardedDataset sharded = shard(data, 4);
  const BlbConfig cfg{50, 0.95};
  const double a = blb_width(sharded, spec.model, cfg, SeedSpec{24, {}});
  const double b = blb_width(sharded, spec.model, cfg, SeedSpec{24, {}});
  CHECK(a == b);
  CHECK(a > 0.0);
  CHECK(blb_width(sharded, spec.model, cfg, SeedSpec{25, {}}) != a);
}

TEST_CASE("sdb width pools one deviation per shard") {
  const DesignSpec spec =
      make_spec(2, ModelFamily::Linear, CovKind::Toeplitz, 26);
  const Dataset data = sample_dataset(spec, 128, SeedSpec{27, {}});

  // k = 1: the quantile of a single pooled value is that value.
  const ShardedDataset solo = shard(data, 1);
  const SeedSpec seed{28, {}};
  const double w = sdb_width(solo, spec.model, 0.95, seed);
  const Eigen::VectorXd theta_local = fit_local(spec.model, solo.master());
  Rng rng(seed.with(0));
  const auto counts = multinomial_uniform_counts(128, 128, rng);
  Eigen::VectorXd weights(128);
  for (long i = 0; i < 128; ++i) {
    weights(i) = static_cast<double>(counts[static_cast<std::size_t>(i)]);
  }
  const Eigen::VectorXd refit =
      fit_local_weighted(spec.model, solo.master(), weights);
  CHECK(w == doctest::Approx(2.0 * (refit - theta_local)
                                       .lpNorm<Eigen::Infinity>())
                 .epsilon(1e-15));

  const ShardedDataset four = shard(data, 4);
  CHECK(sdb_width(four, spec.model, 0.95, seed) ==
        sdb_width(four, spec.model, 0.95, seed));
}
