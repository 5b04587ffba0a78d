// Microbenchmarks for the kernels the experiment harness leans on.

#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "distboot/baselines.hpp"
#include "distboot/bootstrap.hpp"
#include "distboot/cluster.hpp"
#include "distboot/csl.hpp"
#include "distboot/synthdata.hpp"

using namespace distboot;

namespace {

DesignSpec make_design(long d, ModelFamily family) {
  DesignSpec spec;
  spec.d = d;
  spec.cov = CovKind::Toeplitz;
  spec.model.family = family;
  spec.theta_star = draw_theta_star(d, SeedSpec{1, {}});
  return spec;
}

void BM_SampleDataset(benchmark::State& state) {
  const DesignSpec spec = make_design(8, ModelFamily::Linear);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sample_dataset(spec, state.range(0), SeedSpec{2, {rep++}}));
  }
}
BENCHMARK(BM_SampleDataset)->Arg(1 << 12)->Arg(1 << 14);

void BM_ShardGradient(benchmark::State& state) {
  const DesignSpec spec = make_design(8, ModelFamily::Logistic);
  const Dataset data = sample_dataset(spec, state.range(0), SeedSpec{3, {}});
  const Shard shard = data.as_shard();
  const Eigen::VectorXd theta = Eigen::VectorXd::Zero(8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shard_gradient(spec.model, theta, shard));
  }
}
BENCHMARK(BM_ShardGradient)->Arg(1 << 10)->Arg(1 << 13);

void BM_FitLinear(benchmark::State& state) {
  const DesignSpec spec = make_design(8, ModelFamily::Linear);
  const Dataset data = sample_dataset(spec, state.range(0), SeedSpec{4, {}});
  const Shard shard = data.as_shard();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_local(spec.model, shard));
  }
}
BENCHMARK(BM_FitLinear)->Arg(1 << 10)->Arg(1 << 13);

void BM_FitLogistic(benchmark::State& state) {
  const DesignSpec spec = make_design(8, ModelFamily::Logistic);
  const Dataset data = sample_dataset(spec, state.range(0), SeedSpec{5, {}});
  const Shard shard = data.as_shard();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_local(spec.model, shard));
  }
}
BENCHMARK(BM_FitLogistic)->Arg(1 << 10)->Arg(1 << 12);

void BM_CslRound(benchmark::State& state) {
  const DesignSpec spec = make_design(8, ModelFamily::Linear);
  const Dataset data = sample_dataset(spec, 1 << 13, SeedSpec{6, {}});
  const Cluster cluster(shard(data, state.range(0)), spec.model);
  const CslState init = csl_init(cluster);
  for (auto _ : state) {
    benchmark::DoNotOptimize(csl_round(init, cluster));
  }
}
BENCHMARK(BM_CslRound)->Arg(8)->Arg(128);

void BM_DistBoots(benchmark::State& state) {
  const long k = state.range(0);
  const bool nk1 = state.range(1) != 0;
  const DesignSpec spec = make_design(8, ModelFamily::Linear);
  const Dataset data = sample_dataset(spec, 1 << 13, SeedSpec{7, {}});
  const Cluster cluster(shard(data, k), spec.model);
  const CslRunResult run = csl_run(cluster, 1);
  const std::vector<Eigen::VectorXd> master_grads =
      nk1 ? cluster.master_per_datum_gradients(run.theta_prev)
          : std::vector<Eigen::VectorXd>{};
  const long n = (1 << 13) / k;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        dist_boots(nk1 ? BootMethod::NK1Grad : BootMethod::KGrad, run.theta,
                   run.shard_grads, master_grads, run.inv_hessian, n, 500,
                   0.95, NormFunctional::sup(), SeedSpec{8, {}}));
  }
}
BENCHMARK(BM_DistBoots)
    ->Args({16, 0})
    ->Args({512, 0})
    ->Args({16, 1})
    ->Args({512, 1});

void BM_MultinomialCounts(benchmark::State& state) {
  Rng rng(9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        multinomial_uniform_counts(1 << 14, state.range(0), rng));
  }
}
BENCHMARK(BM_MultinomialCounts)->Arg(32)->Arg(2048);

void BM_BlbWidth(benchmark::State& state) {
  const DesignSpec spec = make_design(8, ModelFamily::Linear);
  const Dataset data = sample_dataset(spec, 1 << 12, SeedSpec{10, {}});
  const ShardedDataset sharded = shard(data, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        blb_width(sharded, spec.model, BlbConfig{20, 0.95}, SeedSpec{11, {}}));
  }
}
BENCHMARK(BM_BlbWidth)->Arg(4)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
