#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>

#include "distboot/synthdata.hpp"

using namespace distboot;

TEST_CASE("covariance matrices match their definitions") {
  const Eigen::MatrixXd toep = build_covariance(CovKind::Toeplitz, 2);
  CHECK(toep(0, 0) == 1.0);
  CHECK(toep(0, 1) == 0.9);
  CHECK(toep(1, 0) == 0.9);
  CHECK(toep(1, 1) == 1.0);

  const Eigen::MatrixXd eq = build_covariance(CovKind::EquiCorr, 3);
  for (long i = 0; i < 3; ++i) {
    for (long j = 0; j < 3; ++j) {
      CHECK(eq(i, j) == (i == j ? 1.0 : 0.8));
    }
  }

  CHECK(build_covariance(CovKind::Identity, 5)
            .isApprox(Eigen::MatrixXd::Identity(5, 5)));
  CHECK_THROWS_AS(build_covariance(CovKind::Toeplitz, 0),
                  std::invalid_argument);
}

TEST_CASE("covariances are symmetric and Cholesky-factorizable up to d=128") {
  for (long d : {1L, 2L, 17L, 64L, 128L}) {
    for (CovKind cov :
         {CovKind::Toeplitz, CovKind::EquiCorr, CovKind::Identity}) {
      const Eigen::MatrixXd sigma = build_covariance(cov, d);
      CHECK((sigma - sigma.transpose()).lpNorm<Eigen::Infinity>() == 0.0);
      Eigen::LLT<Eigen::MatrixXd> llt(sigma);
      CHECK(llt.info() == Eigen::Success);
    }
  }
}

TEST_CASE("theta_star draws are deterministic and inside the box") {
  const SeedSpec seed{12, {}};
  const Eigen::VectorXd a = draw_theta_star(6, seed);
  const Eigen::VectorXd b = draw_theta_star(6, seed);
  CHECK(a == b);
  for (long i = 0; i < a.size(); ++i) {
    CHECK(a(i) >= -0.5);
    CHECK(a(i) <= 0.5);
  }
  CHECK(draw_theta_star(6, SeedSpec{13, {}}) != a);
}

TEST_CASE("theta_star sample mean obeys the CLT") {
  const long m = 100000;
  double sum = 0.0;
  for (long r = 0; r < m; ++r) {
    sum += draw_theta_star(1, SeedSpec{99, {static_cast<std::uint64_t>(r)}})(0);
  }
  const double mean = sum / static_cast<double>(m);
  const double se = std::sqrt(1.0 / 12.0 / static_cast<double>(m));
  CHECK(std::abs(mean) < 3.0 * se);
}

namespace {

DesignSpec linear_spec(long d, CovKind cov, double noise_sd) {
  DesignSpec spec;
  spec.d = d;
  spec.cov = cov;
  spec.model.family = ModelFamily::Linear;
  spec.theta_star = draw_theta_star(d, SeedSpec{3, {}});
  spec.noise_sd = noise_sd;
  return spec;
}

}  // namespace

TEST_CASE("degenerate noise gives exact linear responses") {
  const DesignSpec spec = linear_spec(3, CovKind::Identity, 0.0);
  const Dataset data = sample_dataset(spec, 50, SeedSpec{4, {}});
  for (long i = 0; i < data.size(); ++i) {
    CHECK(data.y(i) == data.X.row(i).dot(spec.theta_star));
  }
}

TEST_CASE("sampling is bit-reproducible") {
  const DesignSpec spec = linear_spec(4, CovKind::Toeplitz, 1.0);
  const Dataset a = sample_dataset(spec, 100, SeedSpec{5, {}});
  const Dataset b = sample_dataset(spec, 100, SeedSpec{5, {}});
  CHECK(a.X == b.X);
  CHECK(a.y == b.y);
  const Dataset c = sample_dataset(spec, 100, SeedSpec{6, {}});
  CHECK(a.X != c.X);
}

TEST_CASE("empirical covariance matches Toeplitz entrywise") {
  const long m = 100000;
  const long d = 4;
  const DesignSpec spec = linear_spec(d, CovKind::Toeplitz, 1.0);
  const Dataset data = sample_dataset(spec, m, SeedSpec{7, {}});
  const Eigen::MatrixXd sigma = build_covariance(CovKind::Toeplitz, d);
  // Mean is zero by construction; use raw second moments. The Monte-Carlo
  // standard error of each entry comes from the sample variance of the
  // products x_a * x_b.
  for (long a = 0; a < d; ++a) {
    for (long b = a; b < d; ++b) {
      const Eigen::ArrayXd prod =
          data.X.col(a).array() * data.X.col(b).array();
      const double mean = prod.mean();
      const double var = (prod - mean).square().sum() / (m - 1);
      const double se = std::sqrt(var / m);
      CHECK(std::abs(mean - sigma(a, b)) < 3.0 * se);
    }
  }
}

TEST_CASE("logistic responses at theta_star = 0 are balanced") {
  DesignSpec spec;
  spec.d = 2;
  spec.cov = CovKind::Toeplitz;
  spec.model.family = ModelFamily::Logistic;
  spec.theta_star = Eigen::VectorXd::Zero(2);
  const long m = 100000;
  const Dataset data = sample_dataset(spec, m, SeedSpec{8, {}});
  for (long i = 0; i < 20; ++i) {
    CHECK((data.y(i) == 0.0 || data.y(i) == 1.0));
  }
  const double mean = data.y.mean();
  CHECK(std::abs(mean - 0.5) < 3.0 * std::sqrt(0.25 / m));
}

TEST_CASE("sharding splits into contiguous equal blocks") {
  Dataset data;
  data.X.resize(4, 1);
  data.X << 1, 2, 3, 4;
  data.y.resize(4);
  data.y << 10, 20, 30, 40;

  const ShardedDataset two = shard(data, 2);
  CHECK(two.n == 2);
  CHECK(two.k == 2);
  CHECK(two.N() == 4);
  CHECK(two.shards[0].X(0, 0) == 1);
  CHECK(two.shards[0].X(1, 0) == 2);
  CHECK(two.shards[1].X(0, 0) == 3);
  CHECK(two.shards[1].y(1) == 40);

  const ShardedDataset one = shard(data, 1);
  CHECK(one.k == 1);
  CHECK(one.master().X == data.X);

  const ShardedDataset singletons = shard(data, 4);
  CHECK(singletons.n == 1);
  CHECK(singletons.shards[3].y(0) == 40);

  CHECK_THROWS_AS(shard(data, 3), std::invalid_argument);
}

TEST_CASE("dataset CSV round trip") {
  const DesignSpec spec = linear_spec(3, CovKind::EquiCorr, 1.0);
  const Dataset data = sample_dataset(spec, 25, SeedSpec{44, {}});
  const std::string path = "/tmp/distboot_test_dataset.csv";
  dataset_write_csv(data, path);
  const Dataset back = dataset_read_csv(path);
  REQUIRE(back.size() == data.size());
  REQUIRE(back.dim() == data.dim());
  CHECK(back.X == data.X);
  CHECK(back.y == data.y);
  std::remove(path.c_str());
}
