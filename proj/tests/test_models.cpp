#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "distboot/model.hpp"
#include "distboot/rng.hpp"
#include "distboot/synthdata.hpp"
#include "test_util.hpp"

using namespace distboot;

namespace {

const ModelSpec kLinear{ModelFamily::Linear};
const ModelSpec kLogistic{ModelFamily::Logistic};

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

// Independent least-squares route: QR on the stacked system rather than
// the normal equations the solver uses.
Eigen::VectorXd qr_least_squares(const Shard& shard) {
  return shard.X.colPivHouseholderQr().solve(shard.y);
}

// Plain gradient descent with backtracking, as a slow reference
// minimizer for the logistic fit.
Eigen::VectorXd gd_minimize(const ModelSpec& model, const Shard& shard,
                            int iters) {
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(shard.dim());
  double step = 1.0;
  for (int it = 0; it < iters; ++it) {
    const Eigen::VectorXd g = shard_gradient(model, theta, shard);
    const double f0 = shard_loss(model, theta, shard);
    while (step > 1e-12 &&
           shard_loss(model, theta - step * g, shard) > f0) {
      step *= 0.5;
    }
    theta -= step * g;
    step *= 2.0;
  }
  return theta;
}

}  // namespace

TEST_CASE("pointwise loss values") {
  CHECK(loss(kLinear, vec2(0, 0), Datum{vec2(1, 2), 3.0}) ==
        doctest::Approx(4.5).epsilon(1e-15));

  Eigen::VectorXd one(1);
  one << 0.0;
  CHECK(loss(kLogistic, one, Datum{Eigen::VectorXd::Ones(1), 0.0}) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));

  // g(1, 1) = -1 + log(1 + e).
  const double expected = -1.0 + std::log(1.0 + std::exp(1.0));
  CHECK(loss(kLogistic, vec2(2, 1), Datum{vec2(1, -1), 1.0}) ==
        doctest::Approx(expected).epsilon(1e-15));
  CHECK(expected == doctest::Approx(0.31326).epsilon(1e-4));
}

TEST_CASE("loss rejects dimension mismatch") {
  CHECK_THROWS_AS(loss(kLinear, vec2(0, 0), Datum{Eigen::VectorXd::Ones(3), 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(gradient(kLinear, vec2(0, 0), Datum{Eigen::VectorXd::Ones(1), 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(hessian(kLogistic, vec2(0, 0), Datum{Eigen::VectorXd::Ones(4), 1.0}),
                  std::invalid_argument);
}

TEST_CASE("gradient values") {
  const Eigen::VectorXd g =
      gradient(kLinear, vec2(0, 0), Datum{vec2(1, 2), 3.0});
  CHECK(g(0) == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(g(1) == doctest::Approx(-6.0).epsilon(1e-15));

  const Eigen::VectorXd gl =
      gradient(kLogistic, vec2(0, 0), Datum{vec2(1, -1), 1.0});
  CHECK(gl(0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(gl(1) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("hessian values") {
  const Eigen::MatrixXd H = hessian(kLinear, vec2(0, 0), Datum{vec2(1, 2), 3.0});
  CHECK(H(0, 0) == 1.0);
  CHECK(H(0, 1) == 2.0);
  CHECK(H(1, 0) == 2.0);
  CHECK(H(1, 1) == 4.0);

  Eigen::VectorXd z1(1);
  z1 << 0.0;
  const Eigen::MatrixXd Hl =
      hessian(kLogistic, z1, Datum{Eigen::VectorXd::Ones(1), 0.0});
  CHECK(Hl(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("gradient and hessian match central differences") {
  Rng rng(101);
  for (const ModelSpec& model : {kLinear, kLogistic}) {
    const bool binary = model.family == ModelFamily::Logistic;
    for (int rep = 0; rep < 20; ++rep) {
      const Datum z = testutil::random_datum(4, rng, binary);
      const Eigen::VectorXd theta = 0.5 * testutil::random_vector(4, rng);
      const Eigen::VectorXd g = gradient(model, theta, z);
      const Eigen::VectorXd g_fd = testutil::fd_gradient(model, theta, z);
      const double gref = std::max(1e-8, g_fd.norm());
      CHECK((g - g_fd).norm() / gref < 1e-6);

      const Eigen::MatrixXd H = hessian(model, theta, z);
      const Eigen::MatrixXd H_fd = testutil::fd_hessian(model, theta, z);
      const double href = std::max(1e-8, H_fd.norm());
      CHECK((H - H_fd).norm() / href < 1e-6);
    }
  }
}

TEST_CASE("logistic loss is convex along segments") {
  Rng rng(33);
  for (int rep = 0; rep < 50; ++rep) {
    const Datum z = testutil::random_datum(3, rng, true);
    const Eigen::VectorXd a = testutil::random_vector(3, rng);
    const Eigen::VectorXd b = testutil::random_vector(3, rng);
    const double t = rng.uniform01();
    const double lhs = loss(kLogistic, t * a + (1.0 - t) * b, z);
    const double rhs =
        t * loss(kLogistic, a, z) + (1.0 - t) * loss(kLogistic, b, z);
    CHECK(lhs <= rhs + 1e-12);
  }
}

TEST_CASE("stable log1p_exp agrees with the naive form and never overflows") {
  for (double b : {-30.0, -1.0, 0.0, 1.0, 30.0}) {
    CHECK(log1p_exp(b) ==
          doctest::Approx(std::log(1.0 + std::exp(b))).epsilon(1e-14));
  }
  CHECK(std::isfinite(log1p_exp(5000.0)));
  CHECK(log1p_exp(5000.0) == doctest::Approx(5000.0));
  CHECK(log1p_exp(-5000.0) == 0.0);
}

TEST_CASE("shard_gradient is the mean per-datum gradient") {
  Rng rng(7);
  const Shard one = testutil::random_shard(1, 3, rng, false);
  const Eigen::VectorXd theta = testutil::random_vector(3, rng);
  CHECK((shard_gradient(kLinear, theta, one) -
         gradient(kLinear, theta, one.datum(0)))
            .lpNorm<Eigen::Infinity>() < 1e-15);

  // Same covariates, opposite responses: the two gradients at zero are
  // -y*x and +y*x, so the mean vanishes.
  Shard pair;
  pair.X.resize(2, 2);
  pair.X << 1, 2, 1, 2;
  pair.y.resize(2);
  pair.y << 1, -1;
  CHECK(shard_gradient(kLinear, Eigen::VectorXd::Zero(2), pair)
            .lpNorm<Eigen::Infinity>() == 0.0);

  // Independent summation oracle in long double, ascending datum order.
  const Shard shard = testutil::random_shard(64, 3, rng, true);
  const Eigen::VectorXd theta2 = testutil::random_vector(3, rng);
  const Eigen::VectorXd got = shard_gradient(kLogistic, theta2, shard);
  Eigen::VectorXd want(3);
  for (long j = 0; j < 3; ++j) {
    long double acc = 0.0L;
    for (long i = 0; i < shard.size(); ++i) {
      acc += gradient(kLogistic, theta2, shard.datum(i))(j);
    }
    want(j) = static_cast<double>(acc / shard.size());
  }
  CHECK((got - want).lpNorm<Eigen::Infinity>() /
            std::max(1.0, want.lpNorm<Eigen::Infinity>()) < 1e-12);
}

TEST_CASE("shard_hessian is symmetric and PSD") {
  Rng rng(8);
  for (const ModelSpec& model : {kLinear, kLogistic}) {
    const Shard shard = testutil::random_shard(32, 4, rng, true);
    const Eigen::VectorXd theta = testutil::random_vector(4, rng);
    const Eigen::MatrixXd H = shard_hessian(model, theta, shard);
    CHECK((H - H.transpose()).lpNorm<Eigen::Infinity>() == 0.0);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("empty shard is rejected") {
  Shard empty;
  empty.X.resize(0, 2);
  empty.y.resize(0);
  CHECK_THROWS_AS(shard_gradient(kLinear, vec2(0, 0), empty),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_local(kLinear, empty), std::invalid_argument);
}

TEST_CASE("linear fit: one-point shard") {
  Shard shard;
  shard.X.resize(1, 1);
  shard.X << 1.0;
  shard.y.resize(1);
  shard.y << 2.0;
  const Eigen::VectorXd theta = fit_local(kLinear, shard);
  CHECK(theta(0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("linear fit matches the QR route and zeroes the gradient") {
  Rng rng(55);
  for (int rep = 0; rep < 10; ++rep) {
    const Shard shard = testutil::random_shard(40, 5, rng, false);
    const Eigen::VectorXd theta = fit_local(kLinear, shard);
    CHECK((theta - qr_least_squares(shard)).lpNorm<Eigen::Infinity>() <
          1e-10);
    CHECK(shard_gradient(kLinear, theta, shard).lpNorm<Eigen::Infinity>() <
          1e-10);
  }
}

TEST_CASE("singular Gram with ridge disabled raises SingularHessian") {
  // A dead column keeps the Gram matrix exactly singular in floating
  // point (the second pivot is 0, not rounding noise).
  Shard shard;
  shard.X.resize(2, 2);
  shard.X << 1, 0, 1, 0;
  shard.y.resize(2);
  shard.y << 1, 2;
  SolverConfig cfg;
  cfg.ridge = 0.0;
  CHECK_THROWS_AS(fit_local(kLinear, shard, cfg), SingularHessianError);
  // With the default ridge the retry succeeds.
  CHECK_NOTHROW(fit_local(kLinear, shard));
}

TEST_CASE("logistic fit beats theta_star and a gradient-descent reference") {
  DesignSpec spec;
  spec.d = 3;
  spec.cov = CovKind::Toeplitz;
  spec.model = kLogistic;
  spec.theta_star = draw_theta_star(3, SeedSpec{17, {}});
  const Dataset data = sample_dataset(spec, 200, SeedSpec{18, {}});
  const Shard shard = data.as_shard();

  const Eigen::VectorXd fit = fit_local(kLogistic, shard);
  CHECK(shard_gradient(kLogistic, fit, shard).lpNorm<Eigen::Infinity>() <=
        1e-10);
  CHECK(shard_loss(kLogistic, fit, shard) <=
        shard_loss(kLogistic, spec.theta_star, shard));
  const Eigen::VectorXd gd = gd_minimize(kLogistic, shard, 2000);
  CHECK(shard_loss(kLogistic, fit, shard) <=
        shard_loss(kLogistic, gd, shard) + 1e-10);
}

TEST_CASE("logistic fit reports NoConvergence with the last iterate") {
  DesignSpec spec;
  spec.d = 2;
  spec.cov = CovKind::Identity;
  spec.model = kLogistic;
  spec.theta_star = vec2(0.4, -0.2);
  const Dataset data = sample_dataset(spec, 100, SeedSpec{21, {}});
  SolverConfig cfg;
  cfg.max_newton_iters = 1;  // cannot reach 1e-10 in one step
  try {
    fit_local(kLogistic, data.as_shard(), cfg);
    FAIL("expected NoConvergenceError");
  } catch (const NoConvergenceError& e) {
    CHECK(e.last_iterate.size() == 2);
    CHECK(e.last_iterate.allFinite());
  }
}

TEST_CASE("uniform weights reproduce the unweighted fit") {
  Rng rng(66);
  const long n = 32;
  const Shard lin = testutil::random_shard(n, 3, rng, false);
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 4096.0 / n);
  CHECK((fit_local_weighted(kLinear, lin, w) - fit_local(kLinear, lin))
            .lpNorm<Eigen::Infinity>() == 0.0);

  const Shard logit = testutil::random_shard(n, 3, rng, true);
  CHECK((fit_local_weighted(kLogistic, logit, w) -
         fit_local(kLogistic, logit))
            .lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("weighted fit rejects bad weights") {
  Rng rng(67);
  const Shard shard = testutil::random_shard(8, 2, rng, false);
  CHECK_THROWS_AS(
      fit_local_weighted(kLinear, shard, Eigen::VectorXd::Zero(8)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      fit_local_weighted(kLinear, shard, Eigen::VectorXd::Ones(5)),
      std::invalid_argument);
}

TEST_CASE("fit at the local minimizer has a flat shard gradient") {
  Rng rng(70);
  for (const ModelSpec& model : {kLinear, kLogistic}) {
    const Shard shard =
        testutil::random_shard(128, 3, rng, model.family == ModelFamily::Logistic);
    const Eigen::VectorXd theta = fit_local(model, shard);
    CHECK(shard_gradient(model, theta, shard).lpNorm<Eigen::Infinity>() <=
          1e-10);
  }
}
