#include "distboot/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace distboot {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

Eigen::VectorXd mean_of(const std::vector<Eigen::VectorXd>& vs) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(vs.front().size());
  for (const auto& v : vs) sum += v;
  return sum / static_cast<double>(vs.size());
}

// Global mean gradient for the n+k-1-grad pieces: the master's local
// gradient (recovered from its per-datum gradients) averaged with the
// k-1 worker gradients.
Eigen::VectorXd global_mean_gradient(
    const std::vector<Eigen::VectorXd>& master_grads,
    const std::vector<Eigen::VectorXd>& worker_grads) {
  Eigen::VectorXd sum = mean_of(master_grads);
  for (const auto& g : worker_grads) sum += g;
  return sum / static_cast<double>(1 + worker_grads.size());
}

}  // namespace

double apply_norm(const NormFunctional& norm, const Eigen::VectorXd& v) {
  switch (norm.kind) {
    case NormFunctional::Kind::SupNorm:
      return v.lpNorm<Eigen::Infinity>();
    case NormFunctional::Kind::Coordinate:
      if (norm.l < 1 || norm.l > v.size()) {
        std::ostringstream msg;
        msg << "norm coordinate " << norm.l << " out of range [1, "
            << v.size() << "]";
        throw std::invalid_argument(msg.str());
      }
      return std::abs(v(norm.l - 1));
    case NormFunctional::Kind::L2:
      return v.norm();
  }
  throw std::logic_error("unreachable");
}

double kgrad_draw(const Eigen::MatrixXd& theta_tilde_inv,
                  const std::vector<Eigen::VectorXd>& grads,
                  const std::vector<double>& eps, long shard_size,
                  const NormFunctional& norm) {
  require(!grads.empty(), "kgrad_draw: need at least one gradient");
  require(grads.size() == eps.size(),
          "kgrad_draw: one multiplier per gradient");
  require(shard_size >= 1, "kgrad_draw: shard_size must be >= 1");
  const long k = static_cast<long>(grads.size());
  const Eigen::VectorXd gbar = mean_of(grads);
  const double root_n = std::sqrt(static_cast<double>(shard_size));
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(gbar.size());
  for (long j = 0; j < k; ++j) {
    acc += eps[static_cast<std::size_t>(j)] * root_n *
           (grads[static_cast<std::size_t>(j)] - gbar);
  }
  const Eigen::VectorXd v =
      -(theta_tilde_inv * acc) / std::sqrt(static_cast<double>(k));
  return apply_norm(norm, v);
}

double nk1grad_draw(const Eigen::MatrixXd& theta_tilde_inv,
                    const std::vector<Eigen::VectorXd>& master_grads,
                    const std::vector<Eigen::VectorXd>& worker_grads,
                    const std::vector<double>& eps_master,
                    const std::vector<double>& eps_workers,
                    const NormFunctional& norm) {
  require(!master_grads.empty(), "nk1grad_draw: need master gradients");
  require(master_grads.size() == eps_master.size(),
          "nk1grad_draw: one multiplier per master datum");
  require(worker_grads.size() == eps_workers.size(),
          "nk1grad_draw: one multiplier per worker");
  const long n = static_cast<long>(master_grads.size());
  const long k = static_cast<long>(worker_grads.size()) + 1;
  const Eigen::VectorXd gbar =
      global_mean_gradient(master_grads, worker_grads);
  const double root_n = std::sqrt(static_cast<double>(n));
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(gbar.size());
  for (long i = 0; i < n; ++i) {
    acc += eps_master[static_cast<std::size_t>(i)] *
           (master_grads[static_cast<std::size_t>(i)] - gbar);
  }
  for (std::size_t j = 0; j < worker_grads.size(); ++j) {
    acc += eps_workers[j] * root_n * (worker_grads[j] - gbar);
  }
  const Eigen::VectorXd v = -(theta_tilde_inv * acc) /
                            std::sqrt(static_cast<double>(n + k - 1));
  return apply_norm(norm, v);
}

double empirical_quantile(const std::vector<double>& samples, double alpha) {
  if (samples.empty()) {
    throw std::invalid_argument("empirical_quantile: empty sample");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("empirical_quantile: alpha must be in (0,1)");
  }
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const double b = static_cast<double>(sorted.size());
  long idx = static_cast<long>(std::ceil(alpha * b));
  if (idx < 1) idx = 1;
  if (idx > static_cast<long>(sorted.size())) {
    idx = static_cast<long>(sorted.size());
  }
  return sorted[static_cast<std::size_t>(idx - 1)];
}

namespace detail {

double MultiplierKernel::draw(const Eigen::VectorXd& eps,
                              const NormFunctional& norm) const {
  const Eigen::VectorXd v = inv_sqrt_scale * (A.transpose() * eps);
  return apply_norm(norm, v);
}

}  // namespace detail

BootstrapSummary dist_boots(BootMethod method,
                            const Eigen::VectorXd& theta_center,
                            const std::vector<Eigen::VectorXd>& shard_grads,
                            const std::vector<Eigen::VectorXd>& master_grads,
                            const Eigen::MatrixXd& theta_tilde_inv,
                            long shard_size, long B, double alpha,
                            const NormFunctional& norm,
                            const SeedSpec& seed) {
  require(B >= 1, "dist_boots: B must be >= 1");
  require(alpha > 0.0 && alpha < 1.0, "dist_boots: alpha must be in (0,1)");
  require(!shard_grads.empty(), "dist_boots: need shard gradients");
  require(shard_size >= 1, "dist_boots: shard_size must be >= 1");
  const long k = static_cast<long>(shard_grads.size());
  const long n = shard_size;
  const long d = shard_grads.front().size();
  const double root_n = std::sqrt(static_cast<double>(n));

  // Rows of the kernel: centered gradient terms mapped through -Theta'.
  detail::MultiplierKernel kernel;
  long terms = 0;
  if (method == BootMethod::KGrad) {
    terms = k;
    kernel.inv_sqrt_scale = 1.0 / std::sqrt(static_cast<double>(k));
    const Eigen::VectorXd gbar = mean_of(shard_grads);
    Eigen::MatrixXd C(terms, d);
    for (long j = 0; j < k; ++j) {
      C.row(j) =
          (root_n * (shard_grads[static_cast<std::size_t>(j)] - gbar))
              .transpose();
    }
    kernel.A = C * (-theta_tilde_inv.transpose());
  } else {
    require(static_cast<long>(master_grads.size()) == n,
            "dist_boots: master_grads must hold one gradient per master "
            "datum");
    terms = n + k - 1;
    kernel.inv_sqrt_scale = 1.0 / std::sqrt(static_cast<double>(n + k - 1));
    std::vector<Eigen::VectorXd> worker_grads(shard_grads.begin() + 1,
                                              shard_grads.end());
    const Eigen::VectorXd gbar =
        global_mean_gradient(master_grads, worker_grads);
    Eigen::MatrixXd C(terms, d);
    for (long i = 0; i < n; ++i) {
      C.row(i) =
          (master_grads[static_cast<std::size_t>(i)] - gbar).transpose();
    }
    for (long j = 0; j < k - 1; ++j) {
      C.row(n + j) =
          (root_n * (worker_grads[static_cast<std::size_t>(j)] - gbar))
              .transpose();
    }
    kernel.A = C * (-theta_tilde_inv.transpose());
  }

  BootstrapSummary summary;
  summary.B = B;
  summary.alpha = alpha;
  summary.draws.resize(static_cast<std::size_t>(B));
  Eigen::VectorXd eps(terms);
  for (long b = 0; b < B; ++b) {
    Rng rng(seed.with(static_cast<std::uint64_t>(b)));
    for (long t = 0; t < terms; ++t) eps(t) = rng.normal();
    summary.draws[static_cast<std::size_t>(b)] = kernel.draw(eps, norm);
  }
  summary.c_alpha = empirical_quantile(summary.draws, alpha);
  const double half =
      summary.c_alpha / std::sqrt(static_cast<double>(n) *
                                  static_cast<double>(k));
  summary.intervals.reserve(static_cast<std::size_t>(theta_center.size()));
  for (long l = 0; l < theta_center.size(); ++l) {
    summary.intervals.emplace_back(theta_center(l) - half,
                                   theta_center(l) + half);
  }
  return summary;
}

Eigen::MatrixXd conditional_covariance(
    BootMethod method, const Eigen::MatrixXd& theta_tilde_inv,
    const std::vector<Eigen::VectorXd>& shard_grads,
    const std::vector<Eigen::VectorXd>& master_grads, long shard_size,
    long k) {
  require(!shard_grads.empty(), "conditional_covariance: need gradients");
  require(static_cast<long>(shard_grads.size()) == k,
          "conditional_covariance: k must match gradient count");
  const double n = static_cast<double>(shard_size);
  const long d = shard_grads.front().size();
  Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(d, d);
  if (method == BootMethod::KGrad) {
    const Eigen::VectorXd gbar = mean_of(shard_grads);
    for (const auto& g : shard_grads) {
      const Eigen::VectorXd c = g - gbar;
      scatter += n * (c * c.transpose());
    }
    scatter /= static_cast<double>(k);
  } else {
    require(static_cast<long>(master_grads.size()) == shard_size,
            "conditional_covariance: master_grads must have n entries");
    std::vector<Eigen::VectorXd> worker_grads(shard_grads.begin() + 1,
                                              shard_grads.end());
    const Eigen::VectorXd gbar =
        global_mean_gradient(master_grads, worker_grads);
    for (const auto& g : master_grads) {
      const Eigen::VectorXd c = g - gbar;
      scatter += c * c.transpose();
    }
    for (const auto& g : worker_grads) {
      const Eigen::VectorXd c = g - gbar;
      scatter += n * (c * c.transpose());
    }
    scatter /= static_cast<double>(shard_size + k - 1);
  }
  return theta_tilde_inv * scatter * theta_tilde_inv.transpose();
}

bool covers(const Eigen::VectorXd& theta_star,
            const Eigen::VectorXd& theta_center, double c_alpha, long N,
            const NormFunctional& norm) {
  if (theta_star.size() != theta_center.size()) {
    throw std::invalid_argument("covers: dimension mismatch");
  }
  const Eigen::VectorXd t =
      std::sqrt(static_cast<double>(N)) * (theta_center - theta_star);
  return apply_norm(norm, t) <= c_alpha;
}

}  // namespace distboot
