#pragma once

#include <Eigen/Core>
#include <vector>

#include "distboot/rng.hpp"

namespace distboot {

enum class BootMethod { KGrad, NK1Grad };

/// Functional applied to the centered bootstrap vector: sup-norm for
/// simultaneous regions, |coordinate l| for pointwise intervals, l2 for
/// spherical regions.
struct NormFunctional {
  enum class Kind { SupNorm, Coordinate, L2 };
  Kind kind = Kind::SupNorm;
  long l = 1;  // 1-based, Coordinate only

  static NormFunctional sup() { return {Kind::SupNorm, 1}; }
  static NormFunctional coordinate(long l) { return {Kind::Coordinate, l}; }
  static NormFunctional l2() { return {Kind::L2, 1}; }
};

double apply_norm(const NormFunctional& norm, const Eigen::VectorXd& v);

/// One k-grad statistic: || -Theta * k^{-1/2} sum_j eps_j sqrt(n)
/// (g_j - gbar) || with gbar the mean of the k local gradients.
/// shard_size is n, the per-machine sample count behind each g_j.
double kgrad_draw(const Eigen::MatrixXd& theta_tilde_inv,
                  const std::vector<Eigen::VectorXd>& grads,
                  const std::vector<double>& eps, long shard_size,
                  const NormFunctional& norm);

/// One n+k-1-grad statistic: each master datum gets its own multiplier,
/// each of the k-1 workers one multiplier on its sqrt(n)-scaled local
/// gradient; everything centered at the global mean gradient and scaled
/// by (n+k-1)^{-1/2}.
double nk1grad_draw(const Eigen::MatrixXd& theta_tilde_inv,
                    const std::vector<Eigen::VectorXd>& master_grads,
                    const std::vector<Eigen::VectorXd>& worker_grads,
                    const std::vector<double>& eps_master,
                    const std::vector<double>& eps_workers,
                    const NormFunctional& norm);

struct BootstrapSummary {
  std::vector<double> draws;  // B statistics, generation order
  double c_alpha = 0.0;
  // Per-coordinate interval theta_l -+ N^{-1/2} c_alpha.
  std::vector<std::pair<double, double>> intervals;
  long B = 0;
  double alpha = 0.95;
};

/// Ascending order statistic at index ceil(alpha * B), 1-based: the
/// inf-form empirical quantile. No interpolation.
double empirical_quantile(const std::vector<double>& samples, double alpha);

/// Runs the master-node bootstrap: B rounds of fresh N(0,1) multipliers,
/// one statistic each, then the quantile and the simultaneous intervals
/// around theta_center. master_grads is ignored for KGrad. The
/// multipliers for round b come from stream (seed, b), master datum
/// multipliers first, then workers in shard order, so an external routine
/// handed the same seed can replay them. Draws agree with the per-draw
/// ops up to summation rounding (<= 1e-12 relative).
BootstrapSummary dist_boots(BootMethod method,
                            const Eigen::VectorXd& theta_center,
                            const std::vector<Eigen::VectorXd>& shard_grads,
                            const std::vector<Eigen::VectorXd>& master_grads,
                            const Eigen::MatrixXd& theta_tilde_inv,
                            long shard_size, long B, double alpha,
                            const NormFunctional& norm, const SeedSpec& seed);

/// Exact covariance, over the multipliers, of the centered vector inside
/// the norm: Theta * S * Theta' with S the method's scaled scatter of
/// centered gradients.
Eigen::MatrixXd conditional_covariance(
    BootMethod method, const Eigen::MatrixXd& theta_tilde_inv,
    const std::vector<Eigen::VectorXd>& shard_grads,
    const std::vector<Eigen::VectorXd>& master_grads, long shard_size,
    long k);

/// True iff norm(sqrt(N) (theta_center - theta_star)) <= c_alpha, i.e.
/// theta_star lies inside the confidence region.
bool covers(const Eigen::VectorXd& theta_star,
            const Eigen::VectorXd& theta_center, double c_alpha, long N,
            const NormFunctional& norm);

namespace detail {

/// Shared multiplier-bootstrap kernel: statistic(eps) =
/// norm(inv_sqrt_scale * A^T eps) with A the (terms x d) matrix whose
/// rows are centered gradient terms already mapped through -Theta^T.
struct MultiplierKernel {
  Eigen::MatrixXd A;
  double inv_sqrt_scale = 1.0;

  double draw(const Eigen::VectorXd& eps, const NormFunctional& norm) const;
};

}  // namespace detail

}  // namespace distboot
