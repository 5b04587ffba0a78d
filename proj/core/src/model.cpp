#include "distboot/model.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <sstream>

namespace distboot {

namespace {

void check_dims(const Eigen::VectorXd& theta, const Eigen::VectorXd& x) {
  if (theta.size() != x.size()) {
    std::ostringstream msg;
    msg << "dimension mismatch: theta has " << theta.size()
        << " entries, datum has " << x.size();
    throw std::invalid_argument(msg.str());
  }
}

void check_shard(const Eigen::VectorXd& theta, const Shard& shard) {
  if (shard.size() == 0) throw std::invalid_argument("empty shard");
  if (theta.size() != shard.dim()) {
    std::ostringstream msg;
    msg << "dimension mismatch: theta has " << theta.size()
        << " entries, shard has dim " << shard.dim();
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

double log1p_exp(double b) {
  if (b > 0.0) return b + std::log1p(std::exp(-b));
  return std::log1p(std::exp(b));
}

double sigmoid(double b) {
  if (b >= 0.0) return 1.0 / (1.0 + std::exp(-b));
  const double e = std::exp(b);
  return e / (1.0 + e);
}

double loss(const ModelSpec& model, const Eigen::VectorXd& theta,
            const Datum& z) {
  check_dims(theta, z.x);
  const double b = z.x.dot(theta);
  if (model.family == ModelFamily::Linear) {
    const double r = z.y - b;
    return 0.5 * r * r;
  }
  return -z.y * b + log1p_exp(b);
}

Eigen::VectorXd gradient(const ModelSpec& model, const Eigen::VectorXd& theta,
                         const Datum& z) {
  check_dims(theta, z.x);
  const double b = z.x.dot(theta);
  if (model.family == ModelFamily::Linear) {
    return z.x * (b - z.y);
  }
  return z.x * (sigmoid(b) - z.y);
}

Eigen::MatrixXd hessian(const ModelSpec& model, const Eigen::VectorXd& theta,
                        const Datum& z) {
  check_dims(theta, z.x);
  if (model.family == ModelFamily::Linear) {
    return z.x * z.x.transpose();
  }
  const double s = sigmoid(z.x.dot(theta));
  return (s * (1.0 - s)) * (z.x * z.x.transpose());
}

double shard_loss(const ModelSpec& model, const Eigen::VectorXd& theta,
                  const Shard& shard) {
  check_shard(theta, shard);
  const Eigen::VectorXd b = shard.X * theta;
  const long n = shard.size();
  double total = 0.0;
  if (model.family == ModelFamily::Linear) {
    for (long i = 0; i < n; ++i) {
      const double r = shard.y(i) - b(i);
      total += 0.5 * r * r;
    }
  } else {
    for (long i = 0; i < n; ++i) {
      total += -shard.y(i) * b(i) + log1p_exp(b(i));
    }
  }
  return total / static_cast<double>(n);
}

Eigen::VectorXd shard_gradient(const ModelSpec& model,
                               const Eigen::VectorXd& theta,
                               const Shard& shard) {
  check_shard(theta, shard);
  const Eigen::VectorXd b = shard.X * theta;
  Eigen::VectorXd r(shard.size());
  if (model.family == ModelFamily::Linear) {
    r = b - shard.y;
  } else {
    for (long i = 0; i < shard.size(); ++i) {
      r(i) = sigmoid(b(i)) - shard.y(i);
    }
  }
  return (shard.X.transpose() * r) / static_cast<double>(shard.size());
}

Eigen::MatrixXd shard_hessian(const ModelSpec& model,
                              const Eigen::VectorXd& theta,
                              const Shard& shard) {
  check_shard(theta, shard);
  const double n = static_cast<double>(shard.size());
  Eigen::MatrixXd H;
  if (model.family == ModelFamily::Linear) {
    H = shard.X.transpose() * shard.X / n;
  } else {
    const Eigen::VectorXd b = shard.X * theta;
    Eigen::VectorXd w(shard.size());
    for (long i = 0; i < shard.size(); ++i) {
      const double s = sigmoid(b(i));
      w(i) = s * (1.0 - s);
    }
    H = shard.X.transpose() * w.asDiagonal() * shard.X / n;
  }
  // Symmetrize away rounding asymmetry from the matrix products.
  return ((H + H.transpose()) * 0.5).eval();
}

Eigen::VectorXd spd_solve(const Eigen::MatrixXd& H, const Eigen::VectorXd& b,
                          double ridge) {
  Eigen::LLT<Eigen::MatrixXd> llt(H);
  if (llt.info() == Eigen::Success) return llt.solve(b);
  if (ridge > 0.0) {
    Eigen::MatrixXd Hr = H;
    Hr.diagonal().array() += ridge;
    Eigen::LLT<Eigen::MatrixXd> retry(Hr);
    if (retry.info() == Eigen::Success) return retry.solve(b);
  }
  throw SingularHessianError("Cholesky factorization failed");
}

Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& H, double ridge) {
  const Eigen::MatrixXd eye =
      Eigen::MatrixXd::Identity(H.rows(), H.cols());
  Eigen::LLT<Eigen::MatrixXd> llt(H);
  if (llt.info() == Eigen::Success) return llt.solve(eye);
  if (ridge > 0.0) {
    Eigen::MatrixXd Hr = H;
    Hr.diagonal().array() += ridge;
    Eigen::LLT<Eigen::MatrixXd> retry(Hr);
    if (retry.info() == Eigen::Success) return retry.solve(eye);
  }
  throw SingularHessianError("Cholesky factorization failed");
}

namespace {

struct WeightedView {
  const Shard& shard;
  // Normalized weights (sum to 1); empty means uniform 1/n.
  Eigen::VectorXd wn;

  double loss(const ModelSpec& model, const Eigen::VectorXd& theta) const {
    const Eigen::VectorXd b = shard.X * theta;
    double total = 0.0;
    for (long i = 0; i < shard.size(); ++i) {
      double li;
      if (model.family == ModelFamily::Linear) {
        const double r = shard.y(i) - b(i);
        li = 0.5 * r * r;
      } else {
        li = -shard.y(i) * b(i) + log1p_exp(b(i));
      }
      total += wn(i) * li;
    }
    return total;
  }

  Eigen::VectorXd grad(const ModelSpec& model,
                       const Eigen::VectorXd& theta) const {
    const Eigen::VectorXd b = shard.X * theta;
    Eigen::VectorXd r(shard.size());
    for (long i = 0; i < shard.size(); ++i) {
      const double m = model.family == ModelFamily::Linear
                           ? b(i) - shard.y(i)
                           : sigmoid(b(i)) - shard.y(i);
      r(i) = wn(i) * m;
    }
    return shard.X.transpose() * r;
  }

  Eigen::MatrixXd hess(const ModelSpec& model,
                       const Eigen::VectorXd& theta) const {
    Eigen::VectorXd w(shard.size());
    if (model.family == ModelFamily::Linear) {
      w = wn;
    } else {
      const Eigen::VectorXd b = shard.X * theta;
      for (long i = 0; i < shard.size(); ++i) {
        const double s = sigmoid(b(i));
        w(i) = wn(i) * s * (1.0 - s);
      }
    }
    Eigen::MatrixXd H = shard.X.transpose() * w.asDiagonal() * shard.X;
    return ((H + H.transpose()) * 0.5).eval();
  }
};

Eigen::VectorXd fit_linear(const ModelSpec& model, const WeightedView& view,
                           const SolverConfig& cfg) {
  const Eigen::MatrixXd H = view.hess(model, Eigen::VectorXd());
  const Eigen::VectorXd rhs =
      view.shard.X.transpose() * (view.wn.cwiseProduct(view.shard.y));
  return spd_solve(H, rhs, cfg.ridge);
}

Eigen::VectorXd fit_newton(const ModelSpec& model, const WeightedView& view,
                           const SolverConfig& cfg) {
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(view.shard.dim());
  for (int iter = 0; iter < cfg.max_newton_iters; ++iter) {
    const Eigen::VectorXd g = view.grad(model, theta);
    if (g.lpNorm<Eigen::Infinity>() <= cfg.grad_tol) return theta;
    const Eigen::MatrixXd H = view.hess(model, theta);
    const Eigen::VectorXd step = spd_solve(H, g, cfg.ridge);
    const double f0 = view.loss(model, theta);
    // Rounding slack keeps the full quadratic step acceptable near the
    // optimum, where the true decrease is below double precision.
    const double f_accept = f0 + 1e-12 * (1.0 + std::abs(f0));
    double lambda = 1.0;
    Eigen::VectorXd cand = theta - step;
    while (view.loss(model, cand) > f_accept && lambda > 0x1.0p-30) {
      lambda *= 0.5;
      cand = theta - lambda * step;
    }
    theta = cand;
  }
  if (view.grad(model, theta).lpNorm<Eigen::Infinity>() <= cfg.grad_tol) {
    return theta;
  }
  throw NoConvergenceError("Newton did not reach grad_tol", theta);
}

Eigen::VectorXd fit_view(const ModelSpec& model, const WeightedView& view,
                         const SolverConfig& cfg) {
  if (model.family == ModelFamily::Linear) {
    return fit_linear(model, view, cfg);
  }
  return fit_newton(model, view, cfg);
}

}  // namespace

Eigen::VectorXd fit_local(const ModelSpec& model, const Shard& shard,
                          const SolverConfig& cfg) {
  if (shard.size() == 0) throw std::invalid_argument("empty shard");
  WeightedView view{shard, Eigen::VectorXd::Constant(
                               shard.size(),
                               1.0 / static_cast<double>(shard.size()))};
  return fit_view(model, view, cfg);
}

Eigen::VectorXd fit_local_weighted(const ModelSpec& model, const Shard& shard,
                                   const Eigen::VectorXd& weights,
                                   const SolverConfig& cfg) {
  if (shard.size() == 0) throw std::invalid_argument("empty shard");
  if (weights.size() != shard.size()) {
    throw std::invalid_argument("weights length must equal shard size");
  }
  const double total = weights.sum();
  if (!(total > 0.0)) {
    throw std::invalid_argument("weights must have positive sum");
  }
  WeightedView view{shard, weights / total};
  return fit_view(model, view, cfg);
}

}  // namespace distboot
