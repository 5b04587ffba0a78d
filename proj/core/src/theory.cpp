#include "distboot/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace distboot {

long snap_floor(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-12) return static_cast<long>(r);
  return static_cast<long>(std::floor(x));
}

namespace {

TauPlan linear_plan(BootMethod method, double gn, double gk) {
  TauPlan plan;
  plan.gamma_n = gn;
  plan.gamma_k = gk;
  plan.nu0 = std::numeric_limits<double>::quiet_NaN();
  if (method == BootMethod::KGrad) {
    plan.feasible = gn > 1.0 && gk > 3.0;
    if (!plan.feasible) return plan;
    const double ratio =
        std::max((gk + 1.0) / (gn - 1.0), 1.0 + 3.0 / (gn - 1.0));
    plan.tau_min = static_cast<int>(1 + snap_floor(ratio));
  } else {
    plan.feasible = gn > 1.0 && std::max(gn, gk) > 3.0 && gn + gk > 4.0;
    if (!plan.feasible) return plan;
    const double numer =
        std::max({gk - 1.0, std::min(gn, gk), 1.0}) + 2.0;
    plan.tau_min = static_cast<int>(1 + snap_floor(numer / (gn - 1.0)));
  }
  return plan;
}

TauPlan glm_plan(BootMethod method, double gn, double gk) {
  TauPlan plan;
  plan.gamma_n = gn;
  plan.gamma_k = gk;
  if (method == BootMethod::KGrad) {
    plan.feasible = gn > 4.0 && gk > 3.0;
  } else {
    plan.feasible = gn > 4.0 && gn + gk > 5.0;
  }
  if (!plan.feasible) return plan;
  plan.tau0 =
      static_cast<int>(1 + snap_floor(std::log2((gn - 1.0) / (gn - 4.0))));
  plan.nu0 =
      2.0 - std::ldexp(1.0, plan.tau0) * (gn - 4.0) / (gn - 1.0);
  if (std::abs(plan.nu0) <= 1e-12) {
    // The stated nu0 lies in (0, 1], but exponents where
    // log2((gn-1)/(gn-4)) is an exact integer drive the formula to 0.
    // Evaluate as written and flag.
    plan.nu0 = 0.0;
    plan.nu0_degenerate = true;
  }
  if (method == BootMethod::KGrad) {
    const long inner = snap_floor((gk - 2.0) / (gn - 1.0) + plan.nu0);
    plan.tau_min = static_cast<int>(plan.tau0 + std::max(inner, 1L));
  } else {
    const double numer = std::max(gk - 1.0, std::min(gn, gk)) - 1.0;
    plan.tau_min = static_cast<int>(
        plan.tau0 + snap_floor(numer / (gn - 1.0) + plan.nu0));
  }
  return plan;
}

}  // namespace

TauPlan tau_min(ModelClass family, BootMethod method, double gamma_n,
                double gamma_k) {
  if (gamma_n < 0.0 || gamma_k < 0.0) {
    throw std::invalid_argument("tau_min: exponents must be nonnegative");
  }
  if (family == ModelClass::Linear) {
    return linear_plan(method, gamma_n, gamma_k);
  }
  return glm_plan(method, gamma_n, gamma_k);
}

std::pair<double, double> exponents_from_sizes(long n, long k, long d) {
  if (d < 2) throw std::invalid_argument("exponents_from_sizes: d must be >= 2");
  if (n < 1 || k < 1) {
    throw std::invalid_argument("exponents_from_sizes: n, k must be >= 1");
  }
  const double ld = std::log(static_cast<double>(d));
  return {std::log(static_cast<double>(n)) / ld,
          std::log(static_cast<double>(k)) / ld};
}

}  // namespace distboot
