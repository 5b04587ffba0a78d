#pragma once

#include <utility>

#include "distboot/bootstrap.hpp"

namespace distboot {

enum class ModelClass { Linear, Glm };

/// Round-count prescription for one (family, method, gamma_n, gamma_k)
/// cell, with n = d^gamma_n and k = d^gamma_k. When the cell fails the
/// theorem's exponent conditions, feasible is false and tau_min is
/// meaningless. tau0/nu0 are the GLM warm-up quantities; nu0_degenerate
/// marks exponents where the nu0 formula lands exactly on 0 instead of
/// the advertised (0, 1].
struct TauPlan {
  double gamma_n = 0.0;
  double gamma_k = 0.0;
  bool feasible = false;
  int tau_min = 0;
  int tau0 = 0;        // GLM only; 0 for the linear family
  double nu0 = 0.0;    // GLM only; NaN for the linear family
  bool nu0_degenerate = false;
};

/// floor() after snapping values within 1e-12 of an integer, so exact
/// rational exponents do not fall to the wrong side of the boundary.
long snap_floor(double x);

TauPlan tau_min(ModelClass family, BootMethod method, double gamma_n,
                double gamma_k);

/// (gamma_n, gamma_k) = (ln n / ln d, ln k / ln d). Requires d >= 2.
std::pair<double, double> exponents_from_sizes(long n, long k, long d);

}  // namespace distboot
