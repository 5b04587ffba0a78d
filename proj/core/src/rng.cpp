#include "distboot/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace distboot {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) {
  return mix64(seed ^ mix64(label));
}

std::uint64_t derive_seed(std::uint64_t root,
                          std::initializer_list<std::uint64_t> labels) {
  std::uint64_t s = root;
  for (std::uint64_t l : labels) s = derive_seed(s, l);
  return s;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_open01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
  // Rejection to avoid modulo bias.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

namespace {

double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

// Binomial(t, p) by CDF inversion, walking the pmf upward from zero.
// Expected walk length is t*p + O(sd). The plain-space walk handles the
// common case; when P(X=0) would underflow a double, the same walk runs
// in log space.
long binomial_inverse(long t, double p, Rng& rng) {
  if (t <= 0) return 0;
  if (p >= 1.0) return t;
  if (p <= 0.0) return 0;
  const double u = rng.uniform_open01();
  const double log_q = std::log1p(-p);
  const double log_pmf0 = static_cast<double>(t) * log_q;
  const double odds = p / (1.0 - p);

  if (log_pmf0 > -700.0) {
    double pmf = std::exp(log_pmf0);
    double cdf = pmf;
    long x = 0;
    while (cdf < u && x < t) {
      pmf *= static_cast<double>(t - x) / static_cast<double>(x + 1) * odds;
      cdf += pmf;
      ++x;
    }
    return x;
  }

  const double log_u = std::log(u);
  const double log_odds = std::log(odds);
  double log_pmf = log_pmf0;
  double log_cdf = log_pmf;
  long x = 0;
  while (log_cdf < log_u && x < t) {
    log_pmf += std::log(static_cast<double>(t - x)) -
               std::log(static_cast<double>(x + 1)) + log_odds;
    log_cdf = log_add_exp(log_cdf, log_pmf);
    ++x;
  }
  return x;
}

}  // namespace

std::vector<long> multinomial_uniform_counts(long trials, long cells,
                                             Rng& rng) {
  if (cells < 1) {
    throw std::invalid_argument("multinomial: cells must be >= 1");
  }
  if (trials < 0) {
    throw std::invalid_argument("multinomial: trials must be >= 0");
  }
  std::vector<long> counts(static_cast<std::size_t>(cells), 0);
  long remaining = trials;
  for (long c = 0; c < cells - 1 && remaining > 0; ++c) {
    const double p = 1.0 / static_cast<double>(cells - c);
    const long x = binomial_inverse(remaining, p, rng);
    counts[static_cast<std::size_t>(c)] = x;
    remaining -= x;
  }
  counts[static_cast<std::size_t>(cells - 1)] = remaining;
  return counts;
}

}  // namespace distboot
