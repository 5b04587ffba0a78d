#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace distboot {

// Purpose tags for deriving independent RNG streams. Each (root seed,
// label sequence) tuple addresses one stream; reusing a tuple replays
// exactly the same bytes.
namespace stream {
inline constexpr std::uint64_t kThetaStar = 1;
inline constexpr std::uint64_t kData = 2;
inline constexpr std::uint64_t kMultipliers = 3;
inline constexpr std::uint64_t kResample = 4;
inline constexpr std::uint64_t kOracleData = 5;
inline constexpr std::uint64_t kOracleBoot = 6;
}  // namespace stream

/// splitmix64 finalizer; full-avalanche mix of a 64-bit value.
std::uint64_t mix64(std::uint64_t x);

/// Folds one label into a stream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label);

/// Folds a label sequence into a root seed, left to right.
std::uint64_t derive_seed(std::uint64_t root,
                          std::initializer_list<std::uint64_t> labels);

/// Root seed plus the labels that address one logical stream
/// (e.g. {kData, replication, shard}).
struct SeedSpec {
  std::uint64_t root_seed = 0;
  std::vector<std::uint64_t> labels;

  SeedSpec with(std::uint64_t label) const {
    SeedSpec s = *this;
    s.labels.push_back(label);
    return s;
  }

  std::uint64_t value() const {
    std::uint64_t s = root_seed;
    for (std::uint64_t l : labels) s = derive_seed(s, l);
    return s;
  }
};

/// Deterministic random stream: mt19937_64 with fixed uint64->double
/// mappings and Box-Muller normals, so the same seed yields the same
/// bytes on every platform that ships a conforming mt19937_64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  explicit Rng(const SeedSpec& spec) : Rng(spec.value()) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1]; safe as a log() argument.
  double uniform_open01() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller. Pairs are generated at once and the
  /// spare is cached, so draw order is part of the stream contract.
  double normal();

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Counts from a Multinomial(trials; cells equiprobable) draw, sampled as
/// sequential conditional binomials. cells >= 1; the counts sum to trials
/// exactly.
std::vector<long> multinomial_uniform_counts(long trials, long cells,
                                             Rng& rng);

}  // namespace distboot
