#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rtlab {

/// Seeded 64-bit generator. Every randomized operation in the library takes
/// one of these; sub-streams come from derive_seed() so that pipelines are
/// reproducible from a single seed.
class Rng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  double normal();
  bool bernoulli(double p);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the sub-stream for (seed, operation name, call index).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name,
                          std::uint64_t index = 0);

inline Rng derive_rng(std::uint64_t seed, std::string_view name,
                      std::uint64_t index = 0) {
  return Rng(derive_seed(seed, name, index));
}

}  // namespace rtlab
