#ifndef VPLANT_RNG_HPP
#define VPLANT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace vplant {

/// Seeded random source shared by every stochastic operation in the toolkit.
///
/// Distributions are implemented on top of the raw mt19937_64 stream instead
/// of the <random> distribution adaptors, whose sequences differ between
/// standard library implementations. A fixed seed therefore reproduces the
/// same simulation on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t uniform_index(std::uint64_t n) {
    const auto k = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

  bool coin() { return uniform() < 0.5; }

  /// Gaussian draw via Box-Muller; consumes exactly two uniforms.
  double normal(double mean = 0.0, double stddev = 1.0) {
    constexpr double two_pi = 6.28318530717958647692;
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  /// Poisson draw, Knuth's product method; adequate for the small means here.
  int poisson(double mean) {
    const double limit = std::exp(-mean);
    int count = -1;
    double product = 1.0;
    do {
      ++count;
      product *= uniform();
    } while (product > limit);
    return count;
  }

  /// Independent, reproducibly derived sub-stream (e.g. one per lineage).
  Rng spawn(std::uint64_t stream) const {
    return Rng(mix(seed_ + 0x9E3779B97F4A7C15ull * (stream + 1)));
  }

  /// splitmix64 finalizer; used wherever a seed has to be derived from another.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace vplant

#endif  // VPLANT_RNG_HPP
