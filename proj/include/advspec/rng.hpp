// Seeded random streams with explicit bit-level conversions.
// std::*_distribution output is implementation-defined, which would break
// bit-identical replay across standard libraries, so conversions live here.
#pragma once

#include <cstdint>
#include <cmath>
#include <random>
#include <stdexcept>

namespace advspec {

// splitmix64 finalizer, used to mix seeds for derived streams.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Independent child stream, a pure function of (seed, tag). Does not
  // advance this stream.
  Rng derive(std::uint64_t tag) const { return Rng(mix64(seed_ ^ mix64(tag))); }

  // Uniform in [0,1), 53 random bits.
  double uniform01() { return double(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) {
    if (!(lo <= hi)) throw std::invalid_argument("Rng::uniform: lo > hi");
    return lo + (hi - lo) * uniform01();
  }

  // Box-Muller. Always consumes exactly two engine words; u1 lies in (0,1]
  // so the log is finite without rejection sampling.
  double normal(double mean, double stddev) {
    double u1 = double((engine_() >> 11) + 1) * 0x1.0p-53;
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(two_pi * u2);
  }

  bool bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("Rng::bernoulli: p outside [0,1]");
    return uniform01() < p;
  }

  // Uniform index in [0,n). Fixed-cost multiply-shift; bias is O(n/2^64).
  std::size_t index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Rng::index: n must be positive");
    return std::size_t((static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

 private:
  static constexpr double two_pi = 6.283185307179586476925286766559;
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace advspec
