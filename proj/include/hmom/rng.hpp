#pragma once

#include <cmath>
#include <cstdint>

namespace hmom {

/// Small deterministic generator (xoshiro256** seeded by splitmix64).
/// Stream construction from (seed, index) is stable across platforms and
/// worker counts, which keeps every Monte-Carlo estimate reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
  }

  /// Derive an independent stream, e.g. one per Monte-Carlo draw.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t x = seed;
    std::uint64_t a = splitmix64(x);
    return Rng(a ^ (index * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in (0,1).
  double uniform() {
    return ((next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }

  double normal() {
    // Polar Marsaglia; second deviate discarded for stream simplicity.
    for (;;) {
      double u = 2.0 * uniform() - 1.0;
      double v = 2.0 * uniform() - 1.0;
      double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }

  /// Gamma(shape, 1) via Marsaglia-Tsang squeeze rejection.
  double gamma(double shape) {
    if (shape < 1.0) {
      double u = uniform();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double beta(double a, double b) {
    double x = gamma(a);
    double y = gamma(b);
    return x / (x + y);
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t s_[4];
};

}  // namespace hmom
