#pragma once

#include <cmath>
#include <cstdint>

namespace hdwn {

/// Threefry-2x64, 20 rounds (Salmon et al., "Parallel random numbers: as easy
/// as 1, 2, 3"). Counter-based: a pure function from (key, counter) to two
/// 64-bit words, which is what makes Monte Carlo streams splittable and the
/// results independent of thread scheduling.
struct Threefry2x64 {
  static constexpr std::uint64_t parity = 0x1BD11BDAA9FC1A22ULL;

  static inline void block(std::uint64_t k0, std::uint64_t k1,
                           std::uint64_t c0, std::uint64_t c1,
                           std::uint64_t& o0, std::uint64_t& o1) {
    constexpr int rot[8] = {16, 42, 12, 31, 16, 32, 24, 21};
    const std::uint64_t ks[3] = {k0, k1, parity ^ k0 ^ k1};
    std::uint64_t x0 = c0 + ks[0];
    std::uint64_t x1 = c1 + ks[1];
    for (int r = 0; r < 20; ++r) {
      x0 += x1;
      x1 = (x1 << rot[r & 7]) | (x1 >> (64 - rot[r & 7]));
      x1 ^= x0;
      if ((r & 3) == 3) {
        const int j = r / 4 + 1;
        x0 += ks[j % 3];
        x1 += ks[(j + 1) % 3] + static_cast<std::uint64_t>(j);
      }
    }
    o0 = x0;
    o1 = x1;
  }
};

/// One logical random stream: key = (seed, stream id), counter advances as
/// values are drawn. Streams with distinct (seed, id) pairs are statistically
/// independent, so a simulation can hand stream (seed, cell, replicate) to
/// each replicate and get the same numbers no matter how work is scheduled.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream_hi, std::uint64_t stream_lo = 0)
      : key0_(seed), key1_(mix(stream_hi, stream_lo)) {}

  std::uint64_t next_u64() {
    if (have_word_) {
      have_word_ = false;
      return word_;
    }
    std::uint64_t o0, o1;
    Threefry2x64::block(key0_, key1_, counter_++, 0, o0, o1);
    word_ = o1;
    have_word_ = true;
    return o0;
  }

  /// Uniform on [0, 1): 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (-1, 1).
  double uniform_pm1() { return 2.0 * uniform() - 1.0; }

  /// Standard normal via Box-Muller; generates pairs, caches the second.
  double normal() {
    if (have_normal_) {
      have_normal_ = false;
      return cached_normal_;
    }
    // u in (0, 1] so the log is finite.
    const double u = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double theta = 6.283185307179586476925286766559 * v;
    cached_normal_ = r * std::sin(theta);
    have_normal_ = true;
    return r * std::cos(theta);
  }

  /// +1 or -1 with equal probability.
  double rademacher() { return (next_u64() & 1) ? 1.0 : -1.0; }

  /// Gamma(shape, scale) for shape >= 1, Marsaglia-Tsang squeeze method.
  double gamma(double shape, double scale) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      const double x = normal();
      const double t = 1.0 + c * x;
      if (t <= 0.0) continue;
      const double v = t * t * t;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
        return d * v * scale;
    }
  }

  // SplitMix64 finalizer; spreads structured stream ids over the key space.
  static std::uint64_t mix(std::uint64_t hi, std::uint64_t lo) {
    std::uint64_t z = hi + 0x9E3779B97F4A7C15ULL * (lo + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:

  std::uint64_t key0_, key1_;
  std::uint64_t counter_ = 0;
  std::uint64_t word_ = 0;
  bool have_word_ = false;
  bool have_normal_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace hdwn
