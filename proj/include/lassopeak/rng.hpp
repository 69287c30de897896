#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace lassopeak {

// splitmix64 finalizer; full avalanche on 64 bits.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Collapses (seed, tag...) into one stream seed. Used to give every
// simulation cell its own RNG stream so execution order never matters.
inline std::uint64_t derive_seed(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> tags) {
  std::uint64_t s = mix64(seed);
  for (std::uint64_t t : tags) s = mix64(s ^ t);
  return s;
}

// mt19937_64 engine with hand-rolled samplers. The standard library's
// distributions are implementation-defined, so they are avoided: a given
// seed must reproduce the same stream under any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on (0, 1], 53-bit resolution. Never returns 0, so it is
  // safe under log().
  double uniform01() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller; the paired value is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform01()));
    const double a = 2.0 * std::numbers::pi * uniform01();
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // Unbiased draw from [0, bound); bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  // Fisher-Yates over the first `take` positions; the prefix is a uniform
  // sample without replacement from the whole vector.
  template <typename T>
  void partial_shuffle(std::vector<T>& v, std::size_t take) {
    const std::size_t n = v.size();
    if (take > n) take = n;
    for (std::size_t i = 0; i < take && i + 1 < n; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(below(n - i));
      std::swap(v[i], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Stream tags for the simulation's seed derivation.
namespace seed_stream {
inline constexpr std::uint64_t model = 1;
inline constexpr std::uint64_t pool = 2;
inline constexpr std::uint64_t cell = 3;
inline constexpr std::uint64_t folds = 4;
}  // namespace seed_stream

}  // namespace lassopeak
