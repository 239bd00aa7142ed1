#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dyft/types.hpp"

namespace dyft {

/// Seeded generator whose output is identical on every platform:
/// std::mt19937_64 is fully specified, and the mapping to doubles is done here
/// rather than through the implementation-defined std distributions.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform in the square [-1, 1) x [-1, 1).
  Complex unit_box() {
    const double re = uniform(-1.0, 1.0);
    const double im = uniform(-1.0, 1.0);
    return {re, im};
  }

  std::vector<Complex> signal(std::size_t n) {
    std::vector<Complex> values(n);
    for (auto& v : values) v = unit_box();
    return values;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed from a base seed and a stream label.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t base,
                                                  std::uint64_t stream) noexcept {
  // splitmix64 finalizer
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace dyft
