#pragma once

#include <cstdint>

namespace elastomap {

enum class Stream : std::uint64_t { Kappa = 1, Mu = 2, Geometry = 3 };

/// splitmix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based generator: draw n of stream s under seed k is a pure function
// splitmix64(key(k, s) + (n + 1) * golden), so any draw can be recomputed
// independently of the others and results do not depend on draw order.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, Stream stream) noexcept
      : key_(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream)))) {}

  std::uint64_t bits(std::uint64_t n) const noexcept {
    return splitmix64(key_ + (n + 1) * 0x9E3779B97F4A7C15ULL);
  }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform(std::uint64_t n) const noexcept {
    return static_cast<double>(bits(n) >> 11) * 0x1.0p-53;
  }
  /// Standard normal via Box-Muller on counters 2n and 2n + 1.
  double normal(std::uint64_t n) const noexcept;

 private:
  std::uint64_t key_;
};

}  // namespace elastomap
