#include "elastomap/random.hpp"

#include <cmath>
#include <numbers>

namespace elastomap {

double CounterRng::normal(std::uint64_t n) const noexcept {
  const double u1 = 1.0 - uniform(2 * n);  // (0, 1]
  const double u2 = uniform(2 * n + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace elastomap
