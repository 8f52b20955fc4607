#pragma once

#include <cstdint>
#include <random>

namespace alphapi {

using Rng = std::mt19937_64;

// Uniform draw in [-1, 1). Implemented directly on the raw 64-bit stream so
// that sequences are identical across standard library implementations.
inline double uniform_symmetric(Rng& rng) {
  const double u01 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u01 - 1.0;
}

inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace alphapi
