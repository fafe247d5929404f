#pragma once

#include <cstdint>
#include <random>

namespace salhi {

/// Uniform double in [a, b) from explicit 64-bit draws. mt19937_64 is fully
/// specified by the standard and this mapping avoids the
/// implementation-defined std::uniform_real_distribution, so frozen random
/// grids reproduce bit-identically everywhere.
inline double uniform_double(std::mt19937_64& rng, double a, double b) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return a + (b - a) * unit;
}

}  // namespace salhi
