#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace pslset::detail {

// Distributions built directly on the engine output. The standard
// distributions are implementation-defined, which would make seeded runs
// differ between standard libraries.

inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Circular complex Gaussian with E|z|^2 = variance (Box-Muller).
inline std::complex<double> complex_gaussian(std::mt19937_64& gen, double variance) {
  const double u1 = 1.0 - uniform01(gen);  // (0, 1]
  const double u2 = uniform01(gen);
  const double radius = std::sqrt(-variance * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace pslset::detail
