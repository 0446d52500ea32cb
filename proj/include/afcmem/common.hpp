#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace afcmem {

using cdouble = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLightCmPerS = 2.99792458e10;

// Intensity-FWHM of a transform-limited Gaussian times its spectral FWHM.
inline constexpr double kGaussianTimeBandwidth = 2.0 * std::numbers::ln2 / std::numbers::pi;

struct Warning {
  std::string code;
  std::string message;
};

using WarningList = std::vector<Warning>;

}  // namespace afcmem
