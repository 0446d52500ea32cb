#pragma once

// Independent reference implementations used to check the fast paths.
// Everything here is deliberately naive: direct O(N^2) transforms and
// closed-form physics, no shared code with the library internals.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cdouble = std::complex<double>;

// Direct DFT with the e^{-2*pi*i*j*k/N} forward kernel.
inline std::vector<cdouble> naive_dft(const std::vector<cdouble>& in, bool inverse = false) {
  const std::size_t n = in.size();
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<cdouble> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cdouble acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ph = sign * 2.0 * std::numbers::pi * static_cast<double>(j) *
                        static_cast<double>(k) / static_cast<double>(n);
      acc += in[j] * cdouble(std::cos(ph), std::sin(ph));
    }
    out[k] = acc;
  }
  return out;
}

// Lorentzian absorption line alpha(nu) = a0 * g^2 / (nu^2 + g^2) with
// half-width g, and its exact causal phase partner
// phi(nu) = (a0/2) * nu * g / (nu^2 + g^2): normal dispersion in the wings.
inline double lorentzian_alpha(double nu, double a0, double g) {
  return a0 * g * g / (nu * nu + g * g);
}
inline double lorentzian_phase(double nu, double a0, double g) {
  return 0.5 * a0 * nu * g / (nu * nu + g * g);
}

// Uniformly random complex samples in the unit square, deterministic per seed.
inline std::vector<cdouble> random_samples(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<cdouble> out(n);
  for (cdouble& v : out) v = cdouble(uni(rng), uni(rng));
  return out;
}

inline double max_abs_diff(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace oracle
