#include "afcmem/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "afcmem/kernels.hpp"

namespace afcmem {

void validate(const CavityConfig& cfg) {
  if (cfg.r1 < 0.0 || cfg.r1 > 1.0) throw ConfigError("R1 must lie in [0,1]");
  if (cfg.r2 < 0.0 || cfg.r2 > 1.0) throw ConfigError("R2 must lie in [0,1]");
  if (cfg.length_cm <= 0.0) throw ConfigError("cavity length must be positive");
  if (cfg.refractive_index < 1.0) throw ConfigError("refractive index must be at least 1");
  if (cfg.excess_round_trip_loss < 0.0 || cfg.excess_round_trip_loss >= 1.0)
    throw ConfigError("excess round-trip loss must lie in [0,1)");
}

double free_spectral_range(const CavityConfig& cfg) {
  validate(cfg);
  return kSpeedOfLightCmPerS / (2.0 * cfg.refractive_index * cfg.length_cm);
}

double finesse(const CavityConfig& cfg, double mean_alpha_per_cm) {
  validate(cfg);
  if (cfg.r1 * cfg.r2 == 0.0) return 0.0;  // no resonator
  const double rho = std::sqrt(cfg.r1 * cfg.r2) * std::exp(-mean_alpha_per_cm * cfg.length_cm) *
                     std::sqrt(1.0 - cfg.excess_round_trip_loss);
  if (rho >= 1.0) throw DomainError("round-trip amplitude must stay below 1");
  return kPi * std::sqrt(rho) / (1.0 - rho);
}

double solve_matched_alpha(const CavityConfig& cfg) {
  validate(cfg);
  if (cfg.r1 == 0.0) throw DomainError("R1=0 has no finite matched absorption");
  if (cfg.r1 > cfg.r2) throw NoSolutionError("impedance matching requires R1 <= R2");
  return std::log(cfg.r2 / cfg.r1) / (2.0 * cfg.length_cm);
}

CavityResponse reflection_spectrum(const CavityConfig& cfg,
                                   const std::vector<cdouble>& medium_transfer,
                                   const FrequencyGrid& grid) {
  validate(cfg);
  if (medium_transfer.size() != grid.bin_count)
    throw ConfigError("medium transfer must live on the response grid");
  const double fsr = free_spectral_range(cfg);
  const double one_way_loss_amp = std::pow(1.0 - cfg.excess_round_trip_loss, 0.25);

  const std::size_t n = grid.bin_count;
  std::vector<cdouble> a1(n), a2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = kPi * (grid.frequency(i) - cfg.resonance_detuning_hz) / fsr;
    const cdouble half_phase(std::cos(theta), -std::sin(theta));  // causal one-way delay
    a1[i] = medium_transfer[i] * half_phase * one_way_loss_amp;
    a2[i] = a1[i] * a1[i];
  }

  CavityResponse resp{grid, std::vector<cdouble>(n), std::vector<cdouble>(n),
                      std::vector<cdouble>(n)};
  const double sr1 = std::sqrt(cfg.r1), sr2 = std::sqrt(cfg.r2);
  kernels::cavity_response(resp.reflection.data(), resp.intracavity.data(),
                           resp.transmission.data(), a1.data(), a2.data(), n, sr1, sr2,
                           std::sqrt(cfg.r1 * cfg.r2), std::sqrt(1.0 - cfg.r1),
                           std::sqrt(1.0 - cfg.r2));
  return resp;
}

std::vector<SweepPoint> reflection_sweep(const CavityConfig& cfg,
                                         const AbsorptionSpectrum& background,
                                         double probe_fwhm_s,
                                         const std::vector<double>& detunings_hz) {
  const FrequencyGrid& grid = background.grid;
  const std::vector<double> phase = kramers_kronig_phase(background);
  const std::vector<cdouble> transfer = single_pass_transfer(background, phase, cfg.length_cm);
  const CavityResponse resp = reflection_spectrum(cfg, transfer, grid);

  std::vector<double> r2(grid.bin_count);
  kernels::mag2(r2.data(), resp.reflection.data(), grid.bin_count);

  const bool cw = std::isinf(probe_fwhm_s);
  double spectral_fwhm = 0.0;
  if (!cw) {
    spectral_fwhm = kGaussianTimeBandwidth / probe_fwhm_s;  // intensity FWHM pair
    if (spectral_fwhm > grid.span_hz)
      throw ConfigError("probe bandwidth exceeds the frequency grid span");
  }

  std::vector<SweepPoint> out;
  out.reserve(detunings_hz.size());
  for (const double det : detunings_hz) {
    if (cw) {
      out.push_back({det, r2[grid.index_of(det)]});
      continue;
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < grid.bin_count; ++i) {
      const double x = grid.frequency(i) - det;
      const double w = std::exp(-4.0 * std::numbers::ln2 * x * x / (spectral_fwhm * spectral_fwhm));
      num += w * r2[i];
      den += w;
    }
    out.push_back({det, num / den});
  }
  return out;
}

SweepPoint sweep_minimum(const std::vector<SweepPoint>& sweep) {
  if (sweep.empty()) throw ConfigError("empty reflection sweep");
  return *std::min_element(sweep.begin(), sweep.end(),
                           [](const SweepPoint& a, const SweepPoint& b) {
                             return a.reflected_power < b.reflected_power;
                           });
}

}  // namespace afcmem
