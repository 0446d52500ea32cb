#pragma once

#include <vector>

#include "afcmem/common.hpp"
#include "afcmem/grid.hpp"
#include "afcmem/spectral_medium.hpp"

namespace afcmem {

struct CavityConfig {
  double r1 = 0.0;  // front-facet intensity reflectivity
  double r2 = 0.0;  // rear-facet intensity reflectivity
  double length_cm = 0.0;
  double refractive_index = 1.0;
  double excess_round_trip_loss = 0.0;  // intensity fraction lost per round trip
  // Detuning of the nearest cavity resonance from the carrier; the comb of
  // resonances repeats at the free spectral range.
  double resonance_detuning_hz = 0.0;
};

struct CavityResponse {
  FrequencyGrid grid;
  std::vector<cdouble> reflection;    // measured output port
  std::vector<cdouble> intracavity;   // field circulating behind the front facet
  std::vector<cdouble> transmission;  // field leaking through the rear facet
};

void validate(const CavityConfig& cfg);

double free_spectral_range(const CavityConfig& cfg);

// pi*sqrt(rho)/(1-rho) with round-trip amplitude rho =
// sqrt(R1*R2)*exp(-mean_alpha*l)*sqrt(1-excess); returns 0 for a degenerate
// (mirrorless) config, throws DomainError when rho >= 1.
double finesse(const CavityConfig& cfg, double mean_alpha_per_cm);

// Uniform absorption satisfying R1 = R2*exp(-2*alpha*l).
double solve_matched_alpha(const CavityConfig& cfg);

// Steady-state two-mirror response composed with the per-bin medium transfer.
CavityResponse reflection_spectrum(const CavityConfig& cfg,
                                   const std::vector<cdouble>& medium_transfer,
                                   const FrequencyGrid& grid);

struct SweepPoint {
  double detuning_hz;
  double reflected_power;  // reflected energy / input energy
};

// Reflected energy of a transform-limited Gaussian probe centered at each
// detuning, normalized to input energy.  probe_fwhm_s = infinity selects the
// CW limit (point samples of |r|^2).
std::vector<SweepPoint> reflection_sweep(const CavityConfig& cfg,
                                         const AbsorptionSpectrum& background,
                                         double probe_fwhm_s,
                                         const std::vector<double>& detunings_hz);

// Location and value of the sweep minimum.
SweepPoint sweep_minimum(const std::vector<SweepPoint>& sweep);

}  // namespace afcmem
