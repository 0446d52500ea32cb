#pragma once

#include <vector>

#include "afcmem/cavity.hpp"
#include "afcmem/common.hpp"
#include "afcmem/grid.hpp"
#include "afcmem/spectral_medium.hpp"

namespace afcmem {

// Complex baseband envelope sampled at t = t0 + i*time_step on the time axis
// conjugate to a FrequencyGrid (time_step = 1/span, duration = 1/bin_width).
struct TemporalEnvelope {
  double time_step_s = 0.0;
  double t0_s = 0.0;
  std::vector<cdouble> samples;
  double energy() const;  // sum |E|^2 * dt
};

TemporalEnvelope gaussian_pulse(double fwhm_s, double peak_time_s, const FrequencyGrid& grid);

// Linear filter application: output = inverse transform of
// (transform(input) * response), with response sampled on the grid in
// monotone frequency order.
TemporalEnvelope propagate(const TemporalEnvelope& input, const FrequencyGrid& grid,
                           const std::vector<cdouble>& response);

struct EchoWindow {
  double center_s = 0.0;
  double start_s = 0.0;
  double end_s = 0.0;
  double energy_fraction = 0.0;  // window energy / input energy
  double peak_time_s = 0.0;      // parabolic-interpolated |E|^2 maximum
};

struct EchoReport {
  double storage_time_s = 0.0;
  std::vector<EchoWindow> windows;          // k = 0 is the prompt reflection
  double efficiency = 0.0;                  // first-echo window fraction
  double reflected_prompt_fraction = 0.0;   // k = 0 window fraction
};

// Integrates |envelope|^2 in windows centered at input_peak_time + k*tau,
// k = 0..n_echoes.  window_width must stay below tau (non-overlap).
EchoReport extract_echoes(const TemporalEnvelope& output, double input_energy, double tau_s,
                          int n_echoes, double window_width_s, double input_peak_time_s);

// One complete storage experiment: background + carved comb + cavity +
// Gaussian input pulse.
struct StorageSetup {
  FrequencyGrid grid;
  BackgroundSpec background;
  AfcSpec afc;
  CavityConfig cavity;
  double pulse_fwhm_s = 0.0;
  double pulse_peak_time_s = 0.0;
  int n_echoes = 3;
  double window_width_s = 0.0;  // 0 selects 3x pulse FWHM
};

struct StorageResult {
  EchoReport report;
  TemporalEnvelope output;
  double transmitted_fraction = 0.0;  // energy leaking through the rear facet
};

StorageResult run_storage(const StorageSetup& setup, WarningList* warnings = nullptr);

// First-echo efficiency of transmission through the bare comb (no mirrors).
double single_pass_efficiency(const StorageSetup& setup);

struct DetuningPoint {
  double detuning_hz = 0.0;
  double efficiency = 0.0;
  double prompt_fraction = 0.0;
};

// Moves the comb center (and the probe carrier with it) across the line.
std::vector<DetuningPoint> efficiency_vs_detuning(const StorageSetup& base,
                                                  const std::vector<double>& detunings_hz);

struct BandwidthPoint {
  double bandwidth_hz = 0.0;
  double tooth_spacing_hz = 0.0;  // paired storage time tau = 1/spacing
  double efficiency = 0.0;
  double storage_time_s = 0.0;
};

// Widens the comb while pairing each bandwidth with a storage time; the input
// pulse is rescaled to fill pulse_fill of the comb bandwidth.
std::vector<BandwidthPoint> efficiency_vs_bandwidth(const StorageSetup& base,
                                                    std::vector<BandwidthPoint> points,
                                                    double pulse_fill);

}  // namespace afcmem
