#pragma once

#include <string>
#include <vector>

#include "afcmem/common.hpp"
#include "afcmem/pulse_engine.hpp"

namespace afcmem {

// Two-level state over the early/late temporal modes.
struct QubitState {
  cdouble a_e{1.0, 0.0};
  cdouble a_l{0.0, 0.0};
  static QubitState z_plus();
  static QubitState z_minus();
  static QubitState x_plus();
  static QubitState x_minus();
  static QubitState y_plus();
  static QubitState y_minus();
  // Accepts "Z+", "Z-", "X+", "X-", "Y+", "Y-".
  static QubitState from_name(const std::string& name);
};

struct TimeBinEncoding {
  double bin_separation_s = 0.0;
  double mode_fwhm_s = 0.0;
  double first_bin_time_s = 0.0;
  double mean_photon_number = 1.0;  // attenuated-pulse scenarios
};

// a_e*g(t - t_e) + a_l*g(t - t_l) with unit-energy Gaussian modes; total
// energy 1.  Warns when the modes overlap beyond 10% of mode energy.
TemporalEnvelope encode(const QubitState& q, const TimeBinEncoding& enc,
                        const FrequencyGrid& grid, WarningList* warnings = nullptr);

struct AnalyzerConfig {
  double delay_s = 0.0;             // arm-delay, matched to the bin separation
  double phase_rad = 0.0;           // long-arm phase
  double splitter_imbalance = 0.0;  // amplitude asymmetry, |x| < 0.5
};

struct WindowTriple {
  double early = 0.0;
  double middle = 0.0;
  double late = 0.0;
};

struct AnalyzerResult {
  WindowTriple port_plus;   // mixed port: short and long arm interfere
  WindowTriple port_minus;  // difference port
};

// Two-port unbalanced-interferometer analysis of a time-bin envelope.
// Windows of window_width_s (0 selects 0.75x mode FWHM) sit at first_bin_time,
// +delay, +2*delay.  Energies are normalized to the envelope energy.
AnalyzerResult analyze_interferometer(const TemporalEnvelope& env, const AnalyzerConfig& cfg,
                                      const TimeBinEncoding& enc, const FrequencyGrid& grid,
                                      double window_width_s = 0.0);

// Direct-detection early/late discrimination (Z-basis analysis): energies in
// the two bin windows, normalized to the envelope energy.
WindowTriple direct_windows(const TemporalEnvelope& env, const TimeBinEncoding& enc,
                            double window_width_s = 0.0);

struct DoubleCombSetup {
  FrequencyGrid grid;
  BackgroundSpec background;
  AfcSpec comb1;  // storage time tau1 = 1/delta1
  AfcSpec comb2;  // tau2 = tau1 + bin separation
  CavityConfig cavity;
  TimeBinEncoding encoding;
  double window_width_s = 0.0;
};

// Stores the encoded qubit through the superposed double grating and reads
// three output windows at first_bin + tau1, + tau2, and late + tau2; the
// middle window interferes with phase set by relative_comb_phase.
WindowTriple analyze_double_comb(const QubitState& q, DoubleCombSetup setup,
                                 double relative_comb_phase_rad,
                                 WarningList* warnings = nullptr);

struct FidelityReport {
  double f_z = 0.0;
  double f_xy = 0.0;
  double f_avg = 0.0;  // F_z/3 + 2*F_xy/3
};

FidelityReport qubit_fidelity(double f_z, double f_xy);

// Tabulated intercept-resend bound for attenuated pulses; exact lookup only,
// unknown (mu, eta) pairs are an error rather than an interpolation.
double classical_bound(double mu, double eta);
bool exceeds_bound(double fidelity, double bound);

struct TbReport {
  double tb = 0.0;
  double eta_times_tb = 0.0;  // eta in percent, per convention
};

TbReport time_bandwidth_product(double storage_time_s, double bandwidth_hz, double eta);

}  // namespace afcmem
