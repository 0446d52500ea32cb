#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "afcmem/cavity.hpp"
#include "afcmem/photon_stats.hpp"
#include "afcmem/pulse_engine.hpp"
#include "afcmem/spectral_medium.hpp"
#include "afcmem/timebin_qubit.hpp"
#include "afcmem/toml_lite.hpp"

namespace afcmem {

// Carries every failed invariant of a scenario file, not just the first.
class ScenarioError : public ConfigError {
 public:
  explicit ScenarioError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

struct StorageSection {
  FrequencyGrid grid;          // centered on the comb
  BackgroundSpec background;   // centered on the comb as well
  int n_echoes = 3;
};

struct SweepSection {
  double start_hz = 0.0;
  double stop_hz = 0.0;
  double step_hz = 0.0;
  FrequencyGrid grid;  // per-point grid, re-centered on each detuning
  std::vector<double> points() const;
};

struct BandwidthSweepSection {
  std::vector<double> bandwidths_hz;
  std::vector<double> tooth_spacings_hz;  // paired per index
  FrequencyGrid grid;
  double pulse_fill = 0.9;
};

struct QubitSection {
  TimeBinEncoding encoding;
  FrequencyGrid grid;                     // centered on the comb
  double second_tooth_spacing_hz = 0.0;   // second grating: 1/delta2 = 1/delta1 + bin separation
  double relative_comb_phase_rad = 0.0;
  AnalyzerConfig analyzer;
};

struct SourceSection {
  PairSourceConfig config;       // signal_channel_efficiency left at the bare coupling
  double signal_coupling = 1.0;  // multiplied by the simulated memory efficiency per point
  std::uint64_t n_windows = 0;
  std::vector<double> storage_times_s;
};

struct TomographySection {
  double f_z = 1.0;
  double f_xy = 1.0;
  std::uint64_t shots = 0;  // 0 = exact probabilities
  int bloch_samples = 64;
  bool six_input = false;
};

struct Scenario {
  std::uint64_t seed = 1;

  FrequencyGrid sweep_grid;   // [grid]: reflection-sweep axis
  CavityConfig cavity;        // [cavity]
  BackgroundSpec background;  // [background]: the inhomogeneous line
  AfcSpec afc;                // [afc]
  double pulse_fwhm_s = 0.0;  // [pulse]
  double pulse_peak_time_s = 0.0;
  double loss_splitter = 1.0;  // [loss_chain]: fixed detection-path factors
  double loss_coupling = 1.0;

  StorageSection storage;               // [storage]
  SweepSection sweep;                   // [sweep]
  BandwidthSweepSection bandwidth_sweep;  // [bandwidth_sweep]
  QubitSection qubit;                   // [qubit]
  SourceSection source;                 // [source]
  TomographySection tomography;         // [tomography]

  bool has_grid = false;
  bool has_cavity = false;
  bool has_background = false;
  bool has_afc = false;
  bool has_pulse = false;
  bool has_loss_chain = false;
  bool has_storage = false;
  bool has_sweep = false;
  bool has_bandwidth_sweep = false;
  bool has_qubit = false;
  bool has_source = false;
  bool has_tomography = false;

  double loss_chain_factor() const { return loss_splitter * loss_coupling; }

  // Assembles the echo experiment from [storage], [afc], [cavity], [pulse].
  StorageSetup storage_setup() const;
};

// Parses and validates; throws ScenarioError listing every violated invariant.
Scenario load_scenario(const std::filesystem::path& path);
Scenario load_scenario_text(const std::string& text);

// Refines every grid: span x scale, bins x scale^2 (bin width and time step
// both shrink by scale).  scale must be a power-of-two >= 1.
void scale_resolution(Scenario& scenario, double scale);

// Throws ScenarioError naming each section a command requires but the file
// lacks, e.g. "missing required section [afc]".
void require_sections(const Scenario& scenario, const std::vector<std::string>& sections);

}  // namespace afcmem
