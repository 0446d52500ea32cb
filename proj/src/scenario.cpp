#include "afcmem/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace afcmem {
namespace {

constexpr double kGhz = 1e9;
constexpr double kMhz = 1e6;
constexpr double kNs = 1e-9;

std::string join_errors(const std::vector<std::string>& errors) {
  std::ostringstream out;
  out << "scenario validation failed with " << errors.size() << " error(s):";
  for (const auto& e : errors) out << "\n  - " << e;
  return out.str();
}

const char* kind_name(ConfigValue::Kind kind) {
  switch (kind) {
    case ConfigValue::Kind::string: return "string";
    case ConfigValue::Kind::number: return "number";
    case ConfigValue::Kind::boolean: return "boolean";
    case ConfigValue::Kind::array: return "array";
  }
  return "value";
}

// Typed access to one section; records every type error, missing required
// key, and unknown key instead of stopping at the first.
class SectionReader {
 public:
  SectionReader(const ParsedConfig& cfg, std::string section, std::vector<std::string>& errors)
      : cfg_(cfg), section_(std::move(section)), errors_(errors) {}

  bool present() const { return cfg_.has_section(section_); }

  void error(const std::string& message) {
    errors_.push_back("[" + section_ + "] " + message);
  }

  double number(const std::string& key, double fallback) {
    const ConfigEntry* entry = get(key, ConfigValue::Kind::number, false);
    return entry ? entry->value.number : fallback;
  }

  bool require_number(const std::string& key, double& out) {
    const ConfigEntry* entry = get(key, ConfigValue::Kind::number, true);
    if (entry) out = entry->value.number;
    return entry != nullptr;
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const ConfigEntry* entry = get(key, ConfigValue::Kind::string, false);
    return entry ? entry->value.text : fallback;
  }

  bool flag(const std::string& key, bool fallback) {
    const ConfigEntry* entry = get(key, ConfigValue::Kind::boolean, false);
    return entry ? entry->value.flag : fallback;
  }

  std::vector<double> number_array(const std::string& key, bool required) {
    const ConfigEntry* entry = get(key, ConfigValue::Kind::array, required);
    std::vector<double> out;
    if (!entry) return out;
    for (const ConfigValue& item : entry->value.items) {
      if (item.kind != ConfigValue::Kind::number) {
        error(key + ": every array element must be a number");
        return {};
      }
      out.push_back(item.number);
    }
    if (out.empty()) error(key + ": array must not be empty");
    return out;
  }

  bool integer(const std::string& key, double fallback, std::uint64_t& out) {
    const double value = number(key, fallback);
    if (!(value >= 0.0) || std::floor(value) != value || value > 9.007199254740992e15) {
      error(key + ": must be a non-negative integer");
      return false;
    }
    out = static_cast<std::uint64_t>(value);
    return true;
  }

  // Reports unknown keys; call after all reads.
  void finish(std::initializer_list<const char*> known) {
    const auto sec = cfg_.sections.find(section_);
    if (sec == cfg_.sections.end()) return;
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, entry] : sec->second)
      if (allowed.find(key) == allowed.end())
        error("unknown key '" + key + "' (line " + std::to_string(entry.line) + ")");
  }

 private:
  const ConfigEntry* get(const std::string& key, ConfigValue::Kind kind, bool required) {
    const ConfigEntry* entry = cfg_.find(section_, key);
    if (!entry) {
      if (required) error("missing required key '" + key + "'");
      return nullptr;
    }
    if (entry->value.kind != kind) {
      error(key + ": expected a " + std::string(kind_name(kind)) + " (line " +
            std::to_string(entry->line) + ")");
      return nullptr;
    }
    return entry;
  }

  const ParsedConfig& cfg_;
  std::string section_;
  std::vector<std::string>& errors_;
};

void check_grid(SectionReader& reader, const FrequencyGrid& grid, const std::string& label) {
  if (grid.span_hz <= 0.0) reader.error(label + ": span must be positive");
  if (grid.bin_count < 2 || !is_power_of_two(grid.bin_count))
    reader.error(label + ": bins must be a power of two, at least 2");
}

FrequencyGrid read_grid(SectionReader& reader, double center_hz, double fallback_span_ghz,
                        double fallback_bins, const std::string& span_key = "span_ghz",
                        const std::string& bins_key = "bins") {
  FrequencyGrid grid;
  grid.center_hz = center_hz;
  grid.span_hz = reader.number(span_key, fallback_span_ghz) * kGhz;
  const double bins = reader.number(bins_key, fallback_bins);
  grid.bin_count = bins >= 2.0 && bins <= 1e9 && std::floor(bins) == bins
                       ? static_cast<std::size_t>(bins)
                       : 0;
  if (grid.bin_count == 0)
    reader.error(bins_key + ": must be an integer between 2 and 1e9");
  else
    check_grid(reader, grid, span_key + "/" + bins_key);
  return grid;
}

BackgroundSpec read_background(SectionReader& reader, const std::string& kind_key,
                               double center_hz) {
  BackgroundSpec spec;
  const std::string kind = reader.text(kind_key, "gaussian_line");
  if (kind == "none") spec.kind = BackgroundSpec::Kind::none;
  else if (kind == "gaussian_line") spec.kind = BackgroundSpec::Kind::gaussian_line;
  else if (kind == "flat_top") spec.kind = BackgroundSpec::Kind::flat_top;
  else reader.error(kind_key + ": must be one of none, gaussian_line, flat_top");
  spec.peak_alpha_per_cm = reader.number("peak_alpha_per_cm", 0.0);
  spec.line_center_hz = center_hz;
  spec.line_fwhm_hz = reader.number("fwhm_ghz", 0.0) * kGhz;
  spec.half_width_hz = reader.number("half_width_ghz", 0.0) * kGhz;
  if (spec.peak_alpha_per_cm < 0.0) reader.error("peak_alpha_per_cm: must be non-negative");
  if (spec.kind == BackgroundSpec::Kind::gaussian_line && spec.line_fwhm_hz <= 0.0)
    reader.error("fwhm_ghz: gaussian_line needs a positive FWHM");
  if (spec.kind == BackgroundSpec::Kind::flat_top && spec.half_width_hz <= 0.0)
    reader.error("half_width_ghz: flat_top needs a positive half width");
  return spec;
}

// Shared storage-experiment feasibility checks (comb + grid + pulse + echoes).
void check_storage_feasibility(std::vector<std::string>& errors, const std::string& label,
                               const FrequencyGrid& grid, const AfcSpec& afc,
                               double pulse_fwhm_s, double pulse_peak_s, int n_echoes,
                               double window_width_s) {
  auto fail = [&](const std::string& m) { errors.push_back(label + ": " + m); };
  if (grid.span_hz <= 0.0 || grid.bin_count < 2) return;  // grid errors already recorded
  if (afc.tooth_spacing_hz <= 0.0) return;                 // comb errors already recorded
  const double tau = 1.0 / afc.tooth_spacing_hz;
  if (grid.bin_width() > afc.tooth_spacing_hz / 8.0)
    fail("grid bin width must be at most tooth_spacing/8");
  if (grid.span_hz < 4.0 * afc.bandwidth_hz)
    fail("grid span must be at least 4x comb bandwidth");
  if (pulse_fwhm_s < 8.0 * grid.dt())
    fail("pulse FWHM must span at least 8 time steps");
  const double sigma = pulse_fwhm_s / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
  if (pulse_peak_s - 5.0 * sigma < 0.0)
    fail("pulse must fit 5 sigma before its peak; increase peak time");
  const double window = window_width_s > 0.0 ? window_width_s : 3.0 * pulse_fwhm_s;
  if (window >= tau) fail("echo windows overlap: window width must stay below 1/tooth_spacing");
  if (pulse_peak_s + n_echoes * tau + window / 2.0 > grid.duration())
    fail("echo train exceeds the time window; increase grid duration");
}

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> errors)
    : ConfigError(join_errors(errors)), errors_(std::move(errors)) {}

std::vector<double> SweepSection::points() const {
  std::vector<double> out;
  for (double v = start_hz; v <= stop_hz + 1e-6 * step_hz; v += step_hz) out.push_back(v);
  return out;
}

StorageSetup Scenario::storage_setup() const {
  StorageSetup setup;
  setup.grid = storage.grid;
  setup.background = storage.background;
  setup.afc = afc;
  setup.cavity = cavity;
  setup.pulse_fwhm_s = pulse_fwhm_s;
  setup.pulse_peak_time_s = pulse_peak_time_s;
  setup.n_echoes = storage.n_echoes;
  return setup;
}

Scenario load_scenario_text(const std::string& text) {
  const ParsedConfig cfg = parse_config(text);
  std::vector<std::string> errors;
  Scenario s;

  const std::set<std::string> recognized = {
      "",       "run",   "grid",    "cavity",          "background", "afc",
      "pulse",  "loss_chain", "storage", "sweep",      "bandwidth_sweep",
      "qubit",  "source", "tomography"};
  for (const auto& [name, entries] : cfg.sections) {
    if (recognized.find(name) == recognized.end())
      errors.push_back("[" + name + "] unknown section");
    else if (name.empty() && !entries.empty())
      errors.push_back("key '" + entries.begin()->first + "' appears before any section");
  }

  {
    SectionReader run(cfg, "run", errors);
    if (run.present()) run.integer("seed", 1.0, s.seed);
    run.finish({"seed"});
  }

  {
    SectionReader reader(cfg, "cavity", errors);
    s.has_cavity = reader.present();
    if (s.has_cavity) {
      reader.require_number("r1", s.cavity.r1);
      reader.require_number("r2", s.cavity.r2);
      reader.require_number("length_cm", s.cavity.length_cm);
      s.cavity.refractive_index = reader.number("index", 1.0);
      s.cavity.excess_round_trip_loss = reader.number("excess_loss", 0.0);
      s.cavity.resonance_detuning_hz = reader.number("resonance_detuning_ghz", 0.0) * kGhz;
      if (s.cavity.r1 < 0.0 || s.cavity.r1 > 1.0) reader.error("r1: R1 in [0,1]");
      if (s.cavity.r2 < 0.0 || s.cavity.r2 > 1.0) reader.error("r2: R2 in [0,1]");
      if (s.cavity.length_cm <= 0.0) reader.error("length_cm: must be positive");
      if (s.cavity.refractive_index < 1.0) reader.error("index: must be at least 1");
      if (s.cavity.excess_round_trip_loss < 0.0 || s.cavity.excess_round_trip_loss >= 1.0)
        reader.error("excess_loss: must lie in [0,1)");
      reader.finish({"r1", "r2", "length_cm", "index", "excess_loss",
                     "resonance_detuning_ghz"});
    }
  }

  {
    SectionReader reader(cfg, "afc", errors);
    s.has_afc = reader.present();
    if (s.has_afc) {
      s.afc.center_detuning_hz = reader.number("center_ghz", 0.0) * kGhz;
      double bw = 0.0, spacing = 0.0;
      reader.require_number("bandwidth_mhz", bw);
      reader.require_number("tooth_spacing_mhz", spacing);
      s.afc.bandwidth_hz = bw * kMhz;
      s.afc.tooth_spacing_hz = spacing * kMhz;
      s.afc.comb_finesse = reader.number("comb_finesse", 2.0);
      s.afc.peak_depth_per_cm = reader.number("peak_depth_per_cm", 0.0);
      s.afc.trough_depth_per_cm = reader.number("trough_depth_per_cm", 0.0);
      s.afc.comb_phase_offset_rad = reader.number("phase_offset_rad", 0.0);
      s.afc.tooth_blur_hz = reader.number("tooth_blur_mhz", 0.0) * kMhz;
      const std::string shape = reader.text("tooth_shape", "gaussian");
      if (shape == "gaussian") s.afc.tooth_shape = ToothShape::gaussian;
      else if (shape == "square") s.afc.tooth_shape = ToothShape::square;
      else reader.error("tooth_shape: must be gaussian or square");
      if (s.afc.tooth_spacing_hz <= 0.0) reader.error("tooth_spacing_mhz: must be positive");
      else if (s.afc.bandwidth_hz / s.afc.tooth_spacing_hz < 3.0)
        reader.error("bandwidth_mhz: comb must cover at least 3 teeth");
      if (s.afc.comb_finesse <= 1.0) reader.error("comb_finesse: must exceed 1");
      if (s.afc.trough_depth_per_cm < 0.0)
        reader.error("trough_depth_per_cm: must be non-negative");
      if (s.afc.peak_depth_per_cm > 0.0 &&
          s.afc.peak_depth_per_cm <= s.afc.trough_depth_per_cm)
        reader.error("peak_depth_per_cm: tooth peak must exceed trough");
      if (s.afc.tooth_blur_hz < 0.0) reader.error("tooth_blur_mhz: must be non-negative");
      reader.finish({"center_ghz", "bandwidth_mhz", "tooth_spacing_mhz", "comb_finesse",
                     "peak_depth_per_cm", "trough_depth_per_cm", "phase_offset_rad",
                     "tooth_blur_mhz", "tooth_shape"});
    }
  }

  {
    SectionReader reader(cfg, "grid", errors);
    s.has_grid = reader.present();
    if (s.has_grid) {
      const double center = reader.number("center_ghz", 0.0) * kGhz;
      s.sweep_grid = read_grid(reader, center, 65.536, 16384);
      reader.finish({"center_ghz", "span_ghz", "bins"});
    }
  }

  {
    SectionReader reader(cfg, "background", errors);
    s.has_background = reader.present();
    if (s.has_background) {
      const double center = reader.number("center_ghz", 0.0) * kGhz;
      s.background = read_background(reader, "kind", center);
      reader.finish({"kind", "peak_alpha_per_cm", "center_ghz", "fwhm_ghz", "half_width_ghz"});
      if (s.has_grid && s.background.kind == BackgroundSpec::Kind::gaussian_line &&
          s.background.line_fwhm_hz > 0.0 && s.sweep_grid.span_hz > 0.0 &&
          s.sweep_grid.span_hz < s.background.line_fwhm_hz)
        reader.error("fwhm_ghz: [grid] span is too narrow to contain the line FWHM");
    }
  }

  {
    SectionReader reader(cfg, "pulse", errors);
    s.has_pulse = reader.present();
    if (s.has_pulse) {
      double fwhm = 0.0;
      reader.require_number("fwhm_ns", fwhm);
      s.pulse_fwhm_s = fwhm * kNs;
      s.pulse_peak_time_s = reader.number("peak_time_ns", 0.0) * kNs;
      if (s.pulse_fwhm_s <= 0.0) reader.error("fwhm_ns: must be positive");
      if (s.pulse_peak_time_s < 0.0) reader.error("peak_time_ns: must be non-negative");
      reader.finish({"fwhm_ns", "peak_time_ns"});
    }
  }

  {
    SectionReader reader(cfg, "loss_chain", errors);
    s.has_loss_chain = reader.present();
    if (s.has_loss_chain) {
      s.loss_splitter = reader.number("splitter", 1.0);
      s.loss_coupling = reader.number("coupling", 1.0);
      if (s.loss_splitter <= 0.0 || s.loss_splitter > 1.0)
        reader.error("splitter: must lie in (0,1]");
      if (s.loss_coupling <= 0.0 || s.loss_coupling > 1.0)
        reader.error("coupling: must lie in (0,1]");
      reader.finish({"splitter", "coupling"});
    }
  }

  {
    SectionReader reader(cfg, "storage", errors);
    s.has_storage = reader.present();
    if (s.has_storage) {
      s.storage.grid = read_grid(reader, s.afc.center_detuning_hz, 4.096, 4096);
      s.storage.background = read_background(reader, "background", s.afc.center_detuning_hz);
      const double echoes = reader.number("n_echoes", 3.0);
      if (echoes < 1.0 || std::floor(echoes) != echoes || echoes > 64.0)
        reader.error("n_echoes: must be an integer in [1, 64]");
      else
        s.storage.n_echoes = static_cast<int>(echoes);
      reader.finish({"span_ghz", "bins", "background", "peak_alpha_per_cm", "fwhm_ghz",
                     "half_width_ghz", "n_echoes"});
      if (s.storage.background.kind == BackgroundSpec::Kind::gaussian_line &&
          s.storage.background.line_fwhm_hz > 0.0 && s.storage.grid.span_hz > 0.0 &&
          s.storage.grid.span_hz < s.storage.background.line_fwhm_hz)
        reader.error("fwhm_ghz: storage grid span is too narrow to contain the line FWHM");
    }
  }

  {
    SectionReader reader(cfg, "sweep", errors);
    s.has_sweep = reader.present();
    if (s.has_sweep) {
      double start = 0.0, stop = 0.0, step = 0.0;
      reader.require_number("start_ghz", start);
      reader.require_number("stop_ghz", stop);
      reader.require_number("step_ghz", step);
      s.sweep.start_hz = start * kGhz;
      s.sweep.stop_hz = stop * kGhz;
      s.sweep.step_hz = step * kGhz;
      if (s.sweep.step_hz <= 0.0) reader.error("step_ghz: must be positive");
      else if (s.sweep.stop_hz < s.sweep.start_hz)
        reader.error("stop_ghz: must be at least start_ghz");
      s.sweep.grid = read_grid(reader, 0.0, 8.192, 8192);
      reader.finish({"start_ghz", "stop_ghz", "step_ghz", "span_ghz", "bins"});
      if (s.has_background && s.background.kind == BackgroundSpec::Kind::gaussian_line &&
          s.background.line_fwhm_hz > 0.0 && s.sweep.grid.span_hz > 0.0 &&
          s.sweep.grid.span_hz < s.background.line_fwhm_hz)
        reader.error("span_ghz: sweep grid span is too narrow to contain the line FWHM");
    }
  }

  {
    SectionReader reader(cfg, "bandwidth_sweep", errors);
    s.has_bandwidth_sweep = reader.present();
    if (s.has_bandwidth_sweep) {
      auto bw = reader.number_array("bandwidths_mhz", true);
      auto spacing = reader.number_array("tooth_spacings_mhz", true);
      if (bw.size() != spacing.size())
        reader.error("tooth_spacings_mhz: must pair one spacing with every bandwidth");
      for (double v : bw) {
        if (v <= 0.0) { reader.error("bandwidths_mhz: entries must be positive"); break; }
        s.bandwidth_sweep.bandwidths_hz.push_back(v * kMhz);
      }
      for (double v : spacing) {
        if (v <= 0.0) { reader.error("tooth_spacings_mhz: entries must be positive"); break; }
        s.bandwidth_sweep.tooth_spacings_hz.push_back(v * kMhz);
      }
      s.bandwidth_sweep.grid = read_grid(reader, s.afc.center_detuning_hz, 32.768, 32768);
      s.bandwidth_sweep.pulse_fill = reader.number("pulse_fill", 0.9);
      if (s.bandwidth_sweep.pulse_fill <= 0.0 || s.bandwidth_sweep.pulse_fill > 1.0)
        reader.error("pulse_fill: must lie in (0,1]");
      reader.finish({"bandwidths_mhz", "tooth_spacings_mhz", "span_ghz", "bins",
                     "pulse_fill"});
    }
  }

  {
    SectionReader reader(cfg, "qubit", errors);
    s.has_qubit = reader.present();
    if (s.has_qubit) {
      double sep = 0.0, fwhm = 0.0;
      reader.require_number("bin_separation_ns", sep);
      reader.require_number("mode_fwhm_ns", fwhm);
      s.qubit.encoding.bin_separation_s = sep * kNs;
      s.qubit.encoding.mode_fwhm_s = fwhm * kNs;
      s.qubit.encoding.first_bin_time_s = reader.number("first_bin_time_ns", 0.0) * kNs;
      s.qubit.encoding.mean_photon_number = reader.number("mean_photon_number", 1.0);
      s.qubit.grid = read_grid(reader, s.afc.center_detuning_hz, 16.384, 16384);
      s.qubit.second_tooth_spacing_hz = reader.number("second_tooth_spacing_mhz", 0.0) * kMhz;
      s.qubit.relative_comb_phase_rad = reader.number("relative_comb_phase_rad", 0.0);
      s.qubit.analyzer.delay_s = s.qubit.encoding.bin_separation_s;
      s.qubit.analyzer.phase_rad = reader.number("analyzer_phase_rad", 0.0);
      s.qubit.analyzer.splitter_imbalance = reader.number("splitter_imbalance", 0.0);
      if (s.qubit.encoding.bin_separation_s <= 0.0)
        reader.error("bin_separation_ns: must be positive");
      if (s.qubit.encoding.mode_fwhm_s <= 0.0) reader.error("mode_fwhm_ns: must be positive");
      if (s.qubit.encoding.bin_separation_s <= s.qubit.encoding.mode_fwhm_s)
        reader.error("bin_separation_ns: bins must be separated by more than the mode FWHM");
      if (s.qubit.encoding.first_bin_time_s < 0.0)
        reader.error("first_bin_time_ns: must be non-negative");
      if (s.qubit.encoding.mean_photon_number <= 0.0)
        reader.error("mean_photon_number: must be positive");
      if (std::abs(s.qubit.analyzer.splitter_imbalance) >= 0.5)
        reader.error("splitter_imbalance: must satisfy |x| < 0.5");
      if (s.qubit.second_tooth_spacing_hz <= 0.0)
        reader.error("second_tooth_spacing_mhz: must be positive");
      reader.finish({"bin_separation_ns", "mode_fwhm_ns", "first_bin_time_ns",
                     "mean_photon_number", "span_ghz", "bins", "second_tooth_spacing_mhz",
                     "relative_comb_phase_rad", "analyzer_phase_rad", "splitter_imbalance"});
    }
  }

  {
    SectionReader reader(cfg, "source", errors);
    s.has_source = reader.present();
    if (s.has_source) {
      PairSourceConfig& src = s.source.config;
      reader.require_number("mean_pairs_per_window", src.mean_pairs_per_window);
      src.idler_channel_efficiency = reader.number("idler_efficiency", 1.0);
      s.source.signal_coupling = reader.number("signal_coupling", 1.0);
      src.signal_channel_efficiency = s.source.signal_coupling;
      src.dark_rate_signal_hz = reader.number("dark_rate_signal_hz", 0.0);
      src.dark_rate_idler_hz = reader.number("dark_rate_idler_hz", 0.0);
      src.coincidence_window_s = reader.number("coincidence_window_ns", 1.0) * kNs;
      src.repetition_rate_hz = reader.number("repetition_rate_mhz", 0.0) * kMhz;
      src.signal_bandwidth_hz = reader.number("signal_bandwidth_ghz", 0.0) * kGhz;
      src.idler_bandwidth_hz = reader.number("idler_bandwidth_ghz", 0.0) * kGhz;
      const std::string stats = reader.text("statistics", "thermal");
      if (stats == "thermal") src.statistics = PairStatistics::thermal;
      else if (stats == "poissonian") src.statistics = PairStatistics::poisson;
      else if (stats == "independent") src.statistics = PairStatistics::independent;
      else reader.error("statistics: must be thermal, poissonian, or independent");
      reader.integer("n_windows", 0.0, s.source.n_windows);
      for (double t : reader.number_array("storage_times_ns", true)) {
        if (t <= 0.0) { reader.error("storage_times_ns: entries must be positive"); break; }
        s.source.storage_times_s.push_back(t * kNs);
      }
      if (src.mean_pairs_per_window <= 0.0)
        reader.error("mean_pairs_per_window: must be positive");
      if (src.idler_channel_efficiency < 0.0 || src.idler_channel_efficiency > 1.0)
        reader.error("idler_efficiency: must lie in [0,1]");
      if (s.source.signal_coupling < 0.0 || s.source.signal_coupling > 1.0)
        reader.error("signal_coupling: must lie in [0,1]");
      if (src.dark_rate_signal_hz < 0.0 || src.dark_rate_idler_hz < 0.0)
        reader.error("dark rates must be non-negative");
      if (src.coincidence_window_s <= 0.0)
        reader.error("coincidence_window_ns: must be positive");
      if (s.source.n_windows < 10000)
        reader.error("n_windows: Monte Carlo needs at least 1e4 windows");
      reader.finish({"mean_pairs_per_window", "idler_efficiency", "signal_coupling",
                     "dark_rate_signal_hz", "dark_rate_idler_hz", "coincidence_window_ns",
                     "repetition_rate_mhz", "signal_bandwidth_ghz", "idler_bandwidth_ghz",
                     "statistics", "n_windows", "storage_times_ns"});
    }
  }

  {
    SectionReader reader(cfg, "tomography", errors);
    s.has_tomography = reader.present();
    if (s.has_tomography) {
      reader.require_number("f_z", s.tomography.f_z);
      reader.require_number("f_xy", s.tomography.f_xy);
      reader.integer("shots", 0.0, s.tomography.shots);
      const double samples = reader.number("bloch_samples", 64.0);
      if (samples < 4.0 || std::floor(samples) != samples || samples > 1e6)
        reader.error("bloch_samples: must be an integer in [4, 1e6]");
      else
        s.tomography.bloch_samples = static_cast<int>(samples);
      s.tomography.six_input = reader.flag("six_input", false);
      if (s.tomography.f_z < 0.0 || s.tomography.f_z > 1.0)
        reader.error("f_z: must lie in [0,1]");
      if (s.tomography.f_xy < 0.0 || s.tomography.f_xy > 1.0)
        reader.error("f_xy: must lie in [0,1]");
      if (s.tomography.f_z >= 0.0 && s.tomography.f_z <= 1.0 && s.tomography.f_xy >= 0.0 &&
          s.tomography.f_xy <= 1.0) {
        const double lz = 2.0 * s.tomography.f_z - 1.0;
        const double lx = 2.0 * s.tomography.f_xy - 1.0;
        if (1.0 + 2.0 * lx + lz < 0.0 || 1.0 - lz < 0.0 || 1.0 - 2.0 * lx + lz < 0.0)
          reader.error("f_z/f_xy: fidelity pair is not realizable by a Pauli channel");
      }
      reader.finish({"f_z", "f_xy", "shots", "bloch_samples", "six_input"});
    }
  }

  // Cross-section feasibility, only for combinations that are present.
  if (s.has_storage && s.has_afc && s.has_pulse)
    check_storage_feasibility(errors, "[storage]", s.storage.grid, s.afc, s.pulse_fwhm_s,
                              s.pulse_peak_time_s, s.storage.n_echoes, 0.0);
  if (s.has_sweep && s.has_afc && s.has_pulse) {
    FrequencyGrid probe = s.sweep.grid;
    probe.center_hz = s.sweep.start_hz;
    AfcSpec moved = s.afc;
    moved.center_detuning_hz = s.sweep.start_hz;
    check_storage_feasibility(errors, "[sweep]", probe, moved, s.pulse_fwhm_s,
                              s.pulse_peak_time_s, 1, 0.0);
  }
  if (s.has_bandwidth_sweep && s.has_afc &&
      !s.bandwidth_sweep.bandwidths_hz.empty() &&
      s.bandwidth_sweep.bandwidths_hz.size() == s.bandwidth_sweep.tooth_spacings_hz.size()) {
    for (std::size_t i = 0; i < s.bandwidth_sweep.bandwidths_hz.size(); ++i) {
      AfcSpec wide = s.afc;
      wide.bandwidth_hz = s.bandwidth_sweep.bandwidths_hz[i];
      wide.tooth_spacing_hz = s.bandwidth_sweep.tooth_spacings_hz[i];
      const double bw_pulse =
          kGaussianTimeBandwidth / (s.bandwidth_sweep.pulse_fill * wide.bandwidth_hz);
      const double window = std::min(3.0 * bw_pulse, 0.5 / wide.tooth_spacing_hz);
      check_storage_feasibility(errors, "[bandwidth_sweep] entry " + std::to_string(i),
                                s.bandwidth_sweep.grid, wide, bw_pulse,
                                s.pulse_peak_time_s, 1, window);
    }
  }
  if (s.has_qubit && s.has_afc) {
    const double dt = s.qubit.grid.span_hz > 0.0 ? s.qubit.grid.dt() : 0.0;
    if (dt > 0.0 && s.qubit.encoding.mode_fwhm_s < 8.0 * dt)
      errors.push_back("[qubit] mode_fwhm_ns: must span at least 8 time steps");
    if (s.afc.tooth_spacing_hz > 0.0 && s.qubit.second_tooth_spacing_hz > 0.0 && dt > 0.0) {
      const double tau1 = 1.0 / s.afc.tooth_spacing_hz;
      const double tau2 = 1.0 / s.qubit.second_tooth_spacing_hz;
      if (std::abs(tau2 - tau1 - s.qubit.encoding.bin_separation_s) > dt)
        errors.push_back(
            "[qubit] second_tooth_spacing_mhz: storage-time difference must equal the bin "
            "separation within one time step");
      if (s.qubit.grid.bin_width() > s.qubit.second_tooth_spacing_hz / 8.0)
        errors.push_back("[qubit] grid bin width must be at most tooth_spacing/8");
      const double last = s.qubit.encoding.first_bin_time_s +
                          s.qubit.encoding.bin_separation_s + tau2 +
                          2.0 * s.qubit.encoding.mode_fwhm_s;
      if (last > s.qubit.grid.duration())
        errors.push_back("[qubit] recall windows exceed the time window; increase bins");
    }
    if (s.qubit.grid.span_hz > 0.0 && s.qubit.grid.span_hz < 4.0 * s.afc.bandwidth_hz)
      errors.push_back("[qubit] grid span must be at least 4x comb bandwidth");
  }
  if (s.has_source && s.has_storage && s.has_afc && s.has_pulse) {
    for (double tau : s.source.storage_times_s) {
      AfcSpec per = s.afc;
      per.tooth_spacing_hz = 1.0 / tau;
      check_storage_feasibility(errors,
                                "[source] storage time " + std::to_string(tau / kNs) + " ns",
                                s.storage.grid, per, s.pulse_fwhm_s, s.pulse_peak_time_s, 1,
                                0.0);
    }
  }

  if (!errors.empty()) throw ScenarioError(std::move(errors));
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scenario_text(buffer.str());
}

void scale_resolution(Scenario& scenario, double scale) {
  const double exponent = std::log2(scale);
  if (!(scale >= 1.0) || std::floor(exponent) != exponent)
    throw ConfigError("resolution scale must be a power-of-two >= 1");
  const auto refine = [scale](FrequencyGrid& grid) {
    if (grid.bin_count == 0) return;
    grid.span_hz *= scale;
    grid.bin_count = static_cast<std::size_t>(
        static_cast<double>(grid.bin_count) * scale * scale);
  };
  refine(scenario.sweep_grid);
  refine(scenario.storage.grid);
  refine(scenario.sweep.grid);
  refine(scenario.bandwidth_sweep.grid);
  refine(scenario.qubit.grid);
}

void require_sections(const Scenario& scenario, const std::vector<std::string>& sections) {
  std::vector<std::string> missing;
  const auto need = [&](const std::string& name, bool present) {
    if (!present) missing.push_back("missing required section [" + name + "]");
  };
  for (const std::string& name : sections) {
    if (name == "grid") need(name, scenario.has_grid);
    else if (name == "cavity") need(name, scenario.has_cavity);
    else if (name == "background") need(name, scenario.has_background);
    else if (name == "afc") need(name, scenario.has_afc);
    else if (name == "pulse") need(name, scenario.has_pulse);
    else if (name == "loss_chain") need(name, scenario.has_loss_chain);
    else if (name == "storage") need(name, scenario.has_storage);
    else if (name == "sweep") need(name, scenario.has_sweep);
    else if (name == "bandwidth_sweep") need(name, scenario.has_bandwidth_sweep);
    else if (name == "qubit") need(name, scenario.has_qubit);
    else if (name == "source") need(name, scenario.has_source);
    else if (name == "tomography") need(name, scenario.has_tomography);
    else missing.push_back("unknown section requirement [" + name + "]");
  }
  if (!missing.empty()) throw ScenarioError(std::move(missing));
}

}  // namespace afcmem
