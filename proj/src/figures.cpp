#include "afcmem/figures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "afcmem/csv.hpp"
#include "afcmem/photon_stats.hpp"
#include "afcmem/rng.hpp"
#include "afcmem/tomography.hpp"

namespace afcmem {
namespace {

constexpr double kNsPerS = 1e9;

// Seed salts, one per independent random consumer.
constexpr std::uint64_t kSaltG2Base = 0x6732u << 8;
constexpr std::uint64_t kSaltProcessTomo = 0x70726F63u;
constexpr std::uint64_t kSaltStateTomoBase = 0x73746174u << 4;

std::filesystem::path emit(const std::filesystem::path& out_dir, const char* name,
                           const CsvTable& table) {
  const std::filesystem::path path = out_dir / name;
  write_csv(path, table);
  return path;
}

// Single-comb cavity reflection response on the given grid.
std::vector<cdouble> comb_reflection(const Scenario& s, const FrequencyGrid& grid,
                                     const BackgroundSpec& background, const AfcSpec& afc,
                                     WarningList* warnings) {
  const AbsorptionSpectrum bg = make_background(grid, background);
  const AbsorptionSpectrum comb = carve_afc(bg, afc, warnings);
  const std::vector<double> phase = kramers_kronig_phase(comb, warnings);
  const std::vector<cdouble> transfer = single_pass_transfer(comb, phase, s.cavity.length_cm);
  return reflection_spectrum(s.cavity, transfer, grid).reflection;
}

}  // namespace

PathList export_comb(const Scenario& s, const std::filesystem::path& out_dir,
                     WarningList* warnings) {
  require_sections(s, {"afc", "storage"});
  const AbsorptionSpectrum bg = make_background(s.storage.grid, s.storage.background);
  const AbsorptionSpectrum comb = carve_afc(bg, s.afc, warnings);
  const std::vector<double> phase = kramers_kronig_phase(comb, warnings);

  CsvTable t;
  t.columns = {"detuning_Hz", "alpha_per_cm", "phase_rad_per_cm"};
  t.rows.reserve(comb.grid.bin_count);
  for (std::size_t i = 0; i < comb.grid.bin_count; ++i)
    t.rows.push_back({comb.grid.frequency(i), comb.alpha_per_cm[i], phase[i]});
  return {emit(out_dir, "comb_spectrum.csv", t)};
}

PathList run_reflection_sweep(const Scenario& s, const std::filesystem::path& out_dir,
                              WarningList* warnings) {
  require_sections(s, {"grid", "cavity", "background"});
  (void)warnings;
  const AbsorptionSpectrum bg = make_background(s.sweep_grid, s.background);
  const std::vector<SweepPoint> sweep = reflection_sweep(
      s.cavity, bg, std::numeric_limits<double>::infinity(), s.sweep_grid.frequencies());

  CsvTable t;
  t.columns = {"detuning_Hz", "reflected_power_norm"};
  t.rows.reserve(sweep.size());
  for (const SweepPoint& p : sweep) t.rows.push_back({p.detuning_hz, p.reflected_power});
  return {emit(out_dir, "reflection_sweep.csv", t)};
}

PathList run_detuning_sweep(const Scenario& s, const std::filesystem::path& out_dir,
                            WarningList* warnings) {
  require_sections(s, {"sweep", "afc", "cavity", "pulse", "background"});
  (void)warnings;
  StorageSetup base;
  base.grid = s.sweep.grid;
  base.background = s.background;
  base.afc = s.afc;
  base.cavity = s.cavity;
  base.pulse_fwhm_s = s.pulse_fwhm_s;
  base.pulse_peak_time_s = s.pulse_peak_time_s;
  base.n_echoes = 1;
  const std::vector<DetuningPoint> points = efficiency_vs_detuning(base, s.sweep.points());

  const double chain = s.loss_chain_factor();
  CsvTable t;
  t.columns = {"detuning_Hz", "efficiency", "system_efficiency", "prompt_fraction"};
  t.rows.reserve(points.size());
  for (const DetuningPoint& p : points)
    t.rows.push_back({p.detuning_hz, p.efficiency, p.efficiency * chain, p.prompt_fraction});
  return {emit(out_dir, "efficiency_vs_detuning.csv", t)};
}

PathList run_store(const Scenario& s, const std::filesystem::path& out_dir,
                   WarningList* warnings) {
  require_sections(s, {"storage", "afc", "cavity", "pulse"});
  const StorageSetup setup = s.storage_setup();
  const TemporalEnvelope input = gaussian_pulse(setup.pulse_fwhm_s, setup.pulse_peak_time_s,
                                                setup.grid);
  double peak_intensity = 0.0;
  for (const cdouble& v : input.samples) peak_intensity = std::max(peak_intensity, std::norm(v));

  const StorageResult result = run_storage(setup, warnings);

  CsvTable trace;
  trace.columns = {"time_ns", "intensity_norm"};
  trace.rows.reserve(result.output.samples.size());
  for (std::size_t j = 0; j < result.output.samples.size(); ++j) {
    const double time = result.output.t0_s + static_cast<double>(j) * result.output.time_step_s;
    trace.rows.push_back({time * kNsPerS, std::norm(result.output.samples[j]) / peak_intensity});
  }

  CsvTable windows;
  windows.columns = {"window", "center_ns", "start_ns", "end_ns", "energy_fraction",
                     "peak_time_ns"};
  for (std::size_t k = 0; k < result.report.windows.size(); ++k) {
    const EchoWindow& w = result.report.windows[k];
    windows.rows.push_back({k, w.center_s * kNsPerS, w.start_s * kNsPerS, w.end_s * kNsPerS,
                            w.energy_fraction, w.peak_time_s * kNsPerS});
  }

  CsvTable summary;
  summary.columns = {"metric", "value"};
  summary.rows.push_back({"storage_time_ns", result.report.storage_time_s * kNsPerS});
  summary.rows.push_back({"efficiency", result.report.efficiency});
  summary.rows.push_back({"system_efficiency", result.report.efficiency * s.loss_chain_factor()});
  summary.rows.push_back({"reflected_prompt_fraction", result.report.reflected_prompt_fraction});
  summary.rows.push_back({"transmitted_fraction", result.transmitted_fraction});

  return {emit(out_dir, "echo_trace.csv", trace), emit(out_dir, "echo_windows.csv", windows),
          emit(out_dir, "store_summary.csv", summary)};
}

PathList run_bandwidth_sweep(const Scenario& s, const std::filesystem::path& out_dir,
                             WarningList* warnings) {
  require_sections(s, {"bandwidth_sweep", "storage", "afc", "cavity", "pulse"});
  (void)warnings;
  StorageSetup base = s.storage_setup();
  base.grid = s.bandwidth_sweep.grid;
  base.n_echoes = 1;
  std::vector<BandwidthPoint> points;
  points.reserve(s.bandwidth_sweep.bandwidths_hz.size());
  for (std::size_t i = 0; i < s.bandwidth_sweep.bandwidths_hz.size(); ++i) {
    BandwidthPoint p;
    p.bandwidth_hz = s.bandwidth_sweep.bandwidths_hz[i];
    p.tooth_spacing_hz = s.bandwidth_sweep.tooth_spacings_hz[i];
    points.push_back(p);
  }
  points = efficiency_vs_bandwidth(base, std::move(points), s.bandwidth_sweep.pulse_fill);

  CsvTable t;
  t.columns = {"bandwidth_Hz", "tooth_spacing_Hz", "storage_time_ns", "efficiency",
               "time_bandwidth_product", "eta_percent_times_tb"};
  for (const BandwidthPoint& p : points) {
    const TbReport tb = time_bandwidth_product(p.storage_time_s, p.bandwidth_hz, p.efficiency);
    t.rows.push_back({p.bandwidth_hz, p.tooth_spacing_hz, p.storage_time_s * kNsPerS,
                      p.efficiency, tb.tb, tb.eta_times_tb});
  }
  return {emit(out_dir, "bandwidth_sweep.csv", t)};
}

PathList run_qubit(const Scenario& s, const std::filesystem::path& out_dir,
                   WarningList* warnings) {
  require_sections(s, {"qubit", "storage", "afc", "cavity"});
  const FrequencyGrid& grid = s.qubit.grid;
  const TimeBinEncoding& enc = s.qubit.encoding;
  const double tau1 = 1.0 / s.afc.tooth_spacing_hz;

  // Recall-time windows: every output bin sits one storage time after its
  // input bin.
  TimeBinEncoding recalled = enc;
  recalled.first_bin_time_s += tau1;

  CsvTable windows;
  windows.columns = {"state", "analysis", "detail", "early", "middle", "late"};

  const std::vector<cdouble> response =
      comb_reflection(s, grid, s.storage.background, s.afc, warnings);
  auto stored = [&](const QubitState& q) {
    const TemporalEnvelope in = encode(q, enc, grid, warnings);
    return propagate(in, grid, response);
  };

  // Z basis: direct early/late discrimination of the recalled envelope.
  double f_z = 0.0;
  for (const char* name : {"Z+", "Z-"}) {
    const QubitState q = QubitState::from_name(name);
    const WindowTriple w = direct_windows(stored(q), recalled);
    windows.rows.push_back({name, "direct", "recall", w.early, w.middle, w.late});
    const double total = w.early + w.late;
    const double correct = (name[0] == 'Z' && name[1] == '+') ? w.early : w.late;
    f_z += total > 0.0 ? correct / total : 0.0;
  }
  f_z /= 2.0;

  // Equator states, double-comb analysis: the second grating recalls the
  // early bin one bin-separation later, so both bins overlap in the middle
  // window with amplitude a_early*exp(i*phi_rel) + a_late (a comb shifted by
  // phi emits its echo with phase +phi).  Projection onto the orthogonal
  // outcome is the same run with the offset advanced by pi.
  AfcSpec comb2 = s.afc;
  comb2.tooth_spacing_hz = s.qubit.second_tooth_spacing_hz;
  DoubleCombSetup dc;
  dc.grid = grid;
  dc.background = s.storage.background;
  dc.comb1 = s.afc;
  dc.comb2 = comb2;
  dc.cavity = s.cavity;
  dc.encoding = enc;

  const char* equator[] = {"X+", "X-", "Y+", "Y-"};
  double f_xy_dc = 0.0;
  for (const char* name : equator) {
    const QubitState q = QubitState::from_name(name);
    const double basis_phase =
        s.qubit.relative_comb_phase_rad + (name[0] == 'Y' ? -kPi / 2.0 : 0.0);
    const double sign = name[1] == '+' ? 0.0 : kPi;  // orthogonal projection
    const WindowTriple hit = analyze_double_comb(q, dc, basis_phase + sign, warnings);
    const WindowTriple miss = analyze_double_comb(q, dc, basis_phase + sign + kPi, warnings);
    windows.rows.push_back({name, "double_comb", "project_parallel", hit.early, hit.middle,
                            hit.late});
    windows.rows.push_back({name, "double_comb", "project_orthogonal", miss.early, miss.middle,
                            miss.late});
    const double total = hit.middle + miss.middle;
    f_xy_dc += total > 0.0 ? hit.middle / total : 0.0;
  }
  f_xy_dc /= 4.0;

  // Interferometer cross-check on the single-comb recall; the mixed port
  // interferes constructively for the +1 eigenstate of the analyzed basis.
  double f_xy_if = 0.0;
  for (const char* name : equator) {
    const QubitState q = QubitState::from_name(name);
    AnalyzerConfig cfg = s.qubit.analyzer;
    cfg.phase_rad += name[0] == 'Y' ? kPi / 2.0 : 0.0;
    const AnalyzerResult r = analyze_interferometer(stored(q), cfg, recalled, grid);
    windows.rows.push_back({name, "interferometer", "port_plus", r.port_plus.early,
                            r.port_plus.middle, r.port_plus.late});
    windows.rows.push_back({name, "interferometer", "port_minus", r.port_minus.early,
                            r.port_minus.middle, r.port_minus.late});
    const double total = r.port_plus.middle + r.port_minus.middle;
    const double correct = name[1] == '+' ? r.port_plus.middle : r.port_minus.middle;
    f_xy_if += total > 0.0 ? correct / total : 0.0;
  }
  f_xy_if /= 4.0;

  const FidelityReport rep = qubit_fidelity(f_z, f_xy_dc);
  CsvTable fid;
  fid.columns = {"metric", "value"};
  fid.rows.push_back({"f_z", rep.f_z});
  fid.rows.push_back({"f_xy_double_comb", f_xy_dc});
  fid.rows.push_back({"f_xy_interferometer", f_xy_if});
  fid.rows.push_back({"f_avg", rep.f_avg});
  fid.rows.push_back({"mean_photon_number", enc.mean_photon_number});

  return {emit(out_dir, "qubit_windows.csv", windows), emit(out_dir, "qubit_fidelity.csv", fid)};
}

PathList run_g2(const Scenario& s, const std::filesystem::path& out_dir,
                WarningList* warnings) {
  require_sections(s, {"source", "storage", "afc", "cavity", "pulse"});

  CsvTable t;
  t.columns = {"storage_time_ns", "g2", "stderr", "violated"};
  CsvTable detail;
  detail.columns = {"storage_time_ns", "memory_efficiency", "signal_efficiency",
                    "g2_analytic", "g2", "stderr", "margin_sigmas"};

  for (std::size_t k = 0; k < s.source.storage_times_s.size(); ++k) {
    const double tau = s.source.storage_times_s[k];
    StorageSetup setup = s.storage_setup();
    setup.afc.tooth_spacing_hz = 1.0 / tau;
    setup.n_echoes = 1;  // matches the per-storage-time validation
    const double eta = run_storage(setup, warnings).report.efficiency;

    PairSourceConfig cfg = s.source.config;
    cfg.signal_channel_efficiency = s.source.signal_coupling * eta;
    const CorrelationResult mc =
        g2_monte_carlo(cfg, s.source.n_windows, derive_seed(s.seed, kSaltG2Base + k), tau,
                       warnings);
    const CsVerdict verdict = cauchy_schwarz_check(mc);

    t.rows.push_back({tau * kNsPerS, mc.g2, mc.standard_error, verdict.violated ? 1.0 : 0.0});
    detail.rows.push_back({tau * kNsPerS, eta, cfg.signal_channel_efficiency, g2_analytic(cfg),
                           mc.g2, mc.standard_error, verdict.margin_sigmas});
  }
  return {emit(out_dir, "g2_vs_storage_time.csv", t), emit(out_dir, "g2_detail.csv", detail)};
}

PathList run_tomography(const Scenario& s, const std::filesystem::path& out_dir, TomoPart part,
                        WarningList* warnings) {
  require_sections(s, {"tomography"});
  (void)warnings;
  const TomographySection& cfg = s.tomography;
  const Matrix4 chi_true = memory_channel_chi(cfg.f_z, cfg.f_xy);
  const Channel channel = channel_from_chi(chi_true);

  PathList files;
  const bool want_states = part == TomoPart::all || part == TomoPart::states;
  const bool want_chi = part == TomoPart::all || part == TomoPart::chi;
  const bool want_bloch = part == TomoPart::all || part == TomoPart::bloch;

  if (want_states) {
    const char* names[] = {"Z+", "Z-", "X+", "X-", "Y+", "Y-"};
    CsvTable mats;
    mats.columns = {"state", "kind", "row", "col", "real", "imag"};
    CsvTable fids;
    fids.columns = {"metric", "value"};
    auto push_matrix = [&](const char* state, const char* kind, const Matrix2& m) {
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          mats.rows.push_back({state, kind, r, c, m(r, c).real(), m(r, c).imag()});
    };
    double f_sum = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
      const QubitState q = QubitState::from_name(names[i]);
      const Matrix2 rho_in = density_matrix(q);
      const Matrix2 rho_channel = apply_channel(chi_true, rho_in);
      Matrix2 rho_out = rho_channel;
      if (cfg.shots > 0) {
        const std::uint64_t seed_i = derive_seed(s.seed, kSaltStateTomoBase + i);
        std::vector<MeasurementRecord> records;
        for (int b = 0; b < 3; ++b)
          records.push_back(simulate_measurement(rho_channel, static_cast<MeasBasis>(b),
                                                 cfg.shots, derive_seed(seed_i, b)));
        rho_out = reconstruct_state(records);
      }
      push_matrix(names[i], "input", rho_in);
      push_matrix(names[i], "output", rho_out);
      const double f = state_fidelity(rho_out, q);
      fids.rows.push_back({std::string("F(") + names[i] + ")", f});
      f_sum += f;
    }
    fids.rows.push_back({"average", f_sum / 6.0});
    files.push_back(emit(out_dir, "density_matrices.csv", mats));
    files.push_back(emit(out_dir, "state_fidelities.csv", fids));
  }

  if (want_chi || want_bloch) {
    const Matrix4 chi = process_tomography(channel, cfg.shots,
                                           derive_seed(s.seed, kSaltProcessTomo),
                                           cfg.six_input);
    if (want_chi) {
      const char* pauli_names[] = {"I", "X", "Y", "Z"};
      CsvTable t;
      t.columns = {"m", "n", "real", "imag"};
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
          t.rows.push_back({pauli_names[m], pauli_names[n], chi(m, n).real(), chi(m, n).imag()});
      files.push_back(emit(out_dir, "chi_matrix.csv", t));
    }
    if (want_bloch) {
      const BlochCrossSections cross = bloch_deformation(chi, cfg.bloch_samples);
      CsvTable t;
      t.columns = {"plane", "in_a", "in_b", "out_a", "out_b"};
      auto push_plane = [&](const char* plane, const std::vector<BlochPoint>& pts) {
        for (const BlochPoint& p : pts)
          t.rows.push_back({plane, p.in_a, p.in_b, p.out_a, p.out_b});
      };
      push_plane("xy", cross.xy);
      push_plane("xz", cross.xz);
      push_plane("yz", cross.yz);
      files.push_back(emit(out_dir, "bloch_cross_sections.csv", t));
    }
  }
  return files;
}

namespace {

template <typename Fn>
PathList with_figure_context(const std::string& id, Fn&& fn) {
  const std::string prefix = "figure " + id + ": ";
  try {
    return fn();
  } catch (const ScenarioError& e) {
    std::vector<std::string> errors;
    errors.reserve(e.errors().size());
    for (const std::string& msg : e.errors()) errors.push_back(prefix + msg);
    throw ScenarioError(std::move(errors));
  } catch (const DomainError& e) {
    throw DomainError(prefix + e.what());
  } catch (const NoSolutionError& e) {
    throw NoSolutionError(prefix + e.what());
  } catch (const UnsupportedError& e) {
    throw UnsupportedError(prefix + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(prefix + e.what());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(prefix + e.what());
  }
}

}  // namespace

FigureRun run_figure(const std::string& figure_id, const Scenario& s,
                     const std::filesystem::path& scenario_path,
                     const std::filesystem::path& out_dir, WarningList* warnings) {
  FigureRun run;
  run.files = with_figure_context(figure_id, [&]() -> PathList {
    if (figure_id == "2a") return run_reflection_sweep(s, out_dir, warnings);
    if (figure_id == "2b") return run_detuning_sweep(s, out_dir, warnings);
    if (figure_id == "2c") return run_store(s, out_dir, warnings);
    if (figure_id == "3") return run_g2(s, out_dir, warnings);
    if (figure_id == "4a") return run_tomography(s, out_dir, TomoPart::states, warnings);
    if (figure_id == "4b") return run_tomography(s, out_dir, TomoPart::chi, warnings);
    if (figure_id == "4c") return run_tomography(s, out_dir, TomoPart::bloch, warnings);
    throw ConfigError("unknown figure id (known: 2a, 2b, 2c, 3, 4a, 4b, 4c)");
  });
  run.manifest = finalize_manifest(scenario_path, s.seed, run.files, out_dir);
  return run;
}

RunManifest finalize_manifest(const std::filesystem::path& scenario_path, std::uint64_t seed,
                              const PathList& files, const std::filesystem::path& out_dir) {
  RunManifest manifest = make_manifest(scenario_path, seed);
  for (const std::filesystem::path& file : files) add_output(manifest, file, out_dir);
  write_manifest(manifest, out_dir / "manifest.json");
  return manifest;
}

}  // namespace afcmem
