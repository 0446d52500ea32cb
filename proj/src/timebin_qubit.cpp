#include "afcmem/timebin_qubit.hpp"

#include <cmath>
#include <map>

#include "afcmem/fft.hpp"
#include "afcmem/kernels.hpp"

namespace afcmem {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

double window_energy(const std::vector<double>& intensity, double dt, double t0, double center,
                     double width) {
  const std::size_t n = intensity.size();
  const auto lo = static_cast<std::size_t>(std::max(0.0, std::ceil((center - width / 2.0 - t0) / dt)));
  double e = 0.0;
  for (std::size_t j = lo; j < n; ++j) {
    if (t0 + static_cast<double>(j) * dt > center + width / 2.0) break;
    e += intensity[j];
  }
  return e * dt;
}

// Exact band-limited delay via the spectral shift theorem.
std::vector<cdouble> delayed(const std::vector<cdouble>& samples, const FrequencyGrid& grid,
                             double delay_s) {
  std::vector<cdouble> out = samples;
  const std::size_t n = out.size();
  for (std::size_t j = 1; j < n; j += 2) out[j] = -out[j];
  fft::forward(out.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = (static_cast<double>(i) - static_cast<double>(n / 2)) * grid.bin_width();
    const double ph = -kTwoPi * f * delay_s;
    out[i] *= cdouble(std::cos(ph), std::sin(ph));
  }
  fft::backward(out.data(), n);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) out[j] *= (j % 2 ? -inv : inv);
  return out;
}

WindowTriple three_windows(const std::vector<cdouble>& samples, double dt, double t0,
                           double first_center, double separation, double width, double norm) {
  std::vector<double> intensity(samples.size());
  kernels::mag2(intensity.data(), samples.data(), samples.size());
  WindowTriple w;
  w.early = window_energy(intensity, dt, t0, first_center, width) / norm;
  w.middle = window_energy(intensity, dt, t0, first_center + separation, width) / norm;
  w.late = window_energy(intensity, dt, t0, first_center + 2.0 * separation, width) / norm;
  return w;
}

}  // namespace

QubitState QubitState::z_plus() { return {1.0, 0.0}; }
QubitState QubitState::z_minus() { return {0.0, 1.0}; }
QubitState QubitState::x_plus() { return {kInvSqrt2, kInvSqrt2}; }
QubitState QubitState::x_minus() { return {kInvSqrt2, -kInvSqrt2}; }
QubitState QubitState::y_plus() { return {kInvSqrt2, cdouble(0.0, kInvSqrt2)}; }
QubitState QubitState::y_minus() { return {kInvSqrt2, cdouble(0.0, -kInvSqrt2)}; }

QubitState QubitState::from_name(const std::string& name) {
  static const std::map<std::string, QubitState (*)()> table = {
      {"Z+", &QubitState::z_plus}, {"Z-", &QubitState::z_minus}, {"X+", &QubitState::x_plus},
      {"X-", &QubitState::x_minus}, {"Y+", &QubitState::y_plus}, {"Y-", &QubitState::y_minus}};
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown qubit state name: " + name);
  return it->second();
}

TemporalEnvelope encode(const QubitState& q, const TimeBinEncoding& enc,
                        const FrequencyGrid& grid, WarningList* warnings) {
  if (enc.bin_separation_s <= enc.mode_fwhm_s)
    throw ConfigError("bin separation must exceed the mode FWHM");
  const double norm2 = std::norm(q.a_e) + std::norm(q.a_l);
  if (std::abs(norm2 - 1.0) > 1e-12) throw ConfigError("qubit state must be normalized");

  const TemporalEnvelope early = gaussian_pulse(enc.mode_fwhm_s, enc.first_bin_time_s, grid);
  const TemporalEnvelope late =
      gaussian_pulse(enc.mode_fwhm_s, enc.first_bin_time_s + enc.bin_separation_s, grid);

  // Mode overlap (bins not orthogonal) beyond 10% of mode energy is suspect.
  double overlap = 0.0;
  for (std::size_t j = 0; j < early.samples.size(); ++j)
    overlap += (early.samples[j] * std::conj(late.samples[j])).real();
  overlap *= early.time_step_s;
  if (std::abs(overlap) > 0.1 && warnings)
    warnings->push_back({"bin-overlap", "early/late modes overlap beyond 10% of mode energy"});

  TemporalEnvelope env = early;
  for (std::size_t j = 0; j < env.samples.size(); ++j)
    env.samples[j] = q.a_e * early.samples[j] + q.a_l * late.samples[j];
  const double norm = 1.0 / std::sqrt(env.energy());
  kernels::cscale(env.samples.data(), env.samples.data(), norm, env.samples.size());
  return env;
}

AnalyzerResult analyze_interferometer(const TemporalEnvelope& env, const AnalyzerConfig& cfg,
                                      const TimeBinEncoding& enc, const FrequencyGrid& grid,
                                      double window_width_s) {
  if (std::abs(cfg.delay_s - enc.bin_separation_s) > enc.mode_fwhm_s)
    throw ConfigError("analyzer delay must match the bin separation within one mode FWHM");
  if (std::abs(cfg.splitter_imbalance) >= 0.5)
    throw ConfigError("splitter imbalance must stay below 0.5");

  const double ta = std::sqrt(0.5 + cfg.splitter_imbalance);
  const double ra = std::sqrt(0.5 - cfg.splitter_imbalance);
  const cdouble arm(std::cos(cfg.phase_rad), std::sin(cfg.phase_rad));

  const std::vector<cdouble> shifted = delayed(env.samples, grid, cfg.delay_s);
  std::vector<cdouble> plus(env.samples.size()), minus(env.samples.size());
  for (std::size_t j = 0; j < env.samples.size(); ++j) {
    plus[j] = ta * ra * (env.samples[j] + arm * shifted[j]);
    minus[j] = ta * ta * env.samples[j] - ra * ra * arm * shifted[j];
  }

  const double width = window_width_s > 0.0 ? window_width_s : 0.75 * enc.mode_fwhm_s;
  const double norm = env.energy();
  AnalyzerResult out;
  out.port_plus = three_windows(plus, env.time_step_s, env.t0_s, enc.first_bin_time_s,
                                cfg.delay_s, width, norm);
  out.port_minus = three_windows(minus, env.time_step_s, env.t0_s, enc.first_bin_time_s,
                                 cfg.delay_s, width, norm);
  return out;
}

WindowTriple direct_windows(const TemporalEnvelope& env, const TimeBinEncoding& enc,
                            double window_width_s) {
  const double width = window_width_s > 0.0 ? window_width_s : 0.75 * enc.mode_fwhm_s;
  std::vector<double> intensity(env.samples.size());
  kernels::mag2(intensity.data(), env.samples.data(), env.samples.size());
  WindowTriple w;
  w.early = window_energy(intensity, env.time_step_s, env.t0_s, enc.first_bin_time_s, width);
  w.middle = 0.0;
  w.late = window_energy(intensity, env.time_step_s, env.t0_s,
                         enc.first_bin_time_s + enc.bin_separation_s, width);
  const double norm = env.energy();
  w.early /= norm;
  w.late /= norm;
  return w;
}

WindowTriple analyze_double_comb(const QubitState& q, DoubleCombSetup setup,
                                 double relative_comb_phase_rad, WarningList* warnings) {
  const double tau1 = 1.0 / setup.comb1.tooth_spacing_hz;
  const double tau2 = 1.0 / setup.comb2.tooth_spacing_hz;
  if (std::abs((tau2 - tau1) - setup.encoding.bin_separation_s) > setup.grid.dt())
    throw ConfigError("double-comb storage-time difference must equal the bin separation");

  setup.comb2.comb_phase_offset_rad = setup.comb1.comb_phase_offset_rad + relative_comb_phase_rad;
  const AbsorptionSpectrum bg = make_background(setup.grid, setup.background);
  const AbsorptionSpectrum comb = carve_double_afc(bg, setup.comb1, setup.comb2, warnings);
  const std::vector<double> phase = kramers_kronig_phase(comb, warnings);
  const std::vector<cdouble> transfer = single_pass_transfer(comb, phase, setup.cavity.length_cm);
  const CavityResponse resp = reflection_spectrum(setup.cavity, transfer, setup.grid);

  const TemporalEnvelope in = encode(q, setup.encoding, setup.grid, warnings);
  const TemporalEnvelope out = propagate(in, setup.grid, resp.reflection);

  const double width =
      setup.window_width_s > 0.0 ? setup.window_width_s : 0.75 * setup.encoding.mode_fwhm_s;
  // Windows: early bin after tau1; overlap of early-after-tau2 with
  // late-after-tau1 (the interference window); late bin after tau2.
  return three_windows(out.samples, out.time_step_s, out.t0_s,
                       setup.encoding.first_bin_time_s + tau1, setup.encoding.bin_separation_s,
                       width, in.energy());
}

FidelityReport qubit_fidelity(double f_z, double f_xy) {
  return {f_z, f_xy, f_z / 3.0 + 2.0 * f_xy / 3.0};
}

double classical_bound(double mu, double eta) {
  struct Entry {
    double mu, eta, bound;
  };
  static const Entry table[] = {{0.7, 0.07, 0.803}};
  for (const Entry& e : table)
    if (std::abs(e.mu - mu) < 1e-12 && std::abs(e.eta - eta) < 1e-12) return e.bound;
  throw UnsupportedError("classical bound not tabulated for these (mu, eta); refusing to interpolate");
}

bool exceeds_bound(double fidelity, double bound) { return fidelity > bound; }

TbReport time_bandwidth_product(double storage_time_s, double bandwidth_hz, double eta) {
  if (storage_time_s <= 0.0 || bandwidth_hz <= 0.0) throw ConfigError("TB inputs must be positive");
  TbReport r;
  r.tb = storage_time_s * bandwidth_hz;
  r.eta_times_tb = eta * 100.0 * r.tb;
  return r;
}

}  // namespace afcmem
