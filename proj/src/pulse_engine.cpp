#include "afcmem/pulse_engine.hpp"

#include <algorithm>
#include <cmath>

#include "afcmem/fft.hpp"
#include "afcmem/kernels.hpp"

namespace afcmem {
namespace {

constexpr double kLn2 = std::numbers::ln2;

// (-1)^j pre/post factors re-center the FFT so spectra use monotone bin order
// (bin i at frequency (i - N/2)*bin_width), matching FrequencyGrid layout.
void apply_filter(std::vector<cdouble>& samples, const std::vector<cdouble>& response) {
  const std::size_t n = samples.size();
  for (std::size_t j = 1; j < n; j += 2) samples[j] = -samples[j];
  fft::forward(samples.data(), n);
  kernels::cmul(samples.data(), samples.data(), response.data(), n);
  fft::backward(samples.data(), n);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) samples[j] *= (j % 2 ? -inv : inv);
}

double parabolic_peak(const std::vector<double>& y, std::size_t i) {
  if (i == 0 || i + 1 >= y.size()) return static_cast<double>(i);
  const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
  if (denom >= 0.0) return static_cast<double>(i);
  return static_cast<double>(i) + 0.5 * (y[i - 1] - y[i + 1]) / denom;
}

AbsorptionSpectrum carved_spectrum(const StorageSetup& setup, WarningList* warnings) {
  const AbsorptionSpectrum bg = make_background(setup.grid, setup.background);
  return carve_afc(bg, setup.afc, warnings);
}

}  // namespace

double TemporalEnvelope::energy() const {
  return kernels::energy(samples.data(), samples.size()) * time_step_s;
}

TemporalEnvelope gaussian_pulse(double fwhm_s, double peak_time_s, const FrequencyGrid& grid) {
  if (!grid.valid()) throw ConfigError("invalid frequency grid");
  const double dt = grid.dt();
  if (fwhm_s < 8.0 * dt)
    throw ConfigError("pulse FWHM must be at least 8 time steps for adequate sampling");
  const double sigma = fwhm_s / (2.0 * std::sqrt(2.0 * kLn2));
  if (peak_time_s < 5.0 * sigma || peak_time_s + 5.0 * sigma > grid.duration())
    throw ConfigError("pulse must fit in the time window with 5 sigma margins");
  TemporalEnvelope env{dt, 0.0, std::vector<cdouble>(grid.bin_count)};
  for (std::size_t j = 0; j < grid.bin_count; ++j) {
    const double t = grid.time(j) - peak_time_s;
    env.samples[j] = std::exp(-t * t / (2.0 * sigma * sigma));
  }
  const double norm = 1.0 / std::sqrt(env.energy());
  kernels::cscale(env.samples.data(), env.samples.data(), norm, env.samples.size());
  return env;
}

TemporalEnvelope propagate(const TemporalEnvelope& input, const FrequencyGrid& grid,
                           const std::vector<cdouble>& response) {
  if (input.samples.size() != grid.bin_count || response.size() != grid.bin_count)
    throw ConfigError("envelope, response, and grid sizes must agree");
  if (std::abs(input.time_step_s * grid.span_hz - 1.0) > 1e-9)
    throw ConfigError("envelope time step is not conjugate to the grid");
  TemporalEnvelope out = input;
  apply_filter(out.samples, response);
  return out;
}

EchoReport extract_echoes(const TemporalEnvelope& output, double input_energy, double tau_s,
                          int n_echoes, double window_width_s, double input_peak_time_s) {
  if (window_width_s >= tau_s) throw ConfigError("echo windows overlap: width must stay below tau");
  if (window_width_s <= 0.0) throw ConfigError("echo window width must be positive");
  if (input_energy <= 0.0) throw ConfigError("input energy must be positive");
  const std::size_t n = output.samples.size();
  std::vector<double> intensity(n);
  kernels::mag2(intensity.data(), output.samples.data(), n);

  EchoReport report;
  report.storage_time_s = tau_s;
  const double dt = output.time_step_s;
  for (int k = 0; k <= n_echoes; ++k) {
    EchoWindow w;
    w.center_s = input_peak_time_s + k * tau_s;
    w.start_s = w.center_s - window_width_s / 2.0;
    w.end_s = w.center_s + window_width_s / 2.0;
    const auto lo = static_cast<std::size_t>(std::max(0.0, std::ceil((w.start_s - output.t0_s) / dt)));
    const auto hi = std::min(n - 1, static_cast<std::size_t>(std::max(0.0, std::floor((w.end_s - output.t0_s) / dt))));
    double e = 0.0;
    std::size_t arg = lo;
    for (std::size_t j = lo; j <= hi && j < n; ++j) {
      e += intensity[j];
      if (intensity[j] > intensity[arg]) arg = j;
    }
    w.energy_fraction = e * dt / input_energy;
    w.peak_time_s = output.t0_s + parabolic_peak(intensity, arg) * dt;
    report.windows.push_back(w);
  }
  report.reflected_prompt_fraction = report.windows.front().energy_fraction;
  report.efficiency = report.windows.size() > 1 ? report.windows[1].energy_fraction : 0.0;
  return report;
}

StorageResult run_storage(const StorageSetup& setup, WarningList* warnings) {
  const AbsorptionSpectrum comb = carved_spectrum(setup, warnings);
  const std::vector<double> phase = kramers_kronig_phase(comb, warnings);
  const std::vector<cdouble> transfer = single_pass_transfer(comb, phase, setup.cavity.length_cm);
  const CavityResponse resp = reflection_spectrum(setup.cavity, transfer, setup.grid);

  const TemporalEnvelope input = gaussian_pulse(setup.pulse_fwhm_s, setup.pulse_peak_time_s, setup.grid);
  const double tau = 1.0 / setup.afc.tooth_spacing_hz;
  const double width = setup.window_width_s > 0.0 ? setup.window_width_s : 3.0 * setup.pulse_fwhm_s;

  StorageResult result;
  result.output = propagate(input, setup.grid, resp.reflection);
  result.report = extract_echoes(result.output, input.energy(), tau, setup.n_echoes, width,
                                 setup.pulse_peak_time_s);
  const TemporalEnvelope through = propagate(input, setup.grid, resp.transmission);
  result.transmitted_fraction = through.energy() / input.energy();
  return result;
}

double single_pass_efficiency(const StorageSetup& setup) {
  const AbsorptionSpectrum comb = carved_spectrum(setup, nullptr);
  const std::vector<double> phase = kramers_kronig_phase(comb);
  const std::vector<cdouble> transfer = single_pass_transfer(comb, phase, setup.cavity.length_cm);

  const TemporalEnvelope input = gaussian_pulse(setup.pulse_fwhm_s, setup.pulse_peak_time_s, setup.grid);
  const TemporalEnvelope out = propagate(input, setup.grid, transfer);
  const double tau = 1.0 / setup.afc.tooth_spacing_hz;
  const double width = setup.window_width_s > 0.0 ? setup.window_width_s : 3.0 * setup.pulse_fwhm_s;
  const EchoReport report =
      extract_echoes(out, input.energy(), tau, 1, width, setup.pulse_peak_time_s);
  return report.efficiency;
}

std::vector<DetuningPoint> efficiency_vs_detuning(const StorageSetup& base,
                                                  const std::vector<double>& detunings_hz) {
  std::vector<DetuningPoint> out;
  out.reserve(detunings_hz.size());
  for (const double det : detunings_hz) {
    StorageSetup setup = base;
    setup.grid.center_hz = det;  // probe carrier follows the comb center
    setup.afc.center_detuning_hz = det;
    const StorageResult r = run_storage(setup);
    out.push_back({det, r.report.efficiency, r.report.reflected_prompt_fraction});
  }
  return out;
}

std::vector<BandwidthPoint> efficiency_vs_bandwidth(const StorageSetup& base,
                                                    std::vector<BandwidthPoint> points,
                                                    double pulse_fill) {
  if (pulse_fill <= 0.0 || pulse_fill > 1.0)
    throw ConfigError("pulse fill fraction must lie in (0,1]");
  for (BandwidthPoint& p : points) {
    StorageSetup setup = base;
    setup.afc.bandwidth_hz = p.bandwidth_hz;
    setup.afc.tooth_spacing_hz = p.tooth_spacing_hz;
    const double spectral_fwhm = pulse_fill * p.bandwidth_hz;
    setup.pulse_fwhm_s = kGaussianTimeBandwidth / spectral_fwhm;
    setup.window_width_s = std::min(3.0 * setup.pulse_fwhm_s, 0.5 / p.tooth_spacing_hz);
    const StorageResult r = run_storage(setup);
    p.efficiency = r.report.efficiency;
    p.storage_time_s = 1.0 / p.tooth_spacing_hz;
  }
  return points;
}

}  // namespace afcmem
