#include "afcmem/spectral_medium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "afcmem/fft.hpp"

namespace afcmem {
namespace {

constexpr double kLn2 = std::numbers::ln2;

struct WindowBins {
  std::size_t lo, hi;  // inclusive bin range of the comb window
};

WindowBins window_bins(const FrequencyGrid& grid, double center_hz, double bandwidth_hz) {
  const double lo_f = center_hz - bandwidth_hz / 2.0;
  const double hi_f = center_hz + bandwidth_hz / 2.0;
  if (lo_f < grid.frequency(0) || hi_f > grid.frequency(grid.bin_count - 1))
    throw ConfigError("comb window exceeds frequency grid");
  return {grid.index_of(lo_f), grid.index_of(hi_f)};
}

// Unit-peak tooth pattern value at offset x from the comb center, including
// neighbor-tooth overlap and optional Gaussian blur of FWHM b.
double tooth_pattern(double x, const AfcSpec& spec) {
  const double delta = spec.tooth_spacing_hz;
  const double base_fwhm = delta / spec.comb_finesse;
  const double b = spec.tooth_blur_hz;
  const double m0 = std::round(x / delta);
  double reach = base_fwhm;  // distance beyond which a tooth stops contributing
  if (spec.tooth_shape == ToothShape::square)
    reach = base_fwhm / 2.0 + 4.0 * (b > 0 ? b / (2.0 * std::sqrt(2.0 * kLn2)) : 0.0);
  else
    reach = 2.0 * std::sqrt(base_fwhm * base_fwhm + b * b);
  const int spread = 1 + static_cast<int>(reach / delta);
  double p = 0.0;
  for (int k = -spread; k <= spread; ++k) {
    const double u = x - (m0 + k) * delta;
    if (spec.tooth_shape == ToothShape::square) {
      const double w = base_fwhm;  // square tooth width = FWHM
      if (b <= 0.0) {
        p += (std::abs(u) <= w / 2.0) ? 1.0 : 0.0;
      } else {
        const double sigma = b / (2.0 * std::sqrt(2.0 * kLn2));
        const double s2 = sigma * std::numbers::sqrt2;
        p += 0.5 * (std::erf((u + w / 2.0) / s2) - std::erf((u - w / 2.0) / s2));
      }
    } else {
      const double fwhm_eff = std::sqrt(base_fwhm * base_fwhm + b * b);
      const double amp = base_fwhm / fwhm_eff;  // area-preserving broadening
      p += amp * std::exp(-4.0 * kLn2 * u * u / (fwhm_eff * fwhm_eff));
    }
  }
  return p;
}

void validate_afc(const FrequencyGrid& grid, const AfcSpec& spec) {
  if (spec.tooth_spacing_hz <= 0.0) throw ConfigError("tooth spacing must be positive");
  if (spec.bandwidth_hz / spec.tooth_spacing_hz < 3.0)
    throw ConfigError("comb bandwidth must cover at least 3 teeth");
  if (spec.comb_finesse <= 1.0) throw ConfigError("comb finesse must exceed 1");
  if (spec.trough_depth_per_cm < 0.0) throw ConfigError("trough depth must be non-negative");
  if (spec.peak_depth_per_cm > 0.0 && spec.peak_depth_per_cm <= spec.trough_depth_per_cm)
    throw ConfigError("tooth peak depth must exceed trough depth");
  if (grid.bin_width() > spec.tooth_spacing_hz / 8.0)
    throw ConfigError("grid bin width must be at most tooth_spacing/8");
  if (grid.span_hz < 4.0 * spec.bandwidth_hz)
    throw ConfigError("grid span must be at least 4x comb bandwidth");
}

// Pattern accumulated over one or two combs, equal mean weight.
std::vector<double> combined_pattern(const FrequencyGrid& grid, const WindowBins& w,
                                     const std::vector<const AfcSpec*>& specs) {
  std::vector<double> p(w.hi - w.lo + 1, 0.0);
  for (const AfcSpec* s : specs) {
    const double shift = s->comb_phase_offset_rad / kTwoPi * s->tooth_spacing_hz;
    for (std::size_t i = w.lo; i <= w.hi; ++i) {
      const double x = grid.frequency(i) - s->center_detuning_hz - shift;
      p[i - w.lo] += tooth_pattern(x, *s) / static_cast<double>(specs.size());
    }
  }
  return p;
}

AbsorptionSpectrum carve_impl(const AbsorptionSpectrum& base,
                              const std::vector<const AfcSpec*>& specs, WarningList* warnings) {
  for (const AfcSpec* s : specs) validate_afc(base.grid, *s);
  const AfcSpec& lead = *specs.front();
  const WindowBins w = window_bins(base.grid, lead.center_detuning_hz, lead.bandwidth_hz);
  const std::vector<double> p = combined_pattern(base.grid, w, specs);

  double mean_bg = 0.0, mean_p = 0.0;
  for (std::size_t i = w.lo; i <= w.hi; ++i) {
    mean_bg += base.alpha_per_cm[i];
    mean_p += p[i - w.lo];
  }
  const double n_bins = static_cast<double>(w.hi - w.lo + 1);
  mean_bg /= n_bins;
  mean_p /= n_bins;
  if (mean_p <= 0.0) throw ConfigError("degenerate tooth pattern (zero mean)");

  const double d0 = lead.trough_depth_per_cm;
  double d = lead.peak_depth_per_cm;
  if (d <= 0.0) {
    if (mean_bg <= d0)
      throw ConfigError("trough depth exceeds windowed background mean; no tooth peak exists");
    d = d0 + (mean_bg - d0) / mean_p;  // exact mean preservation
  } else {
    const double carved_mean = d0 + (d - d0) * mean_p;
    if (warnings && mean_bg > 0.0 && std::abs(carved_mean - mean_bg) > 0.01 * mean_bg)
      warnings->push_back({"mean-depth-shift",
                           "explicit tooth peak changes the windowed mean optical depth by "
                           "more than 1%"});
  }

  AbsorptionSpectrum out = base;
  for (std::size_t i = w.lo; i <= w.hi; ++i)
    out.alpha_per_cm[i] = std::max(0.0, d0 + (d - d0) * p[i - w.lo]);
  return out;
}

}  // namespace

AbsorptionSpectrum build_background(const FrequencyGrid& grid, double line_center_hz,
                                    double line_fwhm_hz, double peak_alpha_per_cm) {
  if (line_fwhm_hz <= 0.0) throw ConfigError("line FWHM must be positive");
  if (peak_alpha_per_cm < 0.0) throw ConfigError("peak absorption must be non-negative");
  // Width check only: the grid may sit anywhere on the line (wing sampling is
  // legitimate), it just must be wide enough to resolve the feature scale.
  if (grid.span_hz < line_fwhm_hz)
    throw ConfigError("grid too narrow to contain the absorption line FWHM");
  AbsorptionSpectrum out{grid, std::vector<double>(grid.bin_count)};
  for (std::size_t i = 0; i < grid.bin_count; ++i) {
    const double x = grid.frequency(i) - line_center_hz;
    out.alpha_per_cm[i] = peak_alpha_per_cm * std::exp(-4.0 * kLn2 * x * x / (line_fwhm_hz * line_fwhm_hz));
  }
  return out;
}

AbsorptionSpectrum flat_top_background(const FrequencyGrid& grid, double alpha_per_cm,
                                       double half_width_hz, double center_hz) {
  if (alpha_per_cm < 0.0) throw ConfigError("plateau absorption must be non-negative");
  if (half_width_hz <= 0.0) throw ConfigError("plateau half width must be positive");
  AbsorptionSpectrum out{grid, std::vector<double>(grid.bin_count)};
  for (std::size_t i = 0; i < grid.bin_count; ++i) {
    const double x = (grid.frequency(i) - center_hz) / half_width_hz;
    out.alpha_per_cm[i] = alpha_per_cm * std::exp(-kLn2 * std::pow(x * x, 5));
  }
  return out;
}

AbsorptionSpectrum make_background(const FrequencyGrid& grid, const BackgroundSpec& spec) {
  switch (spec.kind) {
    case BackgroundSpec::Kind::none:
      return {grid, std::vector<double>(grid.bin_count, 0.0)};
    case BackgroundSpec::Kind::gaussian_line:
      return build_background(grid, spec.line_center_hz, spec.line_fwhm_hz, spec.peak_alpha_per_cm);
    case BackgroundSpec::Kind::flat_top:
      return flat_top_background(grid, spec.peak_alpha_per_cm, spec.half_width_hz,
                                 spec.line_center_hz);
  }
  throw ConfigError("unknown background kind");
}

double solve_tooth_peak(const AbsorptionSpectrum& base, const AfcSpec& spec) {
  AfcSpec probe = spec;
  probe.peak_depth_per_cm = 0.0;
  validate_afc(base.grid, probe);
  const WindowBins w = window_bins(base.grid, probe.center_detuning_hz, probe.bandwidth_hz);
  const std::vector<double> p = combined_pattern(base.grid, w, {&probe});
  double mean_bg = 0.0, mean_p = 0.0;
  for (std::size_t i = w.lo; i <= w.hi; ++i) {
    mean_bg += base.alpha_per_cm[i];
    mean_p += p[i - w.lo];
  }
  mean_bg /= static_cast<double>(w.hi - w.lo + 1);
  mean_p /= static_cast<double>(w.hi - w.lo + 1);
  if (mean_bg <= probe.trough_depth_per_cm)
    throw ConfigError("trough depth exceeds windowed background mean; no tooth peak exists");
  return probe.trough_depth_per_cm + (mean_bg - probe.trough_depth_per_cm) / mean_p;
}

AbsorptionSpectrum carve_afc(const AbsorptionSpectrum& base, const AfcSpec& spec,
                             WarningList* warnings) {
  return carve_impl(base, {&spec}, warnings);
}

AbsorptionSpectrum carve_double_afc(const AbsorptionSpectrum& base, const AfcSpec& first,
                                    const AfcSpec& second, WarningList* warnings) {
  if (std::abs(first.center_detuning_hz - second.center_detuning_hz) > 1e-9 ||
      std::abs(first.bandwidth_hz - second.bandwidth_hz) > 1e-9)
    throw ConfigError("double-comb gratings must share one window");
  return carve_impl(base, {&first, &second}, warnings);
}

std::vector<double> kramers_kronig_phase(const AbsorptionSpectrum& abs, WarningList* warnings) {
  const std::size_t n = abs.grid.bin_count;
  const double peak = *std::max_element(abs.alpha_per_cm.begin(), abs.alpha_per_cm.end());
  if (peak > 0.0) {
    const double edge = std::max(abs.alpha_per_cm.front(), abs.alpha_per_cm.back());
    if (edge > 1e-6 * peak && warnings)
      warnings->push_back({"non-decaying-edges",
                           "absorption does not decay at the grid edges; zero-padded transform "
                           "tapers the edges and the phase near them is approximate"});
  }

  // Center the data in a 2x zero-padded frame; raised-cosine taper over the
  // outer 5% of the data block suppresses wrap-around of the 1/x kernel.
  const std::size_t m = 2 * n;
  std::vector<cdouble> buf(m, 0.0);
  const std::size_t off = n / 2;
  const std::size_t ramp = std::max<std::size_t>(1, n / 20);
  for (std::size_t i = 0; i < n; ++i) {
    double wgt = 1.0;
    if (i < ramp) wgt = 0.5 * (1.0 - std::cos(kPi * (static_cast<double>(i) + 0.5) / ramp));
    if (i >= n - ramp)
      wgt = 0.5 * (1.0 - std::cos(kPi * (static_cast<double>(n - 1 - i) + 0.5) / ramp));
    buf[off + i] = 0.5 * abs.alpha_per_cm[i] * wgt;
  }

  fft::forward(buf.data(), m);
  buf[0] = 0.0;
  buf[m / 2] = 0.0;
  for (std::size_t k = 1; k < m / 2; ++k) buf[k] *= cdouble(0.0, -1.0);
  for (std::size_t k = m / 2 + 1; k < m; ++k) buf[k] *= cdouble(0.0, 1.0);
  fft::backward(buf.data(), m);

  std::vector<double> phase(n);
  for (std::size_t i = 0; i < n; ++i) phase[i] = buf[off + i].real() / static_cast<double>(m);
  return phase;
}

std::vector<cdouble> single_pass_transfer(const AbsorptionSpectrum& abs,
                                          const std::vector<double>& phase_rad_per_cm,
                                          double length_cm) {
  if (phase_rad_per_cm.size() != abs.alpha_per_cm.size())
    throw ConfigError("absorption and phase arrays must share one grid");
  std::vector<cdouble> t(abs.alpha_per_cm.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double a = abs.alpha_per_cm[i];
    if (a < 0.0) throw DomainError("negative absorption coefficient");
    t[i] = std::exp(cdouble(-a * length_cm / 2.0, phase_rad_per_cm[i] * length_cm));
  }
  return t;
}

}  // namespace afcmem
