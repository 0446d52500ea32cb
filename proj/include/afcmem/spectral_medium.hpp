#pragma once

#include <stdexcept>
#include <vector>

#include "afcmem/common.hpp"
#include "afcmem/grid.hpp"

namespace afcmem {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoSolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Absorption coefficient alpha(nu) in 1/cm per grid bin; the crystal length is
// applied at transfer time so one spectrum serves multiple cavity lengths.
struct AbsorptionSpectrum {
  FrequencyGrid grid;
  std::vector<double> alpha_per_cm;
};

enum class ToothShape { gaussian, square };

// Periodic absorption grating carved into a background.
// peak_depth_per_cm <= 0 selects auto mode: the tooth peak is solved so the
// windowed mean optical depth exactly equals the replaced background mean
// (redistribution, not removal).  tooth_blur_hz is a Gaussian FWHM convolution
// applied to the tooth pattern; it models static tooth broadening and
// preserves the windowed mean.
struct AfcSpec {
  double center_detuning_hz = 0.0;
  double bandwidth_hz = 0.0;
  double tooth_spacing_hz = 0.0;  // delta; recall time tau = 1/delta
  double comb_finesse = 2.0;      // delta / tooth FWHM
  double peak_depth_per_cm = 0.0;
  double trough_depth_per_cm = 0.0;
  ToothShape tooth_shape = ToothShape::gaussian;
  double comb_phase_offset_rad = 0.0;  // tooth-position offset, 2*pi = one period
  double tooth_blur_hz = 0.0;
};

struct BackgroundSpec {
  enum class Kind { none, gaussian_line, flat_top };
  Kind kind = Kind::none;
  double peak_alpha_per_cm = 0.0;
  double line_center_hz = 0.0;
  double line_fwhm_hz = 0.0;
  double half_width_hz = 0.0;  // flat_top half width
};

AbsorptionSpectrum build_background(const FrequencyGrid& grid, double line_center_hz,
                                    double line_fwhm_hz, double peak_alpha_per_cm);

// Super-Gaussian plateau: alpha * exp(-ln2 * ((nu-center)/half_width)^10).
// Models a prepared absorption plateau with soft edges (keeps the Hilbert
// transform free of hard-edge ringing).
AbsorptionSpectrum flat_top_background(const FrequencyGrid& grid, double alpha_per_cm,
                                       double half_width_hz, double center_hz = 0.0);

AbsorptionSpectrum make_background(const FrequencyGrid& grid, const BackgroundSpec& spec);

// Tooth peak depth that makes the carved windowed mean equal the background
// windowed mean, for the given trough/shape/finesse/blur.
double solve_tooth_peak(const AbsorptionSpectrum& base, const AfcSpec& spec);

AbsorptionSpectrum carve_afc(const AbsorptionSpectrum& base, const AfcSpec& spec,
                             WarningList* warnings = nullptr);

// Two gratings superposed with equal mean weight inside the shared window
// (arithmetic mean of the tooth patterns); used for double-comb analysis.
AbsorptionSpectrum carve_double_afc(const AbsorptionSpectrum& base, const AfcSpec& first,
                                    const AfcSpec& second, WarningList* warnings = nullptr);

// Hilbert-transform partner of alpha/2 (rad/cm): the causal phase response.
// Sign convention: a single absorption line produces normal dispersion (slow
// light) in its wings; a Lorentzian of half-width g and peak a0 maps to
// (a0/2) * D*g / (D^2 + g^2).  Computed with 2x zero padding and a
// raised-cosine edge taper; non-decaying edges emit a warning.
std::vector<double> kramers_kronig_phase(const AbsorptionSpectrum& abs,
                                         WarningList* warnings = nullptr);

// t(nu) = exp(-alpha*l/2 + i*phase*l); |t| <= 1 for non-negative absorption.
std::vector<cdouble> single_pass_transfer(const AbsorptionSpectrum& abs,
                                          const std::vector<double>& phase_rad_per_cm,
                                          double length_cm);

}  // namespace afcmem
