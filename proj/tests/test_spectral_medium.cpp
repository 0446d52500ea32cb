#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "afcmem/spectral_medium.hpp"
#include "support/oracles.hpp"

using namespace afcmem;

namespace {

double windowed_mean(const AbsorptionSpectrum& spec, double center_hz, double bandwidth_hz) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < spec.grid.bin_count; ++i) {
    const double f = spec.grid.frequency(i);
    if (f >= center_hz - bandwidth_hz / 2.0 && f <= center_hz + bandwidth_hz / 2.0) {
      sum += spec.alpha_per_cm[i];
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

AfcSpec default_comb() {
  AfcSpec afc;
  afc.center_detuning_hz = 0.0;
  afc.bandwidth_hz = 500e6;
  afc.tooth_spacing_hz = 40e6;
  afc.comb_finesse = 2.0;
  afc.tooth_shape = ToothShape::square;
  return afc;
}

AbsorptionSpectrum plateau(const FrequencyGrid& grid, double alpha) {
  return flat_top_background(grid, alpha, 0.8e9, 0.0);
}

}  // namespace

TEST_CASE("causal phase of a lorentzian line matches the closed form") {
  // alpha(nu) = a0 g^2/(nu^2+g^2)  ->  phase (a0/2) nu g/(nu^2+g^2).
  const FrequencyGrid grid{0.0, 2.048e9, 4096};
  const double a0 = 2.0, g = 5e6;
  AbsorptionSpectrum line{grid, std::vector<double>(grid.bin_count)};
  for (std::size_t i = 0; i < grid.bin_count; ++i)
    line.alpha_per_cm[i] = oracle::lorentzian_alpha(grid.frequency(i), a0, g);

  WarningList warnings;
  const std::vector<double> phase = kramers_kronig_phase(line, &warnings);

  const double peak_phase = a0 / 4.0;  // extremum of the closed form, at nu = +-g
  double rms = 0.0, central_max = 0.0;
  for (std::size_t i = 0; i < grid.bin_count; ++i) {
    const double nu = grid.frequency(i);
    const double err = phase[i] - oracle::lorentzian_phase(nu, a0, g);
    rms += err * err;
    if (std::abs(nu) < 0.25 * grid.span_hz) central_max = std::max(central_max, std::abs(err));
  }
  rms = std::sqrt(rms / static_cast<double>(grid.bin_count));
  CHECK(rms < 0.01 * peak_phase);
  CHECK(central_max < 0.01 * peak_phase);

  // Normal dispersion in the wings: phase positive above the line.
  CHECK(phase[grid.index_of(3.0 * g)] > 0.0);
  CHECK(phase[grid.index_of(-3.0 * g)] < 0.0);
}

TEST_CASE("phase transform is linear and vanishes for zero absorption") {
  const FrequencyGrid grid{0.0, 1.024e9, 1024};
  AbsorptionSpectrum zero{grid, std::vector<double>(grid.bin_count, 0.0)};
  for (const double p : kramers_kronig_phase(zero)) CHECK(p == 0.0);

  AbsorptionSpectrum line{grid, std::vector<double>(grid.bin_count)};
  for (std::size_t i = 0; i < grid.bin_count; ++i)
    line.alpha_per_cm[i] = oracle::lorentzian_alpha(grid.frequency(i), 1.0, 20e6);
  AbsorptionSpectrum doubled = line;
  for (double& a : doubled.alpha_per_cm) a *= 2.0;
  const std::vector<double> p1 = kramers_kronig_phase(line);
  const std::vector<double> p2 = kramers_kronig_phase(doubled);
  for (std::size_t i = 0; i < grid.bin_count; ++i)
    CHECK(p2[i] == doctest::Approx(2.0 * p1[i]).epsilon(1e-12));
}

TEST_CASE("phase is odd about a symmetric line") {
  const FrequencyGrid grid{0.0, 1.024e9, 2048};
  AbsorptionSpectrum line{grid, std::vector<double>(grid.bin_count)};
  for (std::size_t i = 0; i < grid.bin_count; ++i)
    line.alpha_per_cm[i] = oracle::lorentzian_alpha(grid.frequency(i), 1.0, 10e6);
  const std::vector<double> phase = kramers_kronig_phase(line);
  const std::size_t c = grid.bin_count / 2;
  for (std::size_t k = 1; k < 200; ++k)
    CHECK(phase[c + k] == doctest::Approx(-phase[c - k]).epsilon(1e-6));
}

TEST_CASE("non-decaying absorption at the grid edges warns") {
  const FrequencyGrid grid{0.0, 1.024e9, 1024};
  AbsorptionSpectrum flat{grid, std::vector<double>(grid.bin_count, 1.0)};
  WarningList warnings;
  kramers_kronig_phase(flat, &warnings);
  REQUIRE(!warnings.empty());
  CHECK(warnings.front().code == "non-decaying-edges");
}

TEST_CASE("auto tooth depth preserves the windowed mean exactly") {
  const FrequencyGrid grid{0.0, 2.048e9, 2048};
  const AbsorptionSpectrum bg = plateau(grid, 1.0);
  const double mean_bg = windowed_mean(bg, 0.0, 500e6);

  AfcSpec afc = default_comb();
  for (const ToothShape shape : {ToothShape::square, ToothShape::gaussian}) {
    for (const double blur : {0.0, 4e6}) {
      afc.tooth_shape = shape;
      afc.tooth_blur_hz = blur;
      const AbsorptionSpectrum comb = carve_afc(bg, afc);
      CHECK(windowed_mean(comb, 0.0, 500e6) == doctest::Approx(mean_bg).epsilon(1e-12));
    }
  }
}

TEST_CASE("carve only touches the comb window") {
  const FrequencyGrid grid{0.0, 2.048e9, 2048};
  const AbsorptionSpectrum bg = plateau(grid, 1.0);
  const AbsorptionSpectrum comb = carve_afc(bg, default_comb());
  for (std::size_t i = 0; i < grid.bin_count; ++i) {
    const double f = grid.frequency(i);
    if (std::abs(f) > 260e6) CHECK(comb.alpha_per_cm[i] == bg.alpha_per_cm[i]);
  }
}

TEST_CASE("carved comb is non-negative and reaches troughs near the floor") {
  const FrequencyGrid grid{0.0, 2.048e9, 2048};
  const AbsorptionSpectrum bg = plateau(grid, 1.0);
  AfcSpec afc = default_comb();
  afc.trough_depth_per_cm = 0.05;
  const AbsorptionSpectrum comb = carve_afc(bg, afc);
  double lo = 1e9, hi = 0.0;
  for (std::size_t i = 0; i < grid.bin_count; ++i) {
    CHECK(comb.alpha_per_cm[i] >= 0.0);
    if (std::abs(grid.frequency(i)) < 240e6) {
      lo = std::min(lo, comb.alpha_per_cm[i]);
      hi = std::max(hi, comb.alpha_per_cm[i]);
    }
  }
  CHECK(lo == doctest::Approx(0.05).epsilon(1e-9));  // trough floor
  CHECK(hi > 1.5);                                   // teeth well above the mean
}

TEST_CASE("solve_tooth_peak matches the auto-carve depth") {
  const FrequencyGrid grid{0.0, 2.048e9, 2048};
  const AbsorptionSpectrum bg = plateau(grid, 0.4);
  AfcSpec afc = default_comb();
  afc.tooth_blur_hz = 4e6;
  const double d = solve_tooth_peak(bg, afc);
  afc.peak_depth_per_cm = d;
  WarningList warnings;
  const AbsorptionSpectrum comb = carve_afc(bg, afc, &warnings);
  CHECK(windowed_mean(comb, 0.0, 500e6) == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(warnings.empty());  // solved depth shifts the mean by far less than 1%
}

TEST_CASE("explicit tooth depth far from the mean-preserving one warns") {
  const FrequencyGrid grid{0.0, 2.048e9, 2048};
  const AbsorptionSpectrum bg = plateau(grid, 1.0);
  AfcSpec afc = default_comb();
  afc.peak_depth_per_cm = 5.0;
  WarningList warnings;
  carve_afc(bg, afc, &warnings);
  REQUIRE(!warnings.empty());
  CHECK(warnings.front().code == "mean-depth-shift");
}

TEST_CASE("double comb shares the window and preserves the mean") {
  const FrequencyGrid grid{0.0, 2.048e9, 2048};
  const AbsorptionSpectrum bg = plateau(grid, 1.0);
  AfcSpec first = default_comb();
  AfcSpec second = default_comb();
  second.tooth_spacing_hz = 1.0 / (1.0 / 40e6 + 1.4e-9);  // tau2 = tau1 + 1.4 ns
  const AbsorptionSpectrum comb = carve_double_afc(bg, first, second);
  CHECK(windowed_mean(comb, 0.0, 500e6) == doctest::Approx(1.0).epsilon(1e-12));

  AfcSpec moved = second;
  moved.center_detuning_hz = 10e6;
  CHECK_THROWS_AS(carve_double_afc(bg, first, moved), ConfigError);
}

TEST_CASE("afc validation rejects infeasible configurations") {
  const FrequencyGrid grid{0.0, 2.048e9, 2048};
  const AbsorptionSpectrum bg = plateau(grid, 1.0);

  AfcSpec too_few = default_comb();
  too_few.tooth_spacing_hz = 200e6;  // < 3 teeth in 500 MHz
  CHECK_THROWS_AS(carve_afc(bg, too_few), ConfigError);

  AfcSpec bad_finesse = default_comb();
  bad_finesse.comb_finesse = 1.0;
  CHECK_THROWS_AS(carve_afc(bg, bad_finesse), ConfigError);

  AfcSpec inverted = default_comb();
  inverted.trough_depth_per_cm = 2.0;
  inverted.peak_depth_per_cm = 1.0;
  CHECK_THROWS_AS(carve_afc(bg, inverted), ConfigError);

  const FrequencyGrid coarse{0.0, 2.048e9, 128};  // 16 MHz bins > spacing/8
  AbsorptionSpectrum coarse_bg{coarse, std::vector<double>(coarse.bin_count, 1.0)};
  CHECK_THROWS_AS(carve_afc(coarse_bg, default_comb()), ConfigError);

  const FrequencyGrid narrow{0.0, 1.024e9, 1024};  // span < 4x bandwidth
  AbsorptionSpectrum narrow_bg{narrow, std::vector<double>(narrow.bin_count, 1.0)};
  CHECK_THROWS_AS(carve_afc(narrow_bg, default_comb()), ConfigError);

  AfcSpec off_grid = default_comb();
  off_grid.center_detuning_hz = 0.9e9;  // window past the grid edge
  CHECK_THROWS_AS(carve_afc(bg, off_grid), ConfigError);

  AbsorptionSpectrum empty = plateau(grid, 0.0);
  CHECK_THROWS_AS(carve_afc(empty, default_comb()), ConfigError);  // nothing to carve
}

TEST_CASE("gaussian line background needs a grid wide enough for the feature") {
  const FrequencyGrid narrow{0.0, 2.048e9, 2048};
  CHECK_THROWS_WITH_AS(build_background(narrow, 0.0, 6.7485e9, 3.0),
                       "grid too narrow to contain the absorption line FWHM", ConfigError);
  // Wing sampling is legitimate: a wide-enough grid may sit anywhere.
  const FrequencyGrid wing{-6.0e9, 8.192e9, 8192};
  const AbsorptionSpectrum bg = build_background(wing, 0.0, 6.7485e9, 3.0);
  CHECK(bg.alpha_per_cm[wing.index_of(-6.0e9)] < 3.0);
  CHECK(bg.alpha_per_cm[wing.index_of(-6.0e9)] > 0.0);
}

TEST_CASE("single-pass transfer is passive for non-negative absorption") {
  const FrequencyGrid grid{0.0, 2.048e9, 2048};
  const AbsorptionSpectrum comb = carve_afc(plateau(grid, 1.0), default_comb());
  const std::vector<double> phase = kramers_kronig_phase(comb);
  const std::vector<cdouble> t = single_pass_transfer(comb, phase, 0.4);
  for (const cdouble& v : t) CHECK(std::abs(v) <= 1.0 + 1e-12);

  AbsorptionSpectrum negative = comb;
  negative.alpha_per_cm[17] = -0.1;
  CHECK_THROWS_AS(single_pass_transfer(negative, phase, 0.4), DomainError);
}
