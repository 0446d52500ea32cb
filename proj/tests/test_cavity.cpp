#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "afcmem/cavity.hpp"
#include "afcmem/spectral_medium.hpp"

using namespace afcmem;

namespace {

CavityConfig default_cavity() {
  CavityConfig cfg;
  cfg.r1 = 0.40;
  cfg.r2 = 0.99;
  cfg.length_cm = 0.4;
  cfg.refractive_index = 1.82;
  return cfg;
}

std::vector<cdouble> uniform_transfer(double alpha_per_cm, double length_cm, std::size_t n) {
  return std::vector<cdouble>(n, std::exp(cdouble(-alpha_per_cm * length_cm / 2.0, 0.0)));
}

}  // namespace

TEST_CASE("free spectral range follows the optical length") {
  CHECK(free_spectral_range(default_cavity()) == doctest::Approx(2.0590e10).epsilon(1e-4));
  CavityConfig vac;
  vac.r1 = 0.5;
  vac.r2 = 0.5;
  vac.length_cm = 1.0;
  vac.refractive_index = 1.0;
  CHECK(free_spectral_range(vac) == doctest::Approx(1.49896e10).epsilon(1e-5));
}

TEST_CASE("finesse: empty, absorbing, and degenerate resonators") {
  const CavityConfig cfg = default_cavity();
  CHECK(finesse(cfg, 0.0) == doctest::Approx(6.7244).epsilon(1e-3));
  CHECK(finesse(cfg, solve_matched_alpha(cfg)) == doctest::Approx(3.3114).epsilon(1e-3));

  CavityConfig mirrorless = cfg;
  mirrorless.r1 = 0.0;
  CHECK(finesse(mirrorless, 0.0) == 0.0);

  CavityConfig lossless;
  lossless.r1 = 1.0;
  lossless.r2 = 1.0;
  lossless.length_cm = 1.0;
  CHECK_THROWS_AS(finesse(lossless, 0.0), DomainError);
}

TEST_CASE("matched absorption satisfies R1 = R2 exp(-2 alpha l)") {
  const CavityConfig cfg = default_cavity();
  const double alpha = solve_matched_alpha(cfg);
  CHECK(alpha == doctest::Approx(1.13293).epsilon(1e-4));
  CHECK(cfg.r2 * std::exp(-2.0 * alpha * cfg.length_cm) == doctest::Approx(cfg.r1).epsilon(1e-12));

  CavityConfig inverted = cfg;
  inverted.r1 = 0.999;
  inverted.r2 = 0.5;
  CHECK_THROWS_AS(solve_matched_alpha(inverted), NoSolutionError);
  CavityConfig open = cfg;
  open.r1 = 0.0;
  CHECK_THROWS_AS(solve_matched_alpha(open), DomainError);
}

TEST_CASE("impedance-matched cavity absorbs on resonance") {
  const CavityConfig cfg = default_cavity();
  const FrequencyGrid grid{0.0, 4.096e9, 4096};
  const double alpha = solve_matched_alpha(cfg);
  const CavityResponse resp =
      reflection_spectrum(cfg, uniform_transfer(alpha, cfg.length_cm, grid.bin_count), grid);
  const double r2_on = std::norm(resp.reflection[grid.index_of(0.0)]);
  CHECK(r2_on < 1e-3);
  // Off resonance, reflection recovers.
  const double r2_off = std::norm(resp.reflection[grid.index_of(free_spectral_range(cfg) / 2.0 -
                                                                free_spectral_range(cfg) / 4.0)]);
  CHECK(r2_off > 10.0 * r2_on);
}

TEST_CASE("reflection is periodic at the free spectral range") {
  const CavityConfig cfg = default_cavity();
  const double fsr = free_spectral_range(cfg);
  FrequencyGrid grid{0.0, 2.0 * fsr, 8192};
  const CavityResponse resp =
      reflection_spectrum(cfg, uniform_transfer(0.8, cfg.length_cm, grid.bin_count), grid);
  const std::size_t shift =
      grid.index_of(grid.frequency(1024) + fsr) - 1024;  // bins per free spectral range
  for (const std::size_t i : {512ul, 1024ul, 2000ul, 3000ul}) {
    CHECK(std::abs(resp.reflection[i] - resp.reflection[i + shift]) <
          2e-3 * std::abs(resp.reflection[i]) + 2e-4);
  }
}

TEST_CASE("perfect front mirror reflects everything") {
  CavityConfig cfg;
  cfg.r1 = 1.0;
  cfg.r2 = 0.9;
  cfg.length_cm = 0.5;
  const FrequencyGrid grid{0.0, 1.024e9, 1024};
  const CavityResponse resp =
      reflection_spectrum(cfg, uniform_transfer(0.0, cfg.length_cm, grid.bin_count), grid);
  for (const cdouble& r : resp.reflection) CHECK(std::abs(r) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reflection stays passive for an absorbing medium") {
  const CavityConfig cfg = default_cavity();
  const FrequencyGrid grid{0.0, 4.096e9, 4096};
  for (const double alpha : {0.0, 0.4, 1.13293, 3.0}) {
    const CavityResponse resp =
        reflection_spectrum(cfg, uniform_transfer(alpha, cfg.length_cm, grid.bin_count), grid);
    for (const cdouble& r : resp.reflection) CHECK(std::abs(r) <= 1.0 + 1e-12);
    for (const cdouble& t : resp.transmission) CHECK(std::abs(t) <= 1.0 + 1e-12);
  }
}

TEST_CASE("cw sweep dips at the detuned resonance on the real line") {
  CavityConfig cfg = default_cavity();
  cfg.resonance_detuning_hz = -4.0e9;
  const FrequencyGrid grid{0.0, 16.384e9, 4096};
  const AbsorptionSpectrum line = build_background(grid, 0.0, 6.7485e9, 3.0);
  const std::vector<SweepPoint> sweep = reflection_sweep(
      cfg, line, std::numeric_limits<double>::infinity(), grid.frequencies());
  const SweepPoint min = sweep_minimum(sweep);
  CHECK(min.reflected_power <= 0.10);
  CHECK(std::abs(min.detuning_hz - (-4.0e9)) < 0.5e9);
}

TEST_CASE("pulsed sweep averages the reflection over the probe band") {
  CavityConfig cfg = default_cavity();
  const FrequencyGrid grid{0.0, 16.384e9, 4096};
  const AbsorptionSpectrum line = build_background(grid, 0.0, 6.7485e9, 3.0);
  const std::vector<double> detunings = {0.0};
  const double cw =
      reflection_sweep(cfg, line, std::numeric_limits<double>::infinity(), detunings)[0]
          .reflected_power;
  const double pulsed = reflection_sweep(cfg, line, 0.5e-9, detunings)[0].reflected_power;
  CHECK(pulsed >= 0.0);
  CHECK(pulsed <= 1.0);
  CHECK(pulsed != doctest::Approx(cw).epsilon(1e-6));  // finite band sees the neighborhood
}

TEST_CASE("configuration validation rejects out-of-range parameters") {
  CavityConfig bad = default_cavity();
  bad.r1 = 1.4;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = default_cavity();
  bad.length_cm = 0.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = default_cavity();
  bad.refractive_index = 0.9;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = default_cavity();
  bad.excess_round_trip_loss = 1.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);

  const FrequencyGrid grid{0.0, 1.024e9, 1024};
  CHECK_THROWS_AS(reflection_spectrum(default_cavity(), std::vector<cdouble>(10), grid),
                  ConfigError);
}
