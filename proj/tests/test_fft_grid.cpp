#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "afcmem/fft.hpp"
#include "afcmem/grid.hpp"
#include "support/oracles.hpp"

using afcmem::cdouble;
using afcmem::FrequencyGrid;

TEST_CASE("forward fft matches the naive dft") {
  for (const std::size_t n : {2ul, 8ul, 64ul, 256ul}) {
    std::vector<cdouble> data = oracle::random_samples(n, 42 + n);
    const std::vector<cdouble> want = oracle::naive_dft(data);
    afcmem::fft::forward(data.data(), n);
    CHECK(oracle::max_abs_diff(data, want) < 1e-9 * static_cast<double>(n));
  }
}

TEST_CASE("backward is the unnormalized inverse") {
  const std::size_t n = 512;
  const std::vector<cdouble> original = oracle::random_samples(n, 7);
  std::vector<cdouble> data = original;
  afcmem::fft::forward(data.data(), n);
  afcmem::fft::backward(data.data(), n);
  for (cdouble& v : data) v /= static_cast<double>(n);
  CHECK(oracle::max_abs_diff(data, original) < 1e-12);
}

TEST_CASE("grid bin layout and index round-trip") {
  FrequencyGrid grid{-4.0e9, 4.096e9, 4096};
  CHECK(grid.valid());
  CHECK(grid.bin_width() == doctest::Approx(1.0e6));
  CHECK(grid.dt() == doctest::Approx(1.0 / 4.096e9));
  CHECK(grid.duration() == doctest::Approx(1.0e-6));
  CHECK(grid.frequency(grid.bin_count / 2) == doctest::Approx(-4.0e9));
  for (const std::size_t i : {0ul, 1ul, 100ul, 2048ul, 4095ul})
    CHECK(grid.index_of(grid.frequency(i)) == i);
  // Clamped outside the span.
  CHECK(grid.index_of(-1e12) == 0);
  CHECK(grid.index_of(+1e12) == grid.bin_count - 1);
}

TEST_CASE("grid validity rejects non-power-of-two and degenerate spans") {
  CHECK(afcmem::is_power_of_two(4096));
  CHECK(!afcmem::is_power_of_two(4095));
  CHECK(!afcmem::is_power_of_two(0));
  CHECK(!FrequencyGrid{0.0, 0.0, 4096}.valid());
  CHECK(!FrequencyGrid{0.0, 1.0e9, 1000}.valid());
}

TEST_CASE("time axis is conjugate to the frequency axis") {
  FrequencyGrid grid{0.0, 2.048e9, 2048};
  CHECK(grid.time(0) == 0.0);
  CHECK(grid.time(2047) == doctest::Approx(grid.duration() - grid.dt()));
  CHECK(grid.dt() * static_cast<double>(grid.bin_count) == doctest::Approx(grid.duration()));
}
