#pragma once

#include <cstddef>
#include <vector>

#include "afcmem/common.hpp"

namespace afcmem {

// Uniform frequency grid, power-of-two bin count, bin i at
// center_hz + (i - bin_count/2) * bin_width().  The conjugate time grid
// starts at 0 and spans duration() = 1 / bin_width().
struct FrequencyGrid {
  double center_hz = 0.0;
  double span_hz = 0.0;
  std::size_t bin_count = 0;

  double bin_width() const { return span_hz / static_cast<double>(bin_count); }
  double dt() const { return 1.0 / span_hz; }
  double duration() const { return 1.0 / bin_width(); }
  double frequency(std::size_t i) const {
    return center_hz + (static_cast<double>(i) - static_cast<double>(bin_count / 2)) * bin_width();
  }
  double time(std::size_t i) const { return static_cast<double>(i) * dt(); }
  std::vector<double> frequencies() const;
  // Nearest bin to f_hz, clamped to the grid.
  std::size_t index_of(double f_hz) const;
  bool valid() const;
};

bool is_power_of_two(std::size_t n);

}  // namespace afcmem
