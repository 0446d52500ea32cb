#include "afcmem/grid.hpp"

#include <algorithm>
#include <cmath>

namespace afcmem {

std::vector<double> FrequencyGrid::frequencies() const {
  std::vector<double> f(bin_count);
  for (std::size_t i = 0; i < bin_count; ++i) f[i] = frequency(i);
  return f;
}

std::size_t FrequencyGrid::index_of(double f_hz) const {
  const double rel = (f_hz - center_hz) / bin_width() + static_cast<double>(bin_count / 2);
  const double clamped = std::clamp(rel, 0.0, static_cast<double>(bin_count - 1));
  return static_cast<std::size_t>(std::llround(clamped));
}

bool FrequencyGrid::valid() const {
  return bin_count >= 2 && is_power_of_two(bin_count) && span_hz > 0.0;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace afcmem
