#pragma once

#include <cstdint>
#include <vector>

#include "afcmem/common.hpp"

namespace afcmem {

enum class PairStatistics {
  thermal,      // single-mode SPDC after narrow filtering
  poisson,      // multimode limit
  independent,  // uncorrelated arms (coincidences = product of singles)
};

struct PairSourceConfig {
  double mean_pairs_per_window = 0.0;
  double signal_channel_efficiency = 0.0;  // includes memory eta when in path
  double idler_channel_efficiency = 0.0;
  double dark_rate_signal_hz = 0.0;
  double dark_rate_idler_hz = 0.0;
  double coincidence_window_s = 0.0;
  double repetition_rate_hz = 0.0;     // bookkeeping
  double signal_bandwidth_hz = 0.0;    // bookkeeping
  double idler_bandwidth_hz = 0.0;     // bookkeeping
  PairStatistics statistics = PairStatistics::thermal;
};

void validate(const PairSourceConfig& cfg);

// Closed-form g2 = E[n_s*n_i] / (E[n_s]*E[n_i]) per detection window for the
// configured number statistics with independent dark counts.
double g2_analytic(const PairSourceConfig& cfg);

struct CorrelationResult {
  double g2 = 0.0;
  double standard_error = 0.0;
  std::vector<std::uint64_t> histogram;  // coincidences per lag bin
  std::size_t peak_bin = 0;              // lag bin of the correlated peak
  double storage_time_s = 0.0;
  bool infinite = false;  // sentinel: zero off-peak accidentals
};

// Samples pair numbers, binomial channel thinning, and Poisson dark counts
// per window; correlates the delayed signal stream against the idler stream.
// g2 = peak-lag counts / mean off-peak counts.  Windows are processed in
// fixed-size chunks with seeds derived per chunk, so totals are independent
// of how chunks are distributed across streams.  n_windows is rounded up to
// a whole number of chunks.
// Windows are simulated in fixed-size chunks whose RNG streams derive from
// (seed, chunk index); chunks are distributed over n_streams worker threads
// (0 = hardware default) and merged by summation, so the histogram depends
// only on (cfg, n_windows, seed, storage_time), never on the stream count.
CorrelationResult g2_monte_carlo(const PairSourceConfig& cfg, std::uint64_t n_windows,
                                 std::uint64_t seed, double storage_time_s = 0.0,
                                 WarningList* warnings = nullptr, unsigned n_streams = 0);

struct CsVerdict {
  bool violated = false;
  double margin_sigmas = 0.0;  // (g2 - 2) / standard_error
};

CsVerdict cauchy_schwarz_check(const CorrelationResult& result);
CsVerdict cauchy_schwarz_check(double g2, double standard_error);

}  // namespace afcmem
