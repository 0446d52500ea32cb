#include "afcmem/photon_stats.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "afcmem/rng.hpp"
#include "afcmem/spectral_medium.hpp"

namespace afcmem {
namespace {

constexpr std::size_t kChunk = 4096;       // windows per seeded chunk
constexpr std::size_t kSidebandHalf = 16;  // off-peak lags on each side of the peak

double second_moment(const PairSourceConfig& cfg) {
  const double mu = cfg.mean_pairs_per_window;
  switch (cfg.statistics) {
    case PairStatistics::thermal:
      return mu + 2.0 * mu * mu;
    case PairStatistics::poisson:
      return mu + mu * mu;
    case PairStatistics::independent:
      return mu * mu;
  }
  throw ConfigError("unknown pair statistics");
}

}  // namespace

void validate(const PairSourceConfig& cfg) {
  if (cfg.mean_pairs_per_window <= 0.0) throw ConfigError("mean pairs per window must be positive");
  auto in01 = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in01(cfg.signal_channel_efficiency) || !in01(cfg.idler_channel_efficiency))
    throw ConfigError("channel efficiencies must lie in [0,1]");
  if (cfg.dark_rate_signal_hz < 0.0 || cfg.dark_rate_idler_hz < 0.0)
    throw ConfigError("dark rates must be non-negative");
  if (cfg.coincidence_window_s <= 0.0) throw ConfigError("coincidence window must be positive");
}

double g2_analytic(const PairSourceConfig& cfg) {
  validate(cfg);
  const double mu = cfg.mean_pairs_per_window;
  const double es = cfg.signal_channel_efficiency, ei = cfg.idler_channel_efficiency;
  const double ds = cfg.dark_rate_signal_hz * cfg.coincidence_window_s;
  const double di = cfg.dark_rate_idler_hz * cfg.coincidence_window_s;
  const double mean_s = es * mu + ds;
  const double mean_i = ei * mu + di;
  if (mean_s <= 0.0 || mean_i <= 0.0)
    throw DomainError("zero singles rate: g2 denominator vanishes");
  const double coincidence =
      es * ei * second_moment(cfg) + es * mu * di + ei * mu * ds + ds * di;
  return coincidence / (mean_s * mean_i);
}

CorrelationResult g2_monte_carlo(const PairSourceConfig& cfg, std::uint64_t n_windows,
                                 std::uint64_t seed, double storage_time_s,
                                 WarningList* warnings, unsigned n_streams) {
  validate(cfg);
  const double mu = cfg.mean_pairs_per_window;
  const double ds = cfg.dark_rate_signal_hz * cfg.coincidence_window_s;
  const double di = cfg.dark_rate_idler_hz * cfg.coincidence_window_s;
  const auto peak_lag =
      static_cast<std::size_t>(std::llround(storage_time_s / cfg.coincidence_window_s));
  const std::size_t lag_lo = peak_lag > kSidebandHalf ? peak_lag - kSidebandHalf : 0;
  const std::size_t lag_hi = peak_lag + kSidebandHalf;
  const std::size_t n_lags = lag_hi - lag_lo + 1;

  const std::uint64_t n_chunks = (n_windows + kChunk - 1) / kChunk;
  if (n_streams == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    n_streams = hw == 0 ? 1 : hw;
  }
  if (static_cast<std::uint64_t>(n_streams) > n_chunks)
    n_streams = static_cast<unsigned>(n_chunks);

  // ns[j]: signal detections from the pair emitted in window j (they arrive
  // at absolute window j + peak_lag after storage); ni[j]: idler detections
  // in window j.  C(lag) = sum_j ni[j] * signal-at-window(j + lag)
  //                      = sum_j ni[j] * ns[j + lag - peak_lag].
  // Each chunk's RNG stream derives from its absolute index, so any split of
  // the chunk range over worker threads sums to the same histogram.
  auto run_chunk = [&](std::uint64_t c, std::vector<std::uint64_t>& counts,
                       std::vector<std::uint32_t>& ns, std::vector<std::uint32_t>& ni) {
    std::mt19937_64 gen(derive_seed(seed, c));
    for (std::size_t j = 0; j < kChunk; ++j) {
      std::uint32_t pairs = 0;
      if (cfg.statistics == PairStatistics::thermal) {
        std::geometric_distribution<std::uint32_t> dist(1.0 / (1.0 + mu));
        pairs = dist(gen);
      } else {
        std::poisson_distribution<std::uint32_t> dist(mu);
        pairs = dist(gen);
      }
      std::uint32_t pairs_i = pairs;
      if (cfg.statistics == PairStatistics::independent) {
        std::poisson_distribution<std::uint32_t> dist(mu);
        pairs_i = dist(gen);  // fresh draw: arms share no fluctuations
      }
      std::uint32_t s = 0, i = 0;
      if (pairs > 0 && cfg.signal_channel_efficiency > 0.0) {
        std::binomial_distribution<std::uint32_t> thin(pairs, cfg.signal_channel_efficiency);
        s = thin(gen);
      }
      if (pairs_i > 0 && cfg.idler_channel_efficiency > 0.0) {
        std::binomial_distribution<std::uint32_t> thin(pairs_i, cfg.idler_channel_efficiency);
        i = thin(gen);
      }
      if (ds > 0.0) {
        std::poisson_distribution<std::uint32_t> dark(ds);
        s += dark(gen);
      }
      if (di > 0.0) {
        std::poisson_distribution<std::uint32_t> dark(di);
        i += dark(gen);
      }
      ns[j] = s;
      ni[j] = i;
    }
    for (std::size_t l = 0; l < n_lags; ++l) {
      const auto shift = static_cast<std::ptrdiff_t>(lag_lo + l) -
                         static_cast<std::ptrdiff_t>(peak_lag);  // in [-peak_lag, +16]
      const std::size_t offset =
          static_cast<std::size_t>((shift % static_cast<std::ptrdiff_t>(kChunk) +
                                    static_cast<std::ptrdiff_t>(kChunk)) %
                                   static_cast<std::ptrdiff_t>(kChunk));
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < kChunk; ++j) {
        const std::size_t k = j + offset < kChunk ? j + offset : j + offset - kChunk;
        acc += static_cast<std::uint64_t>(ni[j]) * ns[k];
      }
      counts[l] += acc;
    }
  };

  std::vector<std::vector<std::uint64_t>> partials(n_streams,
                                                   std::vector<std::uint64_t>(n_lags, 0));
  std::atomic<std::uint64_t> next_chunk{0};
  auto worker = [&](unsigned stream) {
    std::vector<std::uint32_t> ns(kChunk), ni(kChunk);
    for (;;) {
      const std::uint64_t c = next_chunk.fetch_add(1, std::memory_order_relaxed);
      if (c >= n_chunks) break;
      run_chunk(c, partials[stream], ns, ni);
    }
  };
  if (n_streams <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_streams);
    for (unsigned t = 0; t < n_streams; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  std::vector<std::uint64_t> counts(n_lags, 0);
  for (const auto& partial : partials)
    for (std::size_t l = 0; l < n_lags; ++l) counts[l] += partial[l];

  CorrelationResult result;
  result.storage_time_s = storage_time_s;
  result.histogram = counts;
  result.peak_bin = peak_lag - lag_lo;

  const std::uint64_t peak = counts[result.peak_bin];
  std::uint64_t side_sum = 0;
  for (std::size_t l = 0; l < n_lags; ++l)
    if (l != result.peak_bin) side_sum += counts[l];
  const double n_side = static_cast<double>(n_lags - 1);

  if (side_sum == 0) {
    result.infinite = true;
    result.g2 = std::numeric_limits<double>::infinity();
    result.standard_error = std::numeric_limits<double>::infinity();
    if (warnings)
      warnings->push_back({"zero-accidentals",
                           "no off-peak coincidences: g2 is unbounded at this sample size"});
    return result;
  }
  result.g2 = static_cast<double>(peak) * n_side / static_cast<double>(side_sum);
  if (peak > 0)
    result.standard_error =
        result.g2 * std::sqrt(1.0 / static_cast<double>(peak) + 1.0 / static_cast<double>(side_sum));
  else
    result.standard_error = n_side / static_cast<double>(side_sum);  // one-count scale
  return result;
}

CsVerdict cauchy_schwarz_check(const CorrelationResult& result) {
  return cauchy_schwarz_check(result.g2, result.standard_error);
}

CsVerdict cauchy_schwarz_check(double g2, double standard_error) {
  if (!(standard_error > 0.0)) throw DomainError("standard error must be positive");
  return {g2 > 2.0, (g2 - 2.0) / standard_error};
}

}  // namespace afcmem
