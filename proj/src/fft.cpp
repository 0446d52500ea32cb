#include "afcmem/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace afcmem::fft {
namespace {

// FFTW's planner is not thread-safe; executing a cached plan is.  Plans are
// created UNALIGNED so one plan serves any buffer of the right length.
class PlanCache {
 public:
  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    const auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<cdouble> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(cdouble* inout, std::size_t n, int sign) {
  fftw_plan p = cache().get(n, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(inout);
  fftw_execute_dft(p, buf, buf);
}

}  // namespace

void forward(cdouble* inout, std::size_t n) { run(inout, n, FFTW_FORWARD); }

void backward(cdouble* inout, std::size_t n) { run(inout, n, FFTW_BACKWARD); }

}  // namespace afcmem::fft
