#include <cstdlib>
#include <string>

#include "afcmem/kernels.hpp"

namespace afcmem::kernels {
namespace {

struct Choice {
  const KernelTable* table;
  std::string name;
};

bool cpu_has_avx2() {
#if AFCMEM_HAVE_AVX2_TU && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Choice resolve() {
  const char* env = std::getenv("AFC_KERNELS");
  const std::string want = env ? env : "";
  if (want == "scalar") return {&scalar_table, "scalar"};
#if AFCMEM_HAVE_AVX2_TU
  if (want == "avx2" && cpu_has_avx2()) return {&avx2_table, "avx2"};
  if (want.empty() && cpu_has_avx2()) return {&avx2_table, "avx2"};
#endif
  return {&scalar_table, "scalar"};
}

const Choice& choice() {
  static const Choice c = resolve();
  return c;
}

}  // namespace

const KernelTable& active() { return *choice().table; }

std::string active_name() { return choice().name; }

bool avx2_available() { return cpu_has_avx2(); }

}  // namespace afcmem::kernels
