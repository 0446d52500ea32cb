#pragma once

#include <cstddef>
#include <string>

#include "afcmem/common.hpp"

namespace afcmem::kernels {

// Hot inner loops shared by the spectral pipelines.  Scalar reference
// implementations always exist; wider variants are selected at runtime when
// the CPU supports them.  Equivalence is tolerance-based: fused multiply-add
// reassociation makes bitwise identity too strict a contract.
struct KernelTable {
  // dst[i] = a[i] * b[i]
  void (*cmul)(cdouble* dst, const cdouble* a, const cdouble* b, std::size_t n);
  // dst[i] += a[i] * b[i]
  void (*cmul_add)(cdouble* dst, const cdouble* a, const cdouble* b, std::size_t n);
  // dst[i] = a[i] * s
  void (*cscale)(cdouble* dst, const cdouble* a, cdouble s, std::size_t n);
  // sum_i |a[i]|^2
  double (*energy)(const cdouble* a, std::size_t n);
  // dst[i] = |a[i]|^2
  void (*mag2)(double* dst, const cdouble* a, std::size_t n);
  // Steady-state two-mirror resonator response per bin from the one-way
  // intracavity amplitude a1[i] and round-trip amplitude a2[i]:
  //   denom    = 1 - sqrt_r1r2 * a2[i]
  //   refl[i]  = (-sqrt_r1 + sqrt_r2 * a2[i]) / denom
  //   icav[i]  = (i * t1) / denom
  //   trans[i] = -(t1 * t2) * a1[i] / denom
  void (*cavity_response)(cdouble* refl, cdouble* icav, cdouble* trans,
                          const cdouble* a1, const cdouble* a2, std::size_t n,
                          double sqrt_r1, double sqrt_r2, double sqrt_r1r2,
                          double t1, double t2);
};

extern const KernelTable scalar_table;
#if AFCMEM_HAVE_AVX2_TU
extern const KernelTable avx2_table;
#endif

// Active table: picked once per process.  Honors AFC_KERNELS=scalar|avx2
// before falling back to CPU detection.
const KernelTable& active();
std::string active_name();
bool avx2_available();

inline void cmul(cdouble* dst, const cdouble* a, const cdouble* b, std::size_t n) {
  active().cmul(dst, a, b, n);
}
inline void cmul_add(cdouble* dst, const cdouble* a, const cdouble* b, std::size_t n) {
  active().cmul_add(dst, a, b, n);
}
inline void cscale(cdouble* dst, const cdouble* a, cdouble s, std::size_t n) {
  active().cscale(dst, a, s, n);
}
inline double energy(const cdouble* a, std::size_t n) { return active().energy(a, n); }
inline void mag2(double* dst, const cdouble* a, std::size_t n) { active().mag2(dst, a, n); }
inline void cavity_response(cdouble* refl, cdouble* icav, cdouble* trans,
                            const cdouble* a1, const cdouble* a2, std::size_t n,
                            double sqrt_r1, double sqrt_r2, double sqrt_r1r2,
                            double t1, double t2) {
  active().cavity_response(refl, icav, trans, a1, a2, n, sqrt_r1, sqrt_r2, sqrt_r1r2, t1, t2);
}

}  // namespace afcmem::kernels
