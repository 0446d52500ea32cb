#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "afcmem/kernels.hpp"

namespace afcmem::kernels {
namespace {

// Two interleaved complex doubles per vector: (re0, im0, re1, im1).
inline __m256d cmul_v(__m256d a, __m256d b) {
  const __m256d ar = _mm256_movedup_pd(a);
  const __m256d ai = _mm256_permute_pd(a, 0xF);
  const __m256d bs = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

// Per-complex-lane |z|^2 broadcast to both slots of the lane.
inline __m256d cnorm_v(__m256d a) {
  const __m256d sq = _mm256_mul_pd(a, a);
  return _mm256_add_pd(sq, _mm256_permute_pd(sq, 0x5));
}

inline __m256d conj_v(__m256d a) {
  const __m256d sign = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
  return _mm256_xor_pd(a, sign);
}

inline __m256d cdiv_v(__m256d num, __m256d den) {
  return _mm256_div_pd(cmul_v(num, conj_v(den)), cnorm_v(den));
}

void cmul_avx2(cdouble* dst, const cdouble* a, const cdouble* b, std::size_t n) {
  auto* d = reinterpret_cast<double*>(dst);
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    _mm256_storeu_pd(d + 2 * i, cmul_v(va, vb));
  }
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void cmul_add_avx2(cdouble* dst, const cdouble* a, const cdouble* b, std::size_t n) {
  auto* d = reinterpret_cast<double*>(dst);
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d vd = _mm256_loadu_pd(d + 2 * i);
    _mm256_storeu_pd(d + 2 * i, _mm256_add_pd(vd, cmul_v(va, vb)));
  }
  for (; i < n; ++i) dst[i] += a[i] * b[i];
}

void cscale_avx2(cdouble* dst, const cdouble* a, cdouble s, std::size_t n) {
  auto* d = reinterpret_cast<double*>(dst);
  const auto* pa = reinterpret_cast<const double*>(a);
  const __m256d vs = _mm256_setr_pd(s.real(), s.imag(), s.real(), s.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    _mm256_storeu_pd(d + 2 * i, cmul_v(va, vs));
  }
  for (; i < n; ++i) dst[i] = a[i] * s;
}

double energy_avx2(const cdouble* a, std::size_t n) {
  const auto* p = reinterpret_cast<const double*>(a);
  const std::size_t m = 2 * n;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(p + i);
    const __m256d v1 = _mm256_loadu_pd(p + i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < m; ++i) sum += p[i] * p[i];
  return sum;
}

void mag2_avx2(double* dst, const cdouble* a, std::size_t n) {
  const auto* p = reinterpret_cast<const double*>(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(p + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(p + 2 * i + 4);
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
    // hadd lane order is (v0 lo, v1 lo, v0 hi, v1 hi); restore element order.
    _mm256_storeu_pd(dst + i, _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0)));
  }
  for (; i < n; ++i)
    dst[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
}

void cavity_response_avx2(cdouble* refl, cdouble* icav, cdouble* trans,
                          const cdouble* a1, const cdouble* a2, std::size_t n,
                          double sqrt_r1, double sqrt_r2, double sqrt_r1r2,
                          double t1, double t2) {
  const __m256d one = _mm256_setr_pd(1.0, 0.0, 1.0, 0.0);
  const __m256d vr1 = _mm256_setr_pd(-sqrt_r1, 0.0, -sqrt_r1, 0.0);
  const __m256d vit1 = _mm256_setr_pd(0.0, t1, 0.0, t1);
  const __m256d vr2 = _mm256_set1_pd(sqrt_r2);
  const __m256d vr12 = _mm256_set1_pd(sqrt_r1r2);
  const __m256d vt12 = _mm256_set1_pd(-t1 * t2);
  auto* pr = reinterpret_cast<double*>(refl);
  auto* pi = reinterpret_cast<double*>(icav);
  auto* pt = reinterpret_cast<double*>(trans);
  const auto* p1 = reinterpret_cast<const double*>(a1);
  const auto* p2 = reinterpret_cast<const double*>(a2);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va1 = _mm256_loadu_pd(p1 + 2 * i);
    const __m256d va2 = _mm256_loadu_pd(p2 + 2 * i);
    const __m256d denom = _mm256_fnmadd_pd(vr12, va2, one);
    const __m256d inv_norm = cnorm_v(denom);
    const __m256d cden = conj_v(denom);
    const __m256d num_r = _mm256_fmadd_pd(vr2, va2, vr1);
    _mm256_storeu_pd(pr + 2 * i, _mm256_div_pd(cmul_v(num_r, cden), inv_norm));
    _mm256_storeu_pd(pi + 2 * i, _mm256_div_pd(cmul_v(vit1, cden), inv_norm));
    const __m256d num_t = _mm256_mul_pd(vt12, va1);
    _mm256_storeu_pd(pt + 2 * i, _mm256_div_pd(cmul_v(num_t, cden), inv_norm));
  }
  const cdouble it1(0.0, t1);
  for (; i < n; ++i) {
    const cdouble inv = 1.0 / (1.0 - sqrt_r1r2 * a2[i]);
    refl[i] = (-sqrt_r1 + sqrt_r2 * a2[i]) * inv;
    icav[i] = it1 * inv;
    trans[i] = -(t1 * t2) * a1[i] * inv;
  }
}

}  // namespace

const KernelTable avx2_table = {
    cmul_avx2, cmul_add_avx2, cscale_avx2, energy_avx2, mag2_avx2,
    cavity_response_avx2,
};

}  // namespace afcmem::kernels

#endif
