#include "afcmem/kernels.hpp"

namespace afcmem::kernels {
namespace {

void cmul_scalar(cdouble* dst, const cdouble* a, const cdouble* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void cmul_add_scalar(cdouble* dst, const cdouble* a, const cdouble* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += a[i] * b[i];
}

void cscale_scalar(cdouble* dst, const cdouble* a, cdouble s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * s;
}

double energy_scalar(const cdouble* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return acc;
}

void mag2_scalar(double* dst, const cdouble* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    dst[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
}

void cavity_response_scalar(cdouble* refl, cdouble* icav, cdouble* trans,
                            const cdouble* a1, const cdouble* a2, std::size_t n,
                            double sqrt_r1, double sqrt_r2, double sqrt_r1r2,
                            double t1, double t2) {
  const cdouble it1(0.0, t1);
  for (std::size_t i = 0; i < n; ++i) {
    const cdouble denom = 1.0 - sqrt_r1r2 * a2[i];
    const cdouble inv = 1.0 / denom;
    refl[i] = (-sqrt_r1 + sqrt_r2 * a2[i]) * inv;
    icav[i] = it1 * inv;
    trans[i] = -(t1 * t2) * a1[i] * inv;
  }
}

}  // namespace

const KernelTable scalar_table = {
    cmul_scalar, cmul_add_scalar, cscale_scalar, energy_scalar, mag2_scalar,
    cavity_response_scalar,
};

}  // namespace afcmem::kernels
