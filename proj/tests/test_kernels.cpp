#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "afcmem/kernels.hpp"
#include "support/oracles.hpp"

using afcmem::cdouble;
namespace k = afcmem::kernels;

namespace {

// Sizes straddle the SIMD width so remainder loops are exercised.
const std::size_t kSizes[] = {1, 2, 3, 4, 7, 8, 64, 257, 4096};

void check_table(const k::KernelTable& table, const k::KernelTable& ref, std::size_t n,
                 std::uint64_t seed) {
  const std::vector<cdouble> a = oracle::random_samples(n, seed);
  const std::vector<cdouble> b = oracle::random_samples(n, seed + 1);
  const cdouble s(0.8315, -0.214);

  std::vector<cdouble> got(n), want(n);
  table.cmul(got.data(), a.data(), b.data(), n);
  ref.cmul(want.data(), a.data(), b.data(), n);
  CHECK(oracle::max_abs_diff(got, want) < 1e-12);

  got = a;
  want = a;
  table.cmul_add(got.data(), b.data(), b.data(), n);
  ref.cmul_add(want.data(), b.data(), b.data(), n);
  CHECK(oracle::max_abs_diff(got, want) < 1e-12);

  table.cscale(got.data(), a.data(), s, n);
  ref.cscale(want.data(), a.data(), s, n);
  CHECK(oracle::max_abs_diff(got, want) < 1e-12);

  const double e_got = table.energy(a.data(), n);
  const double e_want = ref.energy(a.data(), n);
  CHECK(e_got == doctest::Approx(e_want).epsilon(1e-12));

  std::vector<double> m_got(n), m_want(n);
  table.mag2(m_got.data(), a.data(), n);
  ref.mag2(m_want.data(), a.data(), n);
  for (std::size_t i = 0; i < n; ++i) CHECK(m_got[i] == doctest::Approx(m_want[i]).epsilon(1e-12));

  std::vector<cdouble> refl_g(n), icav_g(n), trans_g(n), refl_w(n), icav_w(n), trans_w(n);
  table.cavity_response(refl_g.data(), icav_g.data(), trans_g.data(), a.data(), b.data(), n,
                        0.6325, 0.9950, 0.6293, 0.7746, 0.1000);
  ref.cavity_response(refl_w.data(), icav_w.data(), trans_w.data(), a.data(), b.data(), n,
                      0.6325, 0.9950, 0.6293, 0.7746, 0.1000);
  CHECK(oracle::max_abs_diff(refl_g, refl_w) < 1e-10);
  CHECK(oracle::max_abs_diff(icav_g, icav_w) < 1e-10);
  CHECK(oracle::max_abs_diff(trans_g, trans_w) < 1e-10);
}

}  // namespace

TEST_CASE("scalar kernels match direct formulas") {
  const std::size_t n = 257;
  const std::vector<cdouble> a = oracle::random_samples(n, 11);
  const std::vector<cdouble> b = oracle::random_samples(n, 12);
  std::vector<cdouble> got(n);
  k::scalar_table.cmul(got.data(), a.data(), b.data(), n);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(got[i] - a[i] * b[i]) < 1e-15);

  double energy = 0.0;
  for (const cdouble& v : a) energy += std::norm(v);
  CHECK(k::scalar_table.energy(a.data(), n) == doctest::Approx(energy).epsilon(1e-13));
}

TEST_CASE("active kernel table agrees with the scalar reference") {
  for (const std::size_t n : kSizes) check_table(k::active(), k::scalar_table, n, 1000 + n);
}

#if AFCMEM_HAVE_AVX2_TU
TEST_CASE("avx2 kernels agree with the scalar reference when supported") {
  if (!k::avx2_available()) {
    MESSAGE("cpu lacks avx2; skipping");
    return;
  }
  for (const std::size_t n : kSizes) check_table(k::avx2_table, k::scalar_table, n, 2000 + n);
}
#endif

TEST_CASE("kernel selection reports a known implementation") {
  const std::string name = k::active_name();
  CHECK((name == "scalar" || name == "avx2"));
}
