#include <complex>
#include <random>
#include <vector>

#include "doctest.h"

#include "antiwick/simd/kernels.hpp"

namespace simd = antiwick::simd;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

// Lengths around the 4-wide vector width, including remainders.
const std::size_t kLengths[] = {0, 1, 3, 4, 5, 7, 8, 15, 16, 17, 63, 257};

}  // namespace

TEST_CASE("avx2 kernels match the scalar reference") {
  if (!simd::avx2_available()) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(42);
  for (std::size_t n : kLengths) {
    CAPTURE(n);
    const auto ar = random_vec(n, rng), ai = random_vec(n, rng), br = random_vec(n, rng), bi = random_vec(n, rng);

    const auto s = simd::scalar::complex_dot_conj(ar, ai, br, bi);
    const auto v = simd::avx2::complex_dot_conj(ar, ai, br, bi);
    CHECK(std::abs(s - v) <= 1e-13 * (1.0 + n));

    CHECK(simd::avx2::dot(ar, br) == doctest::Approx(simd::scalar::dot(ar, br)).epsilon(1e-13).scale(1.0 + n));

    auto yr1 = br, yi1 = bi, yr2 = br, yi2 = bi;
    const std::complex<double> alpha(0.7, -1.3);
    simd::scalar::caxpy(alpha, ar, ai, yr1, yi1);
    simd::avx2::caxpy(alpha, ar, ai, yr2, yi2);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(yr1[k] == doctest::Approx(yr2[k]).epsilon(1e-14));
      CHECK(yi1[k] == doctest::Approx(yi2[k]).epsilon(1e-14));
    }

    std::vector<double> n1(n), n2(n);
    simd::scalar::recurrence_step(1.5, 0.25, ar, ai, br, n1);
    simd::avx2::recurrence_step(1.5, 0.25, ar, ai, br, n2);
    for (std::size_t k = 0; k < n; ++k) CHECK(n1[k] == doctest::Approx(n2[k]).epsilon(1e-14));
  }
}

TEST_CASE("scalar kernels against direct formulas") {
  const std::vector<double> ar{1, 2}, ai{0, 1}, br{3, 0}, bi{1, -1};
  // (1)(3 - i) + (2 + i)(0 + i) = 3 - i + 2i - 1 = 2 + i
  const auto d = simd::scalar::complex_dot_conj(ar, ai, br, bi);
  CHECK(d.real() == doctest::Approx(2.0));
  CHECK(d.imag() == doctest::Approx(1.0));
  CHECK(simd::scalar::dot(ar, br) == doctest::Approx(3.0));

  std::vector<double> yr{1, 1}, yi{0, 0};
  simd::scalar::caxpy({0.0, 1.0}, ar, ai, yr, yi);  // y += i x
  CHECK(yr[0] == doctest::Approx(1.0));
  CHECK(yi[0] == doctest::Approx(1.0));
  CHECK(yr[1] == doctest::Approx(0.0));
  CHECK(yi[1] == doctest::Approx(2.0));
}

TEST_CASE("backend override") {
  const auto before = simd::active_backend();
  simd::set_backend(simd::Backend::scalar);
  CHECK(simd::active_backend() == simd::Backend::scalar);
  if (!simd::avx2_available()) CHECK_THROWS_AS(simd::set_backend(simd::Backend::avx2), std::invalid_argument);
  simd::set_backend(before);
  CHECK(std::string(simd::backend_name(simd::Backend::avx2)) == "avx2");
}
