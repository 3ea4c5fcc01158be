// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after the dispatcher has confirmed CPU support.

#include "antiwick/simd/kernels.hpp"

#include <immintrin.h>

#include <cassert>
#include <cstddef>

namespace antiwick::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
  // Lane order (0 + 2) + (1 + 3), matching the scalar reference.
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

}  // namespace

std::complex<double> complex_dot_conj(std::span<const double> ar, std::span<const double> ai,
                                      std::span<const double> br, std::span<const double> bi) {
  assert(ar.size() == ai.size() && ar.size() == br.size() && ar.size() == bi.size());
  const std::size_t n = ar.size();
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d xr = _mm256_loadu_pd(ar.data() + k);
    __m256d xi = _mm256_loadu_pd(ai.data() + k);
    __m256d yr = _mm256_loadu_pd(br.data() + k);
    __m256d yi = _mm256_loadu_pd(bi.data() + k);
    re = _mm256_fmadd_pd(xr, yr, re);
    re = _mm256_fmadd_pd(xi, yi, re);
    im = _mm256_fmadd_pd(xi, yr, im);
    im = _mm256_fnmadd_pd(xr, yi, im);
  }
  double sr = hsum(re);
  double si = hsum(im);
  for (; k < n; ++k) {
    sr += ar[k] * br[k] + ai[k] * bi[k];
    si += ai[k] * br[k] - ar[k] * bi[k];
  }
  return {sr, si};
}

void caxpy(std::complex<double> alpha, std::span<const double> xr, std::span<const double> xi,
           std::span<double> yr, std::span<double> yi) {
  assert(xr.size() == xi.size() && xr.size() == yr.size() && xr.size() == yi.size());
  const std::size_t n = xr.size();
  const __m256d a_r = _mm256_set1_pd(alpha.real());
  const __m256d a_i = _mm256_set1_pd(alpha.imag());
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d vr = _mm256_loadu_pd(xr.data() + k);
    __m256d vi = _mm256_loadu_pd(xi.data() + k);
    __m256d outr = _mm256_loadu_pd(yr.data() + k);
    __m256d outi = _mm256_loadu_pd(yi.data() + k);
    outr = _mm256_fmadd_pd(a_r, vr, outr);
    outr = _mm256_fnmadd_pd(a_i, vi, outr);
    outi = _mm256_fmadd_pd(a_r, vi, outi);
    outi = _mm256_fmadd_pd(a_i, vr, outi);
    _mm256_storeu_pd(yr.data() + k, outr);
    _mm256_storeu_pd(yi.data() + k, outi);
  }
  for (; k < n; ++k) {
    yr[k] += alpha.real() * xr[k] - alpha.imag() * xi[k];
    yi[k] += alpha.real() * xi[k] + alpha.imag() * xr[k];
  }
}

void recurrence_step(double a, double b, std::span<const double> x, std::span<const double> prev,
                     std::span<const double> cur, std::span<double> next) {
  assert(x.size() == prev.size() && x.size() == cur.size() && x.size() == next.size());
  const std::size_t n = x.size();
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(x.data() + k));
    __m256d p = _mm256_mul_pd(vb, _mm256_loadu_pd(prev.data() + k));
    _mm256_storeu_pd(next.data() + k, _mm256_fmsub_pd(t, _mm256_loadu_pd(cur.data() + k), p));
  }
  for (; k < n; ++k) next[k] = a * x[k] * cur[k] - b * prev[k];
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  __m256d s = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4)
    s = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + k), _mm256_loadu_pd(b.data() + k), s);
  double t = hsum(s);
  for (; k < n; ++k) t += a[k] * b[k];
  return t;
}

}  // namespace antiwick::simd::avx2
