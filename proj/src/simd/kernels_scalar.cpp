#include "antiwick/simd/kernels.hpp"

#include <cassert>
#include <cstddef>

namespace antiwick::simd::scalar {

std::complex<double> complex_dot_conj(std::span<const double> ar, std::span<const double> ai,
                                      std::span<const double> br, std::span<const double> bi) {
  assert(ar.size() == ai.size() && ar.size() == br.size() && ar.size() == bi.size());
  const std::size_t n = ar.size();
  // Four partial sums, combined in a fixed order.
  double re[4] = {0, 0, 0, 0};
  double im[4] = {0, 0, 0, 0};
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      re[l] += ar[k + l] * br[k + l] + ai[k + l] * bi[k + l];
      im[l] += ai[k + l] * br[k + l] - ar[k + l] * bi[k + l];
    }
  }
  double sr = (re[0] + re[2]) + (re[1] + re[3]);
  double si = (im[0] + im[2]) + (im[1] + im[3]);
  for (; k < n; ++k) {
    sr += ar[k] * br[k] + ai[k] * bi[k];
    si += ai[k] * br[k] - ar[k] * bi[k];
  }
  return {sr, si};
}

void caxpy(std::complex<double> alpha, std::span<const double> xr, std::span<const double> xi,
           std::span<double> yr, std::span<double> yi) {
  assert(xr.size() == xi.size() && xr.size() == yr.size() && xr.size() == yi.size());
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t k = 0; k < xr.size(); ++k) {
    yr[k] += ar * xr[k] - ai * xi[k];
    yi[k] += ar * xi[k] + ai * xr[k];
  }
}

void recurrence_step(double a, double b, std::span<const double> x, std::span<const double> prev,
                     std::span<const double> cur, std::span<double> next) {
  assert(x.size() == prev.size() && x.size() == cur.size() && x.size() == next.size());
  for (std::size_t k = 0; k < x.size(); ++k) next[k] = a * x[k] * cur[k] - b * prev[k];
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s[4] = {0, 0, 0, 0};
  std::size_t k = 0;
  for (; k + 4 <= a.size(); k += 4)
    for (std::size_t l = 0; l < 4; ++l) s[l] += a[k + l] * b[k + l];
  double t = (s[0] + s[2]) + (s[1] + s[3]);
  for (; k < a.size(); ++k) t += a[k] * b[k];
  return t;
}

}  // namespace antiwick::simd::scalar
