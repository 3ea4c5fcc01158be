#include "antiwick/hermite.hpp"

#include <cmath>
#include <numbers>

#include "antiwick/errors.hpp"
#include "antiwick/simd/kernels.hpp"

namespace antiwick {

std::vector<double> hermite_table(int count, std::span<const double> xs, double h) {
  if (count < 0) throw ValidationError("Hermite mode count must be nonnegative");
  if (!(h > 0.0)) throw ValidationError("h must be positive");
  const std::size_t n_pts = xs.size();
  std::vector<double> out(static_cast<std::size_t>(count) * n_pts, 0.0);
  if (count == 0 || n_pts == 0) return out;

  const double inv_sqrt_h = 1.0 / std::sqrt(h);
  const double norm0 = std::pow(std::numbers::pi, -0.25) * std::pow(h, -0.25);
  std::vector<double> X(n_pts), log_scale(n_pts);
  std::vector<double> prev(n_pts, 0.0), cur(n_pts, 1.0), next(n_pts);
  for (std::size_t i = 0; i < n_pts; ++i) {
    X[i] = xs[i] * inv_sqrt_h;
    log_scale[i] = -0.5 * X[i] * X[i];
  }

  auto emit = [&](int n) {
    double* row = out.data() + static_cast<std::size_t>(n) * n_pts;
    for (std::size_t i = 0; i < n_pts; ++i) {
      const double v = cur[i];
      if (v == 0.0) {
        row[i] = 0.0;
      } else {
        const double mag = norm0 * std::exp(log_scale[i] + std::log(std::abs(v)));
        row[i] = v < 0.0 ? -mag : mag;
      }
    }
  };

  emit(0);
  for (int n = 0; n + 1 < count; ++n) {
    const double a = std::sqrt(2.0 / (n + 1.0));
    const double b = std::sqrt(n / (n + 1.0));
    simd::recurrence_step(a, b, X, prev, cur, next);
    std::swap(prev, cur);
    std::swap(cur, next);
    if ((n & 15) == 15) {
      for (std::size_t i = 0; i < n_pts; ++i) {
        const double m = std::max(std::abs(prev[i]), std::abs(cur[i]));
        if (m > 1e64) {
          prev[i] /= m;
          cur[i] /= m;
          log_scale[i] += std::log(m);
        }
      }
    }
    emit(n + 1);
  }
  return out;
}

double hermite_function(int n, double x, double h) {
  const double pt[1] = {x};
  return hermite_table(n + 1, pt, h).back();
}

double hermite_turning_point(int n, double h) { return std::sqrt(h * (2.0 * n + 1.0)); }

}  // namespace antiwick
