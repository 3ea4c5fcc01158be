#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "antiwick/hermite.hpp"

using namespace antiwick;

namespace {

// Physicists' Hermite polynomials by the textbook recurrence, for small n only.
double hermite_poly(int n, double x) {
  double p0 = 1.0, p1 = 2.0 * x;
  if (n == 0) return p0;
  for (int k = 1; k < n; ++k) {
    const double p2 = 2.0 * x * p1 - 2.0 * k * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

TEST_CASE("low modes match the explicit formula") {
  for (double h : {0.1, 1.0, 3.0})
    for (int n = 0; n <= 12; ++n)
      for (double x : {-2.0, -0.3, 0.0, 0.7, 1.9}) {
        const double y = x / std::sqrt(h);
        const double want = std::pow(h, -0.25) * hermite_poly(n, y) * std::exp(-y * y / 2.0) /
                            std::sqrt(std::pow(2.0, n) * factorial(n) * std::sqrt(std::numbers::pi));
        CHECK(hermite_function(n, x, h) == doctest::Approx(want).epsilon(1e-11).scale(1e-12));
      }
}

TEST_CASE("orthonormality by trapezoid quadrature") {
  const double h = 0.5;
  const int count = 40;
  const double L = std::sqrt(h) * 14.0;
  const int M = 4000;
  std::vector<double> xs(M);
  const double dx = 2.0 * L / M;
  for (int j = 0; j < M; ++j) xs[j] = -L + j * dx;
  const auto t = hermite_table(count, xs, h);
  double worst = 0.0;
  for (int m = 0; m < count; ++m)
    for (int n = m; n < count; ++n) {
      double s = 0.0;
      for (int j = 0; j < M; ++j) s += t[m * M + j] * t[n * M + j];
      worst = std::max(worst, std::abs(s * dx - (m == n ? 1.0 : 0.0)));
    }
  CHECK(worst < 1e-12);
}

TEST_CASE("high modes stay finite and normalized") {
  const double h = 1.0;
  const int n = 1500;
  const double tp = hermite_turning_point(n, h);
  CHECK(tp == doctest::Approx(std::sqrt(2.0 * n + 1.0)));
  const double L = tp + 12.0;
  const int M = 40000;
  std::vector<double> xs(M);
  const double dx = 2.0 * L / M;
  for (int j = 0; j < M; ++j) xs[j] = -L + j * dx;
  const auto t = hermite_table(n + 1, xs, h);
  double s = 0.0;
  for (int j = 0; j < M; ++j) {
    const double v = t[static_cast<std::size_t>(n) * M + j];
    REQUIRE(std::isfinite(v));
    s += v * v;
  }
  CHECK(s * dx == doctest::Approx(1.0).epsilon(1e-9));
  // Deep in the tail the value underflows to zero instead of overflowing.
  CHECK(hermite_function(n, 200.0, h) == 0.0);
}

TEST_CASE("parity") {
  for (int n = 0; n < 30; ++n)
    CHECK(hermite_function(n, -1.3, 0.7) == doctest::Approx((n % 2 ? -1.0 : 1.0) * hermite_function(n, 1.3, 0.7)));
}
