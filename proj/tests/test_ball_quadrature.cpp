#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"

#include "antiwick/ball_quadrature.hpp"
#include "antiwick/errors.hpp"

using namespace antiwick;

TEST_CASE("unit-ball rules have normalized weights and interior nodes") {
  for (int dim : {2, 4}) {
    const BallRule& rule = BallRule::get(dim, QuadratureSpec{8, 16});
    double wsum = 0.0;
    for (double w : rule.weights()) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    const auto nodes = rule.nodes();
    for (std::size_t i = 0; i < rule.size(); ++i) {
      double r2 = 0.0;
      for (int c = 0; c < dim; ++c) r2 += nodes[i * dim + c] * nodes[i * dim + c];
      CHECK(r2 < 1.0);
      CHECK(r2 > 0.0);
    }
  }
  CHECK_THROWS_AS(BallRule(3, QuadratureSpec{}), UnsupportedDimension);
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre_unit(6, x, w);
  for (int k = 0; k <= 11; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], k);
    CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
  }
}

TEST_CASE("polar closed forms") {
  const Symbol z2 = Symbol::polynomial({{{1}, {1}, 1.0}});
  const Symbol z4 = Symbol::radial_power(2.0);
  // avg |z|^2 on B(c, r) in R^2 = |c|^2 + r^2/2; avg |z|^4 on B(0, r) = r^4/3.
  for (double r : {0.1, 1.0, 4.0}) {
    CHECK(ball_average(z2, BallSpec{{1.0, -2.0}, r, {}}, 1.0) == doctest::Approx(5.0 + r * r / 2.0).epsilon(1e-13));
    CHECK(ball_average(z4, BallSpec{{0.0, 0.0}, r, {}}, 1.0) == doctest::Approx(std::pow(r, 4) / 3.0).epsilon(1e-12));
    CHECK(ball_integral(Symbol::constant(1.0), BallSpec{{0.0, 0.0}, r, {}}, 1.0) ==
          doctest::Approx(std::numbers::pi * r * r));
  }
  // In R^4, avg |z|^2 on B(0, r) = 2 r^2 / 3.
  const Symbol z2d2 = Symbol::polynomial({{{1, 0}, {1, 0}, 1.0}, {{0, 1}, {0, 1}, 1.0}}, 2);
  CHECK(ball_average(z2d2, BallSpec{{0.0, 0.0, 0.0, 0.0}, 1.5, {}}, 1.0) ==
        doctest::Approx(2.0 * 2.25 / 3.0).epsilon(1e-12));
  CHECK(ball_volume(4, 2.0) == doctest::Approx(std::numbers::pi * std::numbers::pi / 2.0 * 16.0));
}

TEST_CASE("ball average of a non-polynomial symbol against Monte Carlo") {
  // |x|^{1/2} + exp(-|z|^2) on an off-centre disk; 4e5 uniform samples give a
  // standard error near 1e-3 of the mean.
  const Symbol a = sum(Symbol::abs_power({{{1}, {0}, 1.0}}, 0.5),
                       Symbol::radial([](double s) { return std::exp(-s); }));
  const BallSpec ball{{0.4, -0.3}, 1.3, QuadratureSpec{32, 64}};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double s = 0.0, s2 = 0.0;
  int n = 0;
  while (n < 400000) {
    const double dx = u(rng), dw = u(rng);
    if (dx * dx + dw * dw >= 1.0) continue;
    const double v = a.at(0.4 + 1.3 * dx, -0.3 + 1.3 * dw);
    s += v;
    s2 += v * v;
    ++n;
  }
  const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
  CHECK(std::abs(ball_average(a, ball, 1.0) - mean) < 4.0 * se);
}

TEST_CASE("exact radial reduction against the product rule and closed forms") {
  const auto g = *Symbol::radial([](double s) { return std::exp(-s); }).radial_profile();
  const Symbol a = Symbol::radial([](double s) { return std::exp(-s); });
  for (double c : {0.0, 0.5, 1.0, 2.5})
    for (double r : {0.5, 1.0, 2.0}) {
      CAPTURE(c);
      CAPTURE(r);
      CHECK(radial_ball_average_pow(g, c, r) ==
            doctest::Approx(ball_average(a, BallSpec{{c, 0.0}, r, QuadratureSpec{48, 96}}, 1.0)).epsilon(1e-10));
    }
  // Centred disk: avg of exp(-|z|^2) = (1 - e^{-r^2}) / r^2.
  CHECK(radial_ball_average_pow(g, 0.0, 1.5) == doctest::Approx((1.0 - std::exp(-2.25)) / 2.25).epsilon(1e-12));
  // Off-centre |z|^{-1}: finite, and larger than on the centred disk of the same radius.
  const auto inv = *Symbol::radial_power(-0.5).radial_profile();
  CHECK(radial_ball_average_pow(inv, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::isfinite(radial_ball_average_pow(inv, 1.0, 1.0)));
}

TEST_CASE("sup estimate sees the boundary ring") {
  const Symbol z2 = Symbol::polynomial({{{1}, {1}, 1.0}});
  const double s = ball_sup(z2, BallSpec{{0.0, 0.0}, 1.0, {}}, 1.0);
  CHECK(s == doctest::Approx(0.999 * 0.999).epsilon(1e-12));
}

TEST_CASE("singular nodes and bad balls") {
  CHECK_THROWS_AS(check_ball(BallSpec{{0.0}, 1.0, {}}, 2), ShapeError);
  CHECK_THROWS_AS(check_ball(BallSpec{{0.0, 0.0}, -1.0, {}}, 2), ValidationError);
  // Nodes avoid the centre, so a disk centred on the singularity is fine.
  CHECK(std::isfinite(ball_average(Symbol::radial_power(-0.4), BallSpec{{0.0, 0.0}, 1.0, {}}, 1.0)));
}

TEST_CASE("pairwise sum is order-fixed and accurate") {
  std::vector<double> v(1000, 0.1);
  CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
}
