#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "antiwick/errors.hpp"
#include "antiwick/spectrum.hpp"

using namespace antiwick;

namespace {

const Symbol kZ2 = Symbol::polynomial({{{1}, {1}, 1.0}});
const Symbol kX2 = Symbol::polynomial_xw({{{2}, {0}, 1.0}});

}  // namespace

TEST_CASE("|z|^2 spectrum is 2h(n+1)") {
  const auto r = spectrum_bottom(assemble_polynomial(kZ2, 0.25, 20), 5);
  REQUIRE(r.eigenvalues.size() == 5);
  for (int k = 0; k < 5; ++k) CHECK(r.eigenvalues[k] == doctest::Approx(0.5 * (k + 1)).epsilon(1e-13));
  CHECK(r.residual < 1e-12);
  CHECK(std::isnan(r.delta));
}

TEST_CASE("truncated x^2 against frozen reference eigenvalues") {
  // Reference bottoms and smallest consecutive gaps from an independent
  // numpy eigensolve of (X^2)_{N+1} leading block + 1/2, h = 1.
  struct Ref {
    int n;
    double bottom, gap;
  };
  for (const Ref& ref : {Ref{64, 0.5191275110, 0.05622523}, Ref{128, 0.5096008294, 0.02850734},
                         Ref{256, 0.5048097546, 0.01435473}}) {
    CAPTURE(ref.n);
    const auto op = assemble_polynomial(kX2, 1.0, ref.n);
    CHECK(spectrum_bottom(op, 1).bottom() == doctest::Approx(ref.bottom).epsilon(1e-9));
    const auto gaps = eigen_accumulation(op, ref.n);
    CHECK(*std::min_element(gaps.begin(), gaps.end()) == doctest::Approx(ref.gap).epsilon(1e-6));
  }
}

TEST_CASE("ladder is nested and monotone") {
  const auto r = converge_bottom(kX2, CoherentFrame::gaussian(1.0), {16, 32, 64});
  REQUIRE(r.bottoms.size() == 3);
  CHECK(r.ladder == std::vector<int>{16, 32, 64});
  CHECK(r.monotone);
  CHECK(r.bottoms[0] >= r.bottoms[1]);
  CHECK(r.bottoms[1] >= r.bottoms[2]);
  CHECK(r.bottom() == doctest::Approx(r.bottoms.back()));
  CHECK(r.delta == doctest::Approx(r.bottoms[2] - r.bottoms[1]));
  // The true bottom 1/2 is only approached slowly.
  CHECK_FALSE(r.converged);

  const auto z = converge_bottom(kZ2, CoherentFrame::gaussian(1.0), {4, 8});
  CHECK(z.converged);
  CHECK(z.bottom() == doctest::Approx(2.0));
}

TEST_CASE("Rayleigh quotient bounds the bottom") {
  const auto op = assemble_polynomial(kX2, 0.5, 32);
  const auto r = spectrum_bottom(op, 1);
  CHECK(rayleigh_quotient(op, r.bottom_vector) == doctest::Approx(r.bottom()).epsilon(1e-12));
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(32);
  f(0) = 1.0;
  f(2) = 0.3;
  CHECK(rayleigh_quotient(op, f) >= r.bottom());
}

TEST_CASE("spectrum input validation") {
  const auto op = assemble_polynomial(kZ2, 1.0, 4);
  CHECK_THROWS_AS(spectrum_bottom(op, 0), ValidationError);
  CHECK_THROWS_AS(spectrum_bottom(op, 5), ValidationError);
  CHECK_THROWS_AS(converge_bottom(op, {4, 2}), ValidationError);
  CHECK_THROWS_AS(converge_bottom(op, {2, 8}), ValidationError);
  CHECK_THROWS_AS(eigen_accumulation(op, 1), ValidationError);
  CHECK_THROWS_AS(rayleigh_quotient(op, Eigen::VectorXcd::Zero(4)), ValidationError);
  CHECK_THROWS_AS(rayleigh_quotient(op, Eigen::VectorXcd::Ones(3)), ShapeError);
}
