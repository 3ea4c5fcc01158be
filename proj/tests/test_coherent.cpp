#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"

#include "antiwick/coherent.hpp"
#include "antiwick/errors.hpp"
#include "antiwick/hermite.hpp"
#include "antiwick/state_io.hpp"

using namespace antiwick;
using cd = std::complex<double>;

namespace {

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("antiwick_test_" + name)).string();
}

}  // namespace

TEST_CASE("coherent states are unit vectors centred where asked") {
  for (double h : {0.05, 1.0}) {
    const auto frame = CoherentFrame::gaussian(h);
    const SpatialGrid g = SpatialGrid::for_modes(h, 1, 3.0);
    const StateVector phi = coherent_state(frame, 1.2, -0.7, g);
    CHECK(phi.norm() == doctest::Approx(1.0).epsilon(1e-10));
    // Position expectation by direct summation.
    double mx = 0.0;
    for (int j = 0; j < g.points(); ++j) mx += g.point(j) * std::norm(phi.samples()[j]) * g.spacing();
    CHECK(mx == doctest::Approx(1.2).epsilon(1e-9));
  }
}

TEST_CASE("coverage and resolution errors") {
  const auto frame = CoherentFrame::gaussian(1.0);
  const SpatialGrid narrow(3.0, 256);
  try {
    coherent_state(frame, 2.5, 0.0, narrow);
    FAIL("expected CoverageError");
  } catch (const CoverageError& e) {
    CHECK(e.required_half_width() > 3.0);
  }
  CHECK_THROWS_AS(coherent_state(frame, 0.0, 0.0, SpatialGrid(10.0, 8)), ShapeError);
}

TEST_CASE("transform of the Gaussian has the closed form") {
  // V phi_0 (x, w) = exp(-(x^2 + w^2) / 4h) exp(-i x w / 2h).
  const double h = 0.5;
  const auto frame = CoherentFrame::gaussian(h);
  const StateVector f = StateVector::hermite({cd(1.0)}, h);
  const PhaseGrid pg = PhaseGrid::box(0.0, 0.0, 2.0, 2.0, 8, 8);
  const auto V = stft(frame, f, pg);
  REQUIRE(V.rows() == 8);
  REQUIRE(V.cols() == 8);
  for (int i = 0; i < 8; ++i)
    for (int k = 0; k < 8; ++k) {
      const double x = pg.x_node(i), w = pg.w_node(k);
      const cd want = std::exp(-(x * x + w * w) / (4 * h)) * std::exp(cd(0.0, -x * w / (2 * h)));
      CHECK(std::abs(V(i, k) - want) < 1e-9);
    }
}

TEST_CASE("Parseval and reproducing defects are small on a covering grid") {
  const double h = 0.3;
  const auto frame = CoherentFrame::gaussian(h);
  const StateVector f = StateVector::random_hermite(6, h, 11);
  const PhaseGrid pg = PhaseGrid::for_modes(h, 6);
  CHECK(parseval_defect(frame, f, pg) < 1e-8);
  CHECK(reproducing_defect(frame, f, pg) < 1e-7);
  CHECK(parseval_defect(frame, StateVector::hermite({cd(0.0)}, h), pg) == 0.0);
  // A box that misses most of the mass violates Parseval visibly.
  const PhaseGrid small = PhaseGrid::box(0.0, 0.0, 0.2, 0.2, 16, 16);
  CHECK(parseval_defect(frame, f, small) > 0.5);
}

TEST_CASE("non-Gaussian windows") {
  const double s = std::sqrt(0.5);
  const auto frame = CoherentFrame::hermite_window(1.0, {s, s});
  CHECK(frame.norm_defect() < 1e-10);
  CHECK(frame.window_order() == 1);
  CHECK_FALSE(frame.is_gaussian());
  CHECK_THROWS_AS(CoherentFrame::hermite_window(1.0, {1.0, 1.0}), ValidationError);
  const StateVector f = StateVector::random_hermite(4, 1.0, 5);
  CHECK(parseval_defect(frame, f, PhaseGrid::for_modes(1.0, 8)) < 1e-7);
}

TEST_CASE("mode tail mass") {
  // Q(1, x) = e^{-x}.
  CHECK(mode_tail_mass(1.0, 1, 2.0) == doctest::Approx(std::exp(-2.0)));
  const double R = mode_cover_radius(0.1, 10);
  CHECK(mode_tail_mass(0.1, 10, R) <= 1e-8 * (1 + 1e-9));
  CHECK(mode_tail_mass(0.1, 10, 0.95 * R) > 1e-8);
}

TEST_CASE("dilation is unitary and maps basis scales") {
  const StateVector f = StateVector::random_hermite(5, 1.0, 2);
  const StateVector d = dilate(f, 0.25);
  CHECK(d.basis_h() == doctest::Approx(4.0));
  CHECK(d.norm() == doctest::Approx(f.norm()));

  const SpatialGrid g = SpatialGrid::for_modes(1.0, 1);
  const StateVector s = coherent_state(CoherentFrame::gaussian(1.0), 0.0, 0.0, g);
  const StateVector ds = dilate(s, 0.25);
  CHECK(ds.recompute_norm() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ds.grid().half_width() == doctest::Approx(g.half_width() / 0.5));
  // D_h phi(x) = h^{1/4} phi(sqrt(h) x) with phi the h = 1 Gaussian.
  const int j = g.points() / 2 + 7;
  const double x = ds.grid().point(j);
  CHECK(std::abs(ds.samples()[j] - cd(std::pow(0.25, 0.25) * hermite_function(0, 0.5 * x, 1.0))) < 1e-12);
}

TEST_CASE("quadratic form of |z|^2 on a Hermite mode") {
  // <Op(|z|^2) psi_n, psi_n> = 2 h (n + 1).
  const double h = 0.2;
  const auto frame = CoherentFrame::gaussian(h);
  const Symbol z2 = Symbol::polynomial({{{1}, {1}, 1.0}});
  for (int n : {0, 3}) {
    std::vector<cd> c(n + 1, 0.0);
    c[n] = 1.0;
    const double q = quadratic_form(z2, frame, StateVector::hermite(c, h), PhaseGrid::for_modes(h, n + 1));
    CHECK(q == doctest::Approx(2 * h * (n + 1)).epsilon(1e-7));
  }
}

TEST_CASE("state files round-trip") {
  const StateVector f = StateVector::random_hermite(4, 0.5, 9);
  const StateVector s = f.sampled_on(SpatialGrid::for_modes(0.5, 4));
  for (bool binary : {false, true}) {
    const std::string p = tmp_path(binary ? "state.bin" : "state.txt");
    binary ? write_state_binary(s, p) : write_state_text(s, p);
    const StateVector r = binary ? read_state_binary(p) : read_state_text(p);
    REQUIRE(r.samples().size() == s.samples().size());
    CHECK(r.grid().half_width() == s.grid().half_width());
    CHECK(r.h() == s.h());
    double worst = 0.0;
    for (std::size_t k = 0; k < s.samples().size(); ++k) worst = std::max(worst, std::abs(r.samples()[k] - s.samples()[k]));
    CHECK(worst == 0.0);
    std::remove(p.c_str());
  }
}

TEST_CASE("malformed state files") {
  const std::string p = tmp_path("bad.txt");
  {
    std::ofstream o(p);
    o << "# antiwick-state 1.0 4 1 1.0\n0 0\n1 1\n";
  }
  CHECK_THROWS_AS(read_state_text(p), ValidationError);
  {
    std::ofstream o(p, std::ios::binary);
    o << "NOTMAGIC";
  }
  CHECK_THROWS_AS(read_state_binary(p), ValidationError);
  std::remove(p.c_str());
  CHECK_THROWS_AS(read_state_text(tmp_path("does_not_exist")), Error);
}
