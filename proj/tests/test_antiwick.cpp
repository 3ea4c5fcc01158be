#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

#include "antiwick/antiwick.hpp"
#include "antiwick/errors.hpp"
#include "antiwick/operator_io.hpp"
#include "antiwick/simd/kernels.hpp"

using namespace antiwick;

namespace {

const Symbol kZ2 = Symbol::polynomial({{{1}, {1}, 1.0}});
const Symbol kX2 = Symbol::polynomial_xw({{{2}, {0}, 1.0}});

// Position operator in the h-Hermite basis: X_{n,n+1} = sqrt(h (n + 1) / 2).
Eigen::MatrixXd position_matrix(int n, double h) {
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) X(k, k + 1) = X(k + 1, k) = std::sqrt(h * (k + 1) / 2.0);
  return X;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("identity symbol gives the identity on every route") {
  const double h = 0.3;
  const int n = 12;
  const auto frame = CoherentFrame::gaussian(h);
  const Symbol one = Symbol::constant(1.0);
  CHECK(max_abs(assemble_polynomial(one, h, n).matrix() - Eigen::MatrixXcd::Identity(n, n)) < 1e-14);
  CHECK(max_abs(assemble_radial(one, h, n).matrix() - Eigen::MatrixXcd::Identity(n, n)) < 1e-12);
  CHECK(max_abs(assemble_quadrature(one, frame, n, quadrature_grid(frame, n)).matrix() -
                Eigen::MatrixXcd::Identity(n, n)) < 1e-8);
}

TEST_CASE("x^2 equals X^2 + h/2") {
  for (double h : {0.01, 1.0}) {
    const int n = 24;
    const Eigen::MatrixXd X = position_matrix(n + 1, h);
    const Eigen::MatrixXd want = (X * X).topLeftCorner(n, n) + 0.5 * h * Eigen::MatrixXd::Identity(n, n);
    const auto op = assemble_polynomial(kX2, h, n);
    CHECK(op.is_real());
    CHECK((op.real_part() - want).cwiseAbs().maxCoeff() < 1e-13 * (1.0 + h * n));
    const auto frame = CoherentFrame::gaussian(h);
    const auto q = assemble_quadrature(kX2, frame, n, quadrature_grid(frame, n));
    CHECK((q.real_part() - want).cwiseAbs().maxCoeff() < 1e-6 * h * n);
    CHECK(q.hermitian_defect() == 0.0);
  }
}

TEST_CASE("radial eigenvalues of |z|^(2 beta)") {
  // mu_n = (2h)^beta Gamma(n + 1 + beta) / Gamma(n + 1).
  for (double beta : {-0.4, 0.5, 2.0})
    for (double h : {0.1, 1.0}) {
      const auto op = assemble_radial(Symbol::radial_power(beta), h, 16);
      for (int n = 0; n < 16; ++n) {
        const double want = std::pow(2 * h, beta) * std::exp(std::lgamma(n + 1 + beta) - std::lgamma(n + 1.0));
        CAPTURE(beta);
        CAPTURE(n);
        CHECK(op.matrix()(n, n).real() == doctest::Approx(want).epsilon(1e-11));
      }
    }
  // Tabulated h = 1 values.
  const auto op = assemble_radial(Symbol::radial_power(0.5), 1.0, 11);
  CHECK(op.matrix()(0, 0).real() == doctest::Approx(1.2533141373155).epsilon(1e-12));
  CHECK(op.matrix()(10, 10).real() == doctest::Approx(4.63743538077462).epsilon(1e-12));
  CHECK(assemble_radial(Symbol::radial_power(-0.4), 1.0, 1).matrix()(0, 0).real() ==
        doctest::Approx(1.12859668112223).epsilon(1e-12));
}

TEST_CASE("routes agree on |z|^2") {
  const double h = 0.5;
  const int n = 10;
  const auto p = assemble_polynomial(kZ2, h, n);
  const auto r = assemble_radial(kZ2, h, n);
  for (int k = 0; k < n; ++k) CHECK(p.matrix()(k, k).real() == doctest::Approx(2 * h * (k + 1)).epsilon(1e-14));
  CHECK(max_abs(p.matrix() - r.matrix()) < 1e-11);
  CHECK(assemble(kZ2, CoherentFrame::gaussian(h), n).route() == AssemblyRoute::polynomial);
  CHECK(preferred_route(Symbol::radial_power(0.5), CoherentFrame::gaussian(h)) == AssemblyRoute::radial);
  const auto w = CoherentFrame::hermite_window(h, {std::sqrt(0.5), std::sqrt(0.5)});
  CHECK(preferred_route(kZ2, w) == AssemblyRoute::quadrature);
}

TEST_CASE("quadrature assembly matches across SIMD backends and worker counts") {
  const double h = 0.2;
  const int n = 16;
  const auto frame = CoherentFrame::gaussian(h);
  const Symbol a = Symbol::abs_power({{{1}, {0}, 1.0}, {{0}, {1}, 0.5}}, 0.5);
  const auto pg = quadrature_grid(frame, n);
  const auto before = simd::active_backend();
  simd::set_backend(simd::Backend::scalar);
  const auto s = assemble_quadrature(a, frame, n, pg);
  if (simd::avx2_available()) {
    simd::set_backend(simd::Backend::avx2);
    const auto v = assemble_quadrature(a, frame, n, pg);
    CHECK(max_abs(s.matrix() - v.matrix()) < 1e-13 * max_abs(s.matrix()));
  }
  simd::set_backend(before);
  const auto t = assemble_quadrature(a, frame, n, pg, 4);
  const auto u = assemble_quadrature(a, frame, n, pg, 1);
  CHECK(max_abs(t.matrix() - u.matrix()) == 0.0);
}

TEST_CASE("assembly errors") {
  const auto frame = CoherentFrame::gaussian(1.0);
  CHECK_THROWS_AS(assemble_quadrature(kZ2, frame, 32, PhaseGrid::box(0, 0, 2, 2, 10, 10)), CoverageError);
  CHECK_THROWS_AS(assemble_polynomial(Symbol::radial_power(0.5), 1.0, 4), ValidationError);
  CHECK_THROWS_AS(assemble_radial(kX2, 1.0, 4), ValidationError);
  CHECK_THROWS_AS(assemble_polynomial(kZ2, 1.0, 0), ValidationError);
  CHECK_THROWS_AS(assemble_polynomial(kZ2, -1.0, 4), ValidationError);
}

TEST_CASE("leading blocks and shifts") {
  const auto op = assemble_polynomial(kX2, 1.0, 8);
  const auto b = op.leading_block(3);
  CHECK(b.size() == 3);
  CHECK(max_abs(b.matrix() - op.matrix().topLeftCorner(3, 3)) == 0.0);
  CHECK(op.shifted(2.0).matrix()(5, 5).real() == doctest::Approx(op.matrix()(5, 5).real() + 2.0));
  CHECK_THROWS_AS(op.leading_block(9), ShapeError);
}

TEST_CASE("operator files round-trip") {
  const std::string p = (std::filesystem::temp_directory_path() / "antiwick_test_op.txt").string();
  const Symbol c = Symbol::polynomial({{{1}, {1}, 2.0}, {{2}, {0}, {0.0, 0.5}}, {{0}, {2}, {0.0, -0.5}}}).with_id("cx");
  for (const auto& op : {assemble_polynomial(kX2.with_id("x2"), 0.5, 6), assemble_polynomial(c, 0.5, 6)}) {
    write_operator(op, p);
    const auto r = read_operator(p);
    CHECK(r.symbol_id() == op.symbol_id());
    CHECK(r.h() == op.h());
    CHECK(r.route() == op.route());
    CHECK(r.is_real() == op.is_real());
    CHECK(max_abs(r.matrix() - op.matrix()) == 0.0);
  }
  {
    std::ofstream o(p);
    o << "{\"symbol_id\":\"a\",\"h\":1,\"N_b\":3,\"route\":\"polynomial\",\"complex\":false}\n1 0 0\n0 1\n";
  }
  CHECK_THROWS_AS(read_operator(p), ValidationError);
  std::remove(p.c_str());
}
