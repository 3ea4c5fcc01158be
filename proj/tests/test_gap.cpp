#include <cmath>
#include <vector>

#include "doctest.h"

#include "antiwick/errors.hpp"
#include "antiwick/gap.hpp"
#include "antiwick/nelder_mead.hpp"

using namespace antiwick;

namespace {

const Symbol kZ2 = Symbol::polynomial({{{1}, {1}, 1.0}});
const Symbol kX2 = Symbol::polynomial_xw({{{2}, {0}, 1.0}});

SearchConfig fast_config() {
  SearchConfig c;
  c.coarse_points = 21;
  c.quadrature = {8, 16};
  return c;
}

}  // namespace

TEST_CASE("Nelder-Mead finds the Rosenbrock minimum") {
  NelderMeadOptions opt;
  opt.max_iterations = 5000;
  opt.initial_step = 0.5;
  opt.x_tolerance = 1e-12;
  opt.f_tolerance = 1e-20;
  const auto r = nelder_mead(
      [](std::span<const double> x) { return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2); },
      {-1.2, 1.0}, opt);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.value < 1e-10);
}

TEST_CASE("Nelder-Mead projection and determinism") {
  NelderMeadOptions opt;
  auto f = [](std::span<const double> x) { return (x[0] + 3) * (x[0] + 3) + x[1] * x[1]; };
  auto clamp = [](std::span<double> x) {
    for (double& v : x) v = std::max(v, -1.0);
  };
  const auto a = nelder_mead(f, {0.5, 0.5}, opt, clamp);
  const auto b = nelder_mead(f, {0.5, 0.5}, opt, clamp);
  CHECK(a.x == b.x);
  CHECK(a.x[0] == doctest::Approx(-1.0));
  CHECK(std::abs(a.x[1]) < 1e-6);
}

TEST_CASE("lexicographic tie-break") {
  const double p[] = {0.0, 1.0}, q[] = {0.0, 2.0};
  CHECK(better_point(1.0, p, 1.0, q));
  CHECK_FALSE(better_point(1.0, q, 1.0, p));
  CHECK(better_point(0.5, q, 1.0, p));
}

TEST_CASE("ball-average gaps of quadratic symbols") {
  const auto cfg = fast_config();
  for (double h : {0.01, 1.0}) {
    CAPTURE(h);
    // avg |z|^2 on B(c, sqrt h) = |c|^2 + h/2; avg x^2 = c_x^2 + h/4.
    CHECK(lambda_gap(kZ2, h, cfg).value == doctest::Approx(h / 2).epsilon(1e-6));
    CHECK(lambda_gap(kX2, h, cfg).value == doctest::Approx(h / 4).epsilon(1e-6));
    CHECK(lambda_sup_gap(kZ2, h, cfg).value == doctest::Approx(0.999 * 0.999 * h).epsilon(1e-6));
    const auto ess = lambda_ess_gap(kX2, h, default_shells(h), cfg);
    CHECK(ess.value == doctest::Approx(h / 4).epsilon(1e-6));
    CHECK_FALSE(ess.diverged);
  }
  const auto d = lambda_ess_gap(kZ2, 1.0, default_shells(1.0), cfg);
  CHECK(d.diverged);
  CHECK(std::isinf(d.value));
  CHECK(d.profile.size() == 4);
}

TEST_CASE("gap_values keeps lambda below its companions") {
  const auto g = gap_values(kX2, 0.1, fast_config(), default_shells(0.1), {0.5, 1.0});
  CHECK(g.lambda.value <= g.lambda_ess.value + 1e-15);
  CHECK(g.lambda.value <= g.lambda_sup.value + 1e-15);
  REQUIRE(g.c_r.size() == 2);
  // C_r(x^2) = r^2 / 4.
  CHECK(g.c_r[1].second == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("C_r of |z|^2") {
  const auto p = c_r_profile(kZ2, {0.25, 0.5, 1.0}, fast_config(), 1.0);
  for (auto [r, v] : p) CHECK(v == doctest::Approx(r * r / 2).epsilon(1e-6));
}

TEST_CASE("constants short-circuit") {
  const Symbol c = Symbol::constant(3.0);
  CHECK(lambda_gap(c, 0.5, fast_config()).value == 3.0);
  CHECK(lambda_sup_ess_gap(c, 0.5, default_shells(0.5), fast_config()).value == 3.0);
}

TEST_CASE("discreteness verdicts") {
  const auto cfg = fast_config();
  CHECK(discreteness_indicator(kZ2, 1.0, default_shells(1.0), cfg).verdict == Discreteness::discrete);
  CHECK(discreteness_indicator(kX2, 1.0, default_shells(1.0), cfg).verdict == Discreteness::not_discrete);
  CHECK(discreteness_indicator(Symbol::constant(1.0), 1.0, default_shells(1.0), cfg).verdict ==
        Discreteness::not_discrete);
  CHECK_THROWS_AS(discreteness_indicator(kZ2, 1.0, {4.0, 8.0}, cfg), ValidationError);
  CHECK(std::string(to_string(Discreteness::inconclusive)) == "inconclusive");
}

TEST_CASE("search config validation") {
  SearchConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.box_for(0.01) == 10.0);
  CHECK(c.box_for(4.0) == 20.0);
  CHECK(c.step_for(1.0) == doctest::Approx(0.5));
  c.box = -1.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = SearchConfig{};
  c.iterations = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = SearchConfig{};
  c.shell_angular = 6;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  CHECK_THROWS_AS(lambda_gap(kZ2, -1.0, SearchConfig{}), ValidationError);
}
