#include <cmath>
#include <vector>

#include "doctest.h"

#include "antiwick/errors.hpp"
#include "antiwick/symbol.hpp"
#include "antiwick/symbol_diagnostics.hpp"
#include "antiwick/symbol_io.hpp"

using namespace antiwick;
using nlohmann::json;

TEST_CASE("polynomial symbols evaluate through their z-table") {
  const Symbol z2 = Symbol::polynomial({{{1}, {1}, 1.0}});
  CHECK(z2.at(3.0, 4.0) == doctest::Approx(25.0));
  CHECK(z2.kind() == SymbolKind::polynomial);
  CHECK(z2.polynomial_degree() == 2);

  // x^2 = (z + conj z)^2 / 4.
  const Symbol x2 = Symbol::polynomial_xw({{{2}, {0}, 1.0}});
  CHECK(x2.at(1.5, -7.0) == doctest::Approx(2.25));
  CHECK(x2.kind() == SymbolKind::polynomial);

  const Symbol mixed = Symbol::polynomial_xw({{{2}, {2}, 1.0}, {{0}, {0}, 1.0}});
  CHECK(mixed.at(2.0, 3.0) == doctest::Approx(37.0));
}

TEST_CASE("non-Hermitian coefficient tables are rejected") {
  CHECK_THROWS_AS(Symbol::polynomial({{{2}, {0}, 1.0}}), ValidationError);
  CHECK_NOTHROW(Symbol::polynomial({{{1}, {1}, 2.0}, {{2}, {0}, {0.0, 0.5}}, {{0}, {2}, {0.0, -0.5}}}));
}

TEST_CASE("negative polynomial values are reported") {
  const Symbol s = Symbol::polynomial({{{1}, {1}, 1.0}, {{0}, {0}, -1.0}});
  CHECK_THROWS_AS(s.at(0.1, 0.1), NumericError);
}

TEST_CASE("powers and their singular sets") {
  const Symbol r = Symbol::radial_power(-0.4);
  CHECK(r.at(3.0, 4.0) == doctest::Approx(std::pow(25.0, -0.4)));
  CHECK_THROWS_AS(r.at(0.0, 0.0), DomainError);
  CHECK(Symbol::radial_power(0.5).at(0.0, 0.0) == 0.0);

  const Symbol p = Symbol::abs_power({{{1}, {1}, 1.0}}, -0.5);  // |x w|^{-1/2}
  CHECK(p.at(2.0, 8.0) == doctest::Approx(0.25));
  CHECK_THROWS_AS(p.at(0.0, 1.0), DomainError);
}

TEST_CASE("radial profiles are exposed where they exist") {
  CHECK(Symbol::radial_power(2.0).radial_profile());
  CHECK(Symbol::constant(2.0).radial_profile());
  CHECK(Symbol::polynomial({{{1}, {1}, 1.0}}).radial_profile());
  CHECK_FALSE(Symbol::polynomial_xw({{{2}, {0}, 1.0}}).radial_profile());
  const auto g = *Symbol::radial_power(2.0).radial_profile();
  CHECK(g(3.0) == doctest::Approx(9.0));
}

TEST_CASE("combinators") {
  const Symbol z2 = Symbol::polynomial({{{1}, {1}, 1.0}});
  const double v[2] = {1.0, -2.0};
  CHECK(dilated(z2, 3.0).at(1.0, 1.0) == doctest::Approx(18.0));
  CHECK(translated(z2, v).at(1.0, -2.0) == doctest::Approx(0.0));
  CHECK(scaled(z2, 0.5).at(2.0, 0.0) == doctest::Approx(2.0));
  CHECK(sum(z2, Symbol::constant(1.0)).at(1.0, 1.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(scaled(z2, -1.0), ValidationError);

  const Symbol shifted = plus_constant(z2, 5.0);
  CHECK(shifted.floor() == 5.0);
  CHECK(shifted.at(1.0, 0.0) == doctest::Approx(6.0));
  const Symbol back = minus_floor(shifted);
  CHECK(back.floor() == 0.0);
  CHECK(back.at(1.0, 2.0) == doctest::Approx(5.0));
}

TEST_CASE("wrong-length points raise ShapeError") {
  const Symbol z2 = Symbol::polynomial({{{1}, {1}, 1.0}});
  const std::vector<double> p{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(z2(p, 1.0), ShapeError);
}

TEST_CASE("semiclassical metadata is validated") {
  const Symbol z2 = Symbol::polynomial({{{1}, {1}, 1.0}});
  CHECK_THROWS_AS(z2.with_semiclassical({0.0, 0.7, 3}), ValidationError);
  CHECK_THROWS_AS(z2.with_semiclassical({0.0, 0.0, -1}), ValidationError);
  CHECK(z2.with_semiclassical({2.0, 0.0, 3}).semiclassical()->n0 == 3);
}

TEST_CASE("symbol records round-trip") {
  const std::vector<json> records = {
      {{"kind", "constant"}, {"value", 2.5}, {"id", "c"}},
      {{"kind", "polynomial"}, {"terms", {{1, 1, 1.0}, {2, 0, 0.0, 0.5}, {0, 2, 0.0, -0.5}}}, {"id", "p"}},
      {{"kind", "polynomial"}, {"terms", {{1, 1, 1.0}}}, {"shift", 5.0}, {"id", "s"}},
      {{"kind", "abs_power"}, {"P", {{1, 0, 1.0}}}, {"beta", 0.5}, {"id", "a"}},
      {{"kind", "radial_power"}, {"beta", -0.4}, {"semiclassical", {{"m", 0}, {"rho", 0}, {"N0", 3}}}},
  };
  const double pts[][2] = {{0.3, -1.1}, {2.0, 0.5}, {-1.7, 3.2}};
  for (const auto& rec : records) {
    CAPTURE(rec.dump());
    const Symbol a = symbol_from_json(rec);
    const Symbol b = symbol_from_json(symbol_to_json(a));
    CHECK(a.id() == b.id());
    CHECK(a.floor() == b.floor());
    CHECK(a.semiclassical().has_value() == b.semiclassical().has_value());
    for (const auto& p : pts) CHECK(a.at(p[0], p[1]) == doctest::Approx(b.at(p[0], p[1])).epsilon(1e-14));
  }
}

TEST_CASE("malformed symbol records name the offending field") {
  auto field_of = [](const json& j) {
    try {
      symbol_from_json(j, "/symbols/0");
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<no error>");
  };
  CHECK(field_of({{"value", 1}}) == "/symbols/0/kind");
  CHECK(field_of({{"kind", "constant"}}) == "/symbols/0/value");
  CHECK(field_of({{"kind", "polynomial"}, {"terms", {{1, 1}}}}) == "/symbols/0/terms/0");
  CHECK(field_of({{"kind", "nope"}}) == "/symbols/0/kind");
  CHECK(field_of({{"kind", "builtin"}, {"name", "nope"}}) == "/symbols/0/name");
  CHECK(field_of({{"kind", "constant"}, {"value", 1}, {"dim", 0}}) == "/symbols/0/dim");
  // Non-Hermitian table: a validation failure reported at the record.
  CHECK(field_of({{"kind", "polynomial"}, {"terms", {{2, 0, 1.0}}}}) == "/symbols/0");
}

TEST_CASE("growth fit slopes match least-squares closed forms") {
  // log(pi r^2) and log(pi r^4 / 2) regressed on log(1 + r), r = 1..256;
  // reference slopes from an independent numpy fit.
  const auto radii = default_growth_radii();
  REQUIRE(radii.size() == 9);
  const GrowthFit one = growth_check(Symbol::constant(1.0), radii, 1.0);
  CHECK(one.N == doctest::Approx(2.22879363).epsilon(1e-7));
  const GrowthFit z2 = growth_check(Symbol::polynomial({{{1}, {1}, 1.0}}), radii, 1.0);
  CHECK(z2.N == doctest::Approx(4.45758726).epsilon(1e-7));
  // Every sample lies under the raised constant.
  for (std::size_t i = 0; i < radii.size(); ++i)
    CHECK(z2.integrals[i] <= 1.05 * z2.C * std::pow(1.0 + radii[i], z2.N) * (1 + 1e-12));
}

TEST_CASE("A-infinity constant of power weights") {
  // avg(r^{-2b}) avg(r^{2b}) over a disk centred at the origin = 1 / (1 - b^2).
  for (double b : {0.5, 0.4, 0.2}) {
    const auto r = ainfty_constant(Symbol::radial_power(-b), 2.0, {{0.0, 0.0}}, {0.3, 1.0, 5.0}, 1.0);
    CHECK(r.constant_estimate == doctest::Approx(1.0 / (1.0 - b * b)).epsilon(1e-9));
  }
  const auto c = ainfty_constant(Symbol::constant(4.0), 3.0, {{1.0, 1.0}}, {1.0}, 1.0);
  CHECK(c.constant_estimate == 1.0);
  CHECK_THROWS_AS(ainfty_constant(Symbol::constant(1.0), 1.0, {{0.0, 0.0}}, {1.0}, 1.0), ValidationError);
}

TEST_CASE("doubling ratio of homogeneous weights on centred disks") {
  // Integral over B(0, r) of |z|^{2b} scales as r^{2 + 2b}.
  for (double b : {1.0, -0.5}) {
    const double d = doubling_bound(Symbol::radial_power(b), {{0.0, 0.0}}, {0.5, 2.0}, 1.0);
    CHECK(d == doctest::Approx(std::pow(2.0, 2.0 + 2.0 * b)).epsilon(1e-9));
  }
}
