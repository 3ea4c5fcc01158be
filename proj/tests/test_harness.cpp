#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#include "antiwick/errors.hpp"
#include "antiwick/harness.hpp"
#include "antiwick/report.hpp"

using namespace antiwick;
using nlohmann::json;

namespace {

std::string config_error_field(const json& doc) {
  try {
    parse_sweep_config(doc);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

SweepConfig small_config() {
  SweepConfig c;
  c.n_b_ladder = {16, 32};
  c.search.coarse_points = 21;
  c.search.quadrature = {8, 16};
  return c;
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("antiwick_test_" + name)).string();
}

}  // namespace

TEST_CASE("default suite and h grid") {
  const auto suite = default_suite();
  REQUIRE(suite.size() == 7);
  const auto hs = default_h_values();
  REQUIRE(hs.size() == 7);
  CHECK(hs.front() == doctest::Approx(1e-3));
  CHECK(hs.back() == doctest::Approx(1.0));
  for (const auto& e : default_semiclassical_suite()) CHECK(e.symbol.semiclassical().has_value());
}

TEST_CASE("config parsing") {
  const json doc = {{"version", 1},
                    {"symbols", {{{"kind", "polynomial"}, {"terms", {{1, 1, 1.0}}}, {"id", "z2"}}}},
                    {"h_values", {0.1, 1.0}},
                    {"n_b_ladder", {16, 32}},
                    {"search", {{"box", 5.0}, {"box_policy", "fixed"}, {"shells", {2, 4, 8, 16}}}},
                    {"workers", 2},
                    {"seed", 7}};
  const SweepConfig c = parse_sweep_config(doc);
  CHECK(c.symbols.size() == 1);
  CHECK(c.symbols[0].symbol.id() == "z2");
  CHECK(c.h_values == std::vector<double>{0.1, 1.0});
  CHECK(c.box_policy == BoxPolicy::fixed);
  CHECK(c.shells == std::vector<double>{2, 4, 8, 16});
  CHECK(c.workers == 2);
  CHECK(c.seed == 7);
  CHECK(row_search(c, 0.1).box_for(0.1) == 5.0);

  const SweepConfig d = parse_sweep_config(json{{"version", 1}});
  CHECK(d.symbols.size() == default_suite().size());
  // Basis policy: S = sqrt(h (2 N_b + 1)) at the top rung.
  CHECK(row_search(d, 1.0).box_for(1.0) == doctest::Approx(std::sqrt(513.0)));
}

TEST_CASE("config errors carry JSON-pointer paths") {
  CHECK(config_error_field({{"version", 2}}) == "/version");
  CHECK(config_error_field({{"version", 1}, {"h_values", {0.1, -1.0}}}) == "/h_values/1");
  CHECK(config_error_field({{"version", 1}, {"n_b_ladder", {32, 16}}}) == "/n_b_ladder/1");
  CHECK(config_error_field({{"version", 1}, {"n_b_ladder", {4096}}}) == "/n_b_ladder/0");
  CHECK(config_error_field({{"version", 1}, {"bogus", 1}}) == "/bogus");
  CHECK(config_error_field({{"version", 1}, {"search", {{"box_policy", "x"}}}}) == "/search/box_policy");
  CHECK(config_error_field({{"version", 1}, {"search", {{"shells", {1, 2}}}}}) == "/search/shells");
  CHECK(config_error_field({{"version", 1}, {"symbols", {{{"kind", "constant"}}}}}) == "/symbols/0/value");
  CHECK(config_error_field({{"version", 1}, {"timings", 1}}) == "/timings");
  CHECK(config_error_field(json::array()) == "");
  CHECK_THROWS_AS(load_sweep_config(tmp_path("missing.json")), ConfigError);
}

TEST_CASE("constant rows have ratio 1") {
  const SweepConfig c = small_config();
  const SuiteEntry one{Symbol::constant(1.0).with_id("one"), AnalyticEss{1.0, 0.0}};
  const GapReport r = run_row(one, 0.1, c);
  CHECK(r.error.empty());
  CHECK(r.spec_bottom == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.lambda == 1.0);
  CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.ess_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.converged);
}

TEST_CASE("floor-shifted ratio of |z|^2 + 5") {
  const SweepConfig c = small_config();
  const SuiteEntry e{plus_constant(Symbol::polynomial({{{1}, {1}, 1.0}}), 5.0).with_id("s"), std::nullopt};
  const GapReport r = run_row(e, 0.1, c);
  // spec bottom 2h + 5, lambda of the shifted symbol h/2.
  CHECK(r.spec_bottom == doctest::Approx(5.2).epsilon(1e-12));
  CHECK(r.lambda == doctest::Approx(5.05).epsilon(1e-6));
  CHECK(r.ratio == doctest::Approx(4.0).epsilon(1e-5));
  CHECK(std::isnan(r.ess_ratio));
}

TEST_CASE("sweep rows are ordered and deterministic across worker counts") {
  SweepConfig c = small_config();
  c.symbols = {SuiteEntry{Symbol::polynomial_xw({{{2}, {0}, 1.0}}).with_id("x2"), AnalyticEss{0.5, 1.0}},
               SuiteEntry{Symbol::polynomial({{{1}, {1}, 1.0}}).with_id("abs_z2"), std::nullopt}};
  c.h_values = {1.0, 0.1};
  c.workers = 1;
  const auto a = run_sweep(c);
  c.workers = 3;
  const auto b = run_sweep(c);
  REQUIRE(a.rows.size() == 4);
  CHECK(a.exit_code == 0);
  CHECK(a.rows[0].symbol_id == "abs_z2");
  CHECK(a.rows[0].h == 0.1);
  CHECK(a.rows[3].symbol_id == "x2");
  CHECK(to_csv(a.rows) == to_csv(b.rows));
}

TEST_CASE("semiclassical runs validate their inputs") {
  SweepConfig c = small_config();
  c.symbols = {SuiteEntry{Symbol::polynomial({{{1}, {1}, 1.0}}).with_id("z2"), std::nullopt}};
  c.h_values = {0.1};
  CHECK_THROWS_AS(run_semiclassical(c, 4), ValidationError);
  c.symbols = default_semiclassical_suite();
  c.h_values = {2.0};
  CHECK_THROWS_AS(run_semiclassical(c, 4), ValidationError);
}

TEST_CASE("CSV layout") {
  GapReport r;
  r.symbol_id = "a,b";
  r.h = 0.1;
  r.n_b = 64;
  r.spec_bottom = 1.0 / 3.0;
  r.lambda = std::numeric_limits<double>::infinity();
  r.ess_ratio = std::numeric_limits<double>::quiet_NaN();
  r.converged = true;
  r.caveats = {"slack=1e-12", "floor_shifted=5"};
  const std::string csv = to_csv({r});
  std::istringstream in(csv);
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  CHECK(header ==
        "symbol_id,h,N_b,spec_bottom,lambda,lambda_ess,lambda_sup,lambda_sup_ess,ratio,ess_ratio,converged,caveats,"
        "runtime_ms");
  CHECK(line == "\"a,b\",0.1,64,0.333333333333,inf,0,0,0,0,nan,true,slack=1e-12;floor_shifted=5,0");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("JSON reports round-trip") {
  GapReport r;
  r.symbol_id = "x";
  r.h = 0.01;
  r.n_b = 128;
  r.spec_bottom = 0.123456789012345;
  r.lambda_ess = std::numeric_limits<double>::infinity();
  r.ess_ratio = std::numeric_limits<double>::quiet_NaN();
  r.caveats = {"c"};
  r.error = "boom";
  const auto back = reports_from_json(json::parse(to_json({r}).dump()));
  REQUIRE(back.size() == 1);
  CHECK(back[0].symbol_id == "x");
  CHECK(back[0].n_b == 128);
  CHECK(back[0].spec_bottom == r.spec_bottom);
  CHECK(std::isinf(back[0].lambda_ess));
  CHECK(std::isnan(back[0].ess_ratio));
  CHECK(back[0].caveats == r.caveats);
  CHECK(back[0].error == "boom");
}

TEST_CASE("report emission errors") {
  CHECK_THROWS_AS(emit_report({}, ReportFormat::csv, tmp_path("empty.csv")), ValidationError);
  GapReport r;
  r.symbol_id = "x";
  try {
    emit_report({r}, ReportFormat::csv, "/nonexistent_dir/out.csv");
    FAIL("expected an I/O error");
  } catch (const ValidationError&) {
    FAIL("wrong error type");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("/nonexistent_dir/out.csv") != std::string::npos);
  }
  const std::string p = tmp_path("one.json");
  emit_report({r}, ReportFormat::json, p);
  std::ifstream in(p);
  CHECK(json::parse(in).size() == 1);
  std::remove(p.c_str());
}
