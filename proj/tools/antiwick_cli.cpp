// antiwick: command-line front end.
//
//   antiwick quantize      --config op.json      assemble and export an operator
//   antiwick gap           --config gap.json     gap estimators for one symbol
//   antiwick sweep         --config sweep.json   full pipeline over symbols x h
//   antiwick semiclassical --config sweep.json   spec_bottom against lambda_sup
//   antiwick ainfty        --config w.json       A-infinity diagnostics of a weight
//   antiwick selftest                            acceptance suite
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "antiwick/acceptance.hpp"
#include "antiwick/antiwick.hpp"
#include "antiwick/errors.hpp"
#include "antiwick/gap.hpp"
#include "antiwick/harness.hpp"
#include "antiwick/operator_io.hpp"
#include "antiwick/report.hpp"
#include "antiwick/spectrum.hpp"
#include "antiwick/symbol_diagnostics.hpp"
#include "antiwick/symbol_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace antiwick;

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericError = 3;

struct Common {
  std::string config;
  std::string out = ".";
  std::string format = "csv";
  int workers = 1;
  bool workers_set = false;
  unsigned long long seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "JSON configuration file");
  cmd->add_option("--out", c.out, "output directory")->capture_default_str();
  cmd->add_option("--format", c.format, "report format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  cmd->add_option_function<int>(
         "--workers",
         [&c](const int& w) {
           c.workers = w;
           c.workers_set = true;
         },
         "worker threads (default 1, or the config value)")
      ->check(CLI::PositiveNumber);
  cmd->add_option_function<unsigned long long>(
      "--seed",
      [&c](const unsigned long long& s) {
        c.seed = s;
        c.seed_set = true;
      },
      "seed for randomized components");
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", path + ": " + e.what());
  }
}

fs::path out_dir(const Common& c) {
  fs::path p(c.out);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw Error("cannot create output directory " + p.string() + ": " + ec.message());
  return p;
}

double number_field(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError(std::string("/") + key, "must be a number");
  return j[key].get<double>();
}

Symbol symbol_field(const json& j) {
  if (!j.contains("symbol")) return Symbol::polynomial({{{1}, {1}, 1.0}}).with_id("abs_z2");
  return symbol_from_json(j["symbol"], "/symbol");
}

// ------------------------------------------------------------ quantize
// {"symbol": {...}, "h": 1, "N_b": 64, "route": "auto" | "quadrature" | "polynomial" | "radial"}

int cmd_quantize(const Common& c) {
  const json cfg = c.config.empty() ? json::object() : load_json(c.config);
  const Symbol a = symbol_field(cfg);
  const double h = number_field(cfg, "h", 1.0);
  const int nb = static_cast<int>(number_field(cfg, "N_b", 64));
  if (!(h > 0.0)) throw ConfigError("/h", "must be positive");
  if (nb < 1 || nb > 4096) throw ConfigError("/N_b", "must be in [1, 4096]");
  const std::string route = cfg.value("route", std::string("auto"));
  const CoherentFrame frame = CoherentFrame::gaussian(h, a.dim());
  HermiteOperator op = [&] {
    if (route == "auto") return assemble(a, frame, nb, c.workers);
    if (route == "quadrature") return assemble_quadrature(a, frame, nb, quadrature_grid(frame, nb), c.workers);
    if (route == "polynomial") return assemble_polynomial(a, h, nb);
    if (route == "radial") return assemble_radial(a, h, nb);
    throw ConfigError("/route", "unknown route '" + route + "'");
  }();
  const fs::path path = out_dir(c) / "operator.txt";
  write_operator(op, path.string());
  const SpectrumResult s = spectrum_bottom(op, std::min(4, nb));
  std::printf("route %s, N_b %d, bottom %s -> %s\n", to_string(op.route()), nb, format_number(s.bottom()).c_str(),
              path.c_str());
  return 0;
}

// ------------------------------------------------------------ gap
// {"symbol": {...}, "h": [..] or h, "search": {...}, "c_r_radii": [..]}

int cmd_gap(const Common& c) {
  const json cfg = c.config.empty() ? json::object() : load_json(c.config);
  const Symbol a = symbol_field(cfg);
  std::vector<double> hs{1.0};
  if (cfg.contains("h")) {
    hs.clear();
    if (cfg["h"].is_array())
      for (const auto& v : cfg["h"]) hs.push_back(v.get<double>());
    else
      hs.push_back(number_field(cfg, "h", 1.0));
  }
  json sweep_doc = {{"version", 1}};
  if (cfg.contains("search")) sweep_doc["search"] = cfg["search"];
  const SweepConfig sc = parse_sweep_config(sweep_doc);
  std::vector<double> radii;
  if (cfg.contains("c_r_radii")) radii = cfg["c_r_radii"].get<std::vector<double>>();

  const fs::path dir = out_dir(c);
  json out = json::array();
  for (double h : hs) {
    if (!(h > 0.0)) throw ConfigError("/h", "must be positive");
    const SearchConfig search = sc.search;
    std::vector<double> shells;
    for (double s : sc.shells) shells.push_back(s * std::sqrt(h));
    const GapValues g = gap_values(a, h, search, shells, radii);
    const DiscretenessReport d = discreteness_indicator(a, h, shells, search);
    auto val = [](double v) -> json { return std::isfinite(v) ? json(v) : json(format_number(v)); };
    json row = {{"symbol_id", a.id()},
                {"h", h},
                {"lambda", val(g.lambda.value)},
                {"lambda_argmin", g.lambda.argmin},
                {"lambda_ess", val(g.lambda_ess.value)},
                {"lambda_sup", val(g.lambda_sup.value)},
                {"lambda_sup_ess", val(g.lambda_sup_ess.value)},
                {"discreteness", to_string(d.verdict)},
                {"caveats", g.caveats}};
    json cr = json::array();
    for (const auto& [r, v] : g.c_r) cr.push_back({{"r", r}, {"value", val(v)}});
    row["c_r"] = cr;
    out.push_back(row);
    char name[64];
    std::snprintf(name, sizeof name, "shells_h%.6g.csv", h);
    write_profile_csv(g.lambda_ess.profile, (dir / name).string());
  }
  const fs::path path = dir / "gap.json";
  std::ofstream f(path);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f << out.dump(2) << "\n";
  std::cout << out.dump(2) << "\n";
  return 0;
}

// ------------------------------------------------------------ sweep / semiclassical

SweepConfig sweep_config(const Common& c, bool semiclassical) {
  SweepConfig cfg = c.config.empty() ? default_sweep_config() : load_sweep_config(c.config);
  // Without an explicit symbol list the semiclassical run uses its own suite.
  if (semiclassical && (c.config.empty() || !load_json(c.config).contains("symbols")))
    cfg.symbols = default_semiclassical_suite();
  if (c.workers_set) cfg.workers = c.workers;
  if (c.seed_set) cfg.seed = c.seed;
  return cfg;
}

int emit(const Common& c, const SweepOutcome& out, const char* stem) {
  const ReportFormat fmt = c.format == "json" ? ReportFormat::json : ReportFormat::csv;
  const fs::path path = out_dir(c) / (std::string(stem) + (fmt == ReportFormat::csv ? ".csv" : ".json"));
  emit_report(out.rows, fmt, path.string());
  int failed = 0;
  for (const auto& r : out.rows)
    if (!r.error.empty()) {
      ++failed;
      std::fprintf(stderr, "row %s h=%s failed: %s\n", r.symbol_id.c_str(), format_number(r.h).c_str(),
                   r.error.c_str());
    }
  std::printf("%zu rows (%d failed) -> %s\n", out.rows.size(), failed, path.c_str());
  return out.exit_code;
}

int cmd_sweep(const Common& c) { return emit(c, run_sweep(sweep_config(c, false)), "sweep"); }

int cmd_semiclassical(const Common& c) {
  const SweepConfig cfg = sweep_config(c, true);
  return emit(c, run_semiclassical(cfg, cfg.semiclassical_n), "semiclassical");
}

// ------------------------------------------------------------ ainfty
// {"symbol": {...}, "p": [2, 4, 8], "centers": [[x, w], ...], "radii": [...], "h": 1}

int cmd_ainfty(const Common& c) {
  const json cfg = c.config.empty() ? json::object() : load_json(c.config);
  const Symbol w = cfg.contains("symbol") ? symbol_from_json(cfg["symbol"], "/symbol") : Symbol::radial_power(-0.5);
  std::vector<double> ps{2.0, 4.0, 8.0};
  if (cfg.contains("p")) ps = cfg["p"].get<std::vector<double>>();
  for (double p : ps)
    if (!(p > 1.0)) throw ConfigError("/p", "exponents must exceed 1");
  std::vector<std::vector<double>> centers;
  if (cfg.contains("centers")) {
    centers = cfg["centers"].get<std::vector<std::vector<double>>>();
  } else {
    for (int i = -4; i <= 4; ++i)
      for (int j = -4; j <= 4; ++j) centers.push_back({0.65 * i + 0.1, 0.65 * j + 0.05});
  }
  for (std::size_t i = 0; i < centers.size(); ++i)
    if (static_cast<int>(centers[i].size()) != w.phase_dim())
      throw ConfigError("/centers/" + std::to_string(i), "wrong number of coordinates");
  std::vector<double> radii{0.25, 0.35, 0.5, 0.7, 1.0, 1.4, 2.0, 2.8, 4.0};
  if (cfg.contains("radii")) radii = cfg["radii"].get<std::vector<double>>();
  const double h = number_field(cfg, "h", 1.0);

  const AInftySweep s = ainfty_sweep(w, centers, radii, h, ps);
  json out = json::array();
  for (const auto& r : s.per_p)
    out.push_back({{"p", r.p},
                   {"constant", std::isfinite(r.constant_estimate) ? json(r.constant_estimate) : json("inf")},
                   {"balls", r.n_balls_sampled},
                   {"worst_center", r.worst_ball.center},
                   {"worst_radius", r.worst_ball.radius},
                   {"diverged", r.diverged}});
  const fs::path path = out_dir(c) / "ainfty.json";
  std::ofstream f(path);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f << out.dump(2) << "\n";
  std::cout << out.dump(2) << "\n";
  return 0;
}

// ------------------------------------------------------------ selftest

int cmd_selftest(const Common& c, const std::vector<int>& only, bool verbose) {
  AcceptanceOptions opt;
  opt.workers = c.workers;
  opt.only = only;
  if (c.seed_set) opt.seed = c.seed;
  bool ok = true;
  for (const auto& r : run_acceptance(opt)) {
    std::printf("%s\n", format_criterion(r).c_str());
    if (verbose)
      for (const auto& chk : r.checks)
        std::printf("    %s %s: %s\n", chk.passed ? "ok  " : "FAIL", chk.name.c_str(), chk.detail.c_str());
    std::fflush(stdout);
    ok = ok && r.passed;
  }
  return ok ? 0 : kNumericError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anti-Wick quantization: operators, spectra and spectral-gap estimators"};
  app.require_subcommand(1);
  Common common;
  std::vector<int> only;
  bool verbose = false;

  auto* quantize = app.add_subcommand("quantize", "assemble an operator and export it");
  auto* gap = app.add_subcommand("gap", "gap estimators for one symbol");
  auto* sweep = app.add_subcommand("sweep", "full pipeline over a symbol suite and h values");
  auto* semi = app.add_subcommand("semiclassical", "spec_bottom against lambda_sup over h in (0, 1]");
  auto* ainfty = app.add_subcommand("ainfty", "A-infinity diagnostics of a weight");
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  for (auto* cmd : {quantize, gap, sweep, semi, ainfty, selftest}) add_common(cmd, common);
  selftest->add_option("--only", only, "criteria to run (1-9)");
  selftest->add_flag("-v,--verbose", verbose, "print every check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  try {
    if (*quantize) return cmd_quantize(common);
    if (*gap) return cmd_gap(common);
    if (*sweep) return cmd_sweep(common);
    if (*semi) return cmd_semiclassical(common);
    if (*ainfty) return cmd_ainfty(common);
    if (*selftest) return cmd_selftest(common, only, verbose);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNumericError;
  }
  return 0;
}
