#include "antiwick/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <thread>

#include "antiwick/antiwick.hpp"
#include "antiwick/coherent.hpp"
#include "antiwick/errors.hpp"
#include "antiwick/spectrum.hpp"
#include "antiwick/symbol_io.hpp"

namespace antiwick {

using nlohmann::json;

double AnalyticEss::at(double h) const { return coef * std::pow(h, h_power); }

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Symbol abs_z2() { return Symbol::polynomial({{{1}, {1}, 1.0}}); }
Symbol x_squared() { return Symbol::polynomial_xw({{{2}, {0}, 1.0}}); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::vector<SuiteEntry> default_suite() {
  std::vector<SuiteEntry> s;
  s.push_back({Symbol::constant(1.0).with_id("one"), AnalyticEss{1.0, 0.0}});
  s.push_back({abs_z2().with_id("abs_z2"), std::nullopt});
  s.push_back({x_squared().with_id("x2"), AnalyticEss{0.5, 1.0}});
  s.push_back({Symbol::radial_power(-0.4).with_id("radial_pow_m0.4"), std::nullopt});
  s.push_back({Symbol::radial_power(0.5).with_id("radial_pow_0.5"), std::nullopt});
  s.push_back({Symbol::radial_power(2.0).with_id("radial_pow_2"), std::nullopt});
  s.push_back({plus_constant(abs_z2(), 5.0).with_id("abs_z2_plus5"), std::nullopt});
  return s;
}

std::vector<SuiteEntry> default_semiclassical_suite() {
  const SemiclassicalData meta{0.0, 0.0, 3};
  std::vector<SuiteEntry> s;
  s.push_back({Symbol::constant(1.0).with_id("one").with_semiclassical(meta), AnalyticEss{1.0, 0.0}});
  s.push_back({abs_z2().with_id("abs_z2").with_semiclassical(meta), std::nullopt});
  s.push_back({x_squared().with_id("x2").with_semiclassical(meta), AnalyticEss{0.5, 1.0}});
  return s;
}

std::vector<double> default_h_values() {
  std::vector<double> h;
  for (int k = 0; k <= 6; ++k) h.push_back(std::pow(10.0, -3.0 + 0.5 * k));
  return h;
}

SweepConfig default_sweep_config() {
  SweepConfig c;
  c.symbols = default_suite();
  c.h_values = default_h_values();
  return c;
}

// ------------------------------------------------------------ config parsing

namespace {

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) throw ConfigError(path + "/" + key, "missing required field");
  return j.at(key);
}

double positive_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "must be a number");
  const double v = j.get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(path, "must be positive and finite");
  return v;
}

int positive_int(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1) throw ConfigError(path, "must be a positive integer");
  return j.get<int>();
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError(path + "/" + it.key(), "unknown field");
  }
}

}  // namespace

SweepConfig parse_sweep_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");
  check_keys(doc,
             {"version", "symbols", "h_values", "n_b_ladder", "search", "semiclassical_N", "workers", "seed",
              "timings", "output"},
             "");
  const json& ver = field(doc, "version", "");
  if (!ver.is_number_integer() || ver.get<int>() != 1) throw ConfigError("/version", "unsupported version (expected 1)");

  SweepConfig c = default_sweep_config();
  if (doc.contains("symbols")) {
    const json& syms = doc["symbols"];
    if (!syms.is_array() || syms.empty()) throw ConfigError("/symbols", "must be a non-empty array");
    c.symbols.clear();
    for (std::size_t i = 0; i < syms.size(); ++i) {
      const std::string p = "/symbols/" + std::to_string(i);
      json rec = syms[i];
      std::optional<AnalyticEss> ess;
      if (rec.is_object() && rec.contains("analytic")) {
        const json& an = rec["analytic"];
        if (!an.is_object()) throw ConfigError(p + "/analytic", "must be an object");
        if (an.contains("ess_bottom")) {
          const json& e = an["ess_bottom"];
          const std::string ep = p + "/analytic/ess_bottom";
          if (!e.is_object() || !e.contains("coef") || !e["coef"].is_number())
            throw ConfigError(ep, "expected {\"coef\": number, \"h_power\": number}");
          AnalyticEss a;
          a.coef = e["coef"].get<double>();
          if (e.contains("h_power")) {
            if (!e["h_power"].is_number()) throw ConfigError(ep + "/h_power", "must be a number");
            a.h_power = e["h_power"].get<double>();
          }
          ess = a;
        }
        rec.erase("analytic");
      }
      Symbol s = symbol_from_json(rec, p);
      if (s.id().empty()) s = s.with_id("symbol" + std::to_string(i));
      c.symbols.push_back({s, ess});
    }
  }
  if (doc.contains("h_values")) {
    const json& hv = doc["h_values"];
    if (!hv.is_array() || hv.empty()) throw ConfigError("/h_values", "must be a non-empty array");
    c.h_values.clear();
    for (std::size_t i = 0; i < hv.size(); ++i)
      c.h_values.push_back(positive_number(hv[i], "/h_values/" + std::to_string(i)));
  }
  if (doc.contains("n_b_ladder")) {
    const json& lad = doc["n_b_ladder"];
    if (!lad.is_array() || lad.empty()) throw ConfigError("/n_b_ladder", "must be a non-empty array");
    c.n_b_ladder.clear();
    for (std::size_t i = 0; i < lad.size(); ++i) {
      const std::string p = "/n_b_ladder/" + std::to_string(i);
      const int n = positive_int(lad[i], p);
      if (!c.n_b_ladder.empty() && n <= c.n_b_ladder.back()) throw ConfigError(p, "ladder must be strictly increasing");
      if (n > 2048) throw ConfigError(p, "basis sizes above 2048 are not supported");
      c.n_b_ladder.push_back(n);
    }
  }
  if (doc.contains("search")) {
    const json& s = doc["search"];
    const std::string sp = "/search";
    if (!s.is_object()) throw ConfigError(sp, "must be an object");
    check_keys(s, {"box", "box_policy", "step", "coarse_points", "iterations", "candidates", "shells", "quadrature", "cap"},
               sp);
    if (s.contains("box")) c.search.box = positive_number(s["box"], sp + "/box");
    if (s.contains("step")) c.search.step = positive_number(s["step"], sp + "/step");
    if (s.contains("box_policy")) {
      const json& bp = s["box_policy"];
      if (bp == "basis") c.box_policy = BoxPolicy::basis;
      else if (bp == "fixed") c.box_policy = BoxPolicy::fixed;
      else throw ConfigError(sp + "/box_policy", "must be \"basis\" or \"fixed\"");
    }
    if (s.contains("coarse_points")) c.search.coarse_points = positive_int(s["coarse_points"], sp + "/coarse_points");
    if (s.contains("iterations")) c.search.iterations = positive_int(s["iterations"], sp + "/iterations");
    if (s.contains("candidates")) c.search.candidates = positive_int(s["candidates"], sp + "/candidates");
    if (s.contains("cap")) c.search.cap = positive_number(s["cap"], sp + "/cap");
    if (s.contains("shells")) {
      const json& sh = s["shells"];
      if (!sh.is_array() || sh.size() < 4) throw ConfigError(sp + "/shells", "need at least 4 shell radii");
      c.shells.clear();
      for (std::size_t i = 0; i < sh.size(); ++i) {
        const std::string p = sp + "/shells/" + std::to_string(i);
        const double r = positive_number(sh[i], p);
        if (!c.shells.empty() && r <= c.shells.back()) throw ConfigError(p, "shells must be strictly increasing");
        c.shells.push_back(r);
      }
    }
    if (s.contains("quadrature")) {
      const json& q = s["quadrature"];
      if (!q.is_object()) throw ConfigError(sp + "/quadrature", "must be an object");
      if (q.contains("shells")) c.search.quadrature.shells = positive_int(q["shells"], sp + "/quadrature/shells");
      if (q.contains("angular")) c.search.quadrature.angular = positive_int(q["angular"], sp + "/quadrature/angular");
    }
    try {
      c.search.validate();
    } catch (const ValidationError& e) {
      throw ConfigError(sp, e.what());
    }
  }
  if (doc.contains("semiclassical_N")) c.semiclassical_n = positive_int(doc["semiclassical_N"], "/semiclassical_N");
  if (doc.contains("workers")) c.workers = positive_int(doc["workers"], "/workers");
  if (doc.contains("seed")) {
    const auto& sd = doc["seed"];
    if (!sd.is_number_unsigned() && !(sd.is_number_integer() && sd.get<long long>() >= 0))
      throw ConfigError("/seed", "must be a nonnegative integer");
    c.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("timings")) {
    if (!doc["timings"].is_boolean()) throw ConfigError("/timings", "must be a boolean");
    c.timings = doc["timings"].get<bool>();
  }
  return c;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", path + ": " + e.what());
  }
  return parse_sweep_config(doc);
}

// ------------------------------------------------------------ rows

SearchConfig row_search(const SweepConfig& cfg, double h) {
  SearchConfig s = cfg.search;
  if (cfg.box_policy == BoxPolicy::basis && !cfg.n_b_ladder.empty())
    s.box = std::sqrt(h * (2.0 * cfg.n_b_ladder.back() + 1.0));
  return s;
}

GapReport run_row(const SuiteEntry& entry, double h, const SweepConfig& cfg, bool semiclassical) {
  const auto t0 = std::chrono::steady_clock::now();
  const Symbol& a = entry.symbol;
  GapReport r;
  r.symbol_id = a.id();
  r.h = h;
  r.n_b = cfg.n_b_ladder.empty() ? 0 : cfg.n_b_ladder.back();
  r.ess_bottom = entry.ess_bottom ? entry.ess_bottom->at(h) : kNaN;
  r.slack = semiclassical ? std::max(std::pow(h, cfg.semiclassical_n), 1e-12) : kNaN;
  try {
    if (cfg.n_b_ladder.empty()) throw ValidationError("empty N_b ladder");
    const CoherentFrame frame = CoherentFrame::gaussian(h, a.dim());
    const SpectrumResult spec = converge_bottom(a, frame, cfg.n_b_ladder, 1);
    r.spec_bottom = spec.bottom();
    r.converged = spec.converged;
    if (!spec.monotone) r.caveats.push_back("ladder_not_monotone");

    // A constant minus its floor is zero, which would leave nothing to compare.
    const double fl = a.kind() == SymbolKind::constant ? 0.0 : a.floor();
    const Symbol shifted = fl != 0.0 ? minus_floor(a) : a;
    std::vector<double> shells;
    for (double s : cfg.shells) shells.push_back(s * std::sqrt(h));
    const GapValues g = gap_values(shifted, h, row_search(cfg, h), shells);
    r.lambda = g.lambda.value + fl;
    r.lambda_ess = g.lambda_ess.value + fl;
    r.lambda_sup = g.lambda_sup.value + fl;
    r.lambda_sup_ess = g.lambda_sup_ess.value + fl;
    r.caveats.insert(r.caveats.end(), g.caveats.begin(), g.caveats.end());
    if (fl != 0.0) r.caveats.push_back("floor_shifted=" + fmt("%.12g", fl));

    const double num = r.spec_bottom - fl;
    r.ratio = semiclassical ? num / g.lambda_sup.value : num / g.lambda.value;
    const double ess_den = semiclassical ? g.lambda_sup_ess.value : g.lambda_ess.value;
    r.ess_ratio = entry.ess_bottom && std::isfinite(ess_den) ? (r.ess_bottom - fl) / ess_den : kNaN;
    if (semiclassical) r.caveats.push_back("slack=" + fmt("%.6g", r.slack));
  } catch (const Error& e) {
    r.error = e.what();
    r.spec_bottom = r.lambda = r.lambda_ess = r.lambda_sup = r.lambda_sup_ess = r.ratio = r.ess_ratio = kNaN;
    r.converged = false;
    r.caveats.push_back("error");
  }
  if (cfg.timings)
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

namespace {

SweepOutcome run_rows(const SweepConfig& cfg, bool semiclassical) {
  struct Task {
    std::size_t sym;
    double h;
  };
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < cfg.symbols.size(); ++s)
    for (double h : cfg.h_values) tasks.push_back({s, h});
  std::vector<GapReport> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++)
      rows[i] = run_row(cfg.symbols[tasks[i].sym], tasks[i].h, cfg, semiclassical);
  };
  const int n_workers = std::clamp<int>(cfg.workers, 1, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  std::stable_sort(rows.begin(), rows.end(), [](const GapReport& x, const GapReport& y) {
    if (x.symbol_id != y.symbol_id) return x.symbol_id < y.symbol_id;
    return x.h < y.h;
  });
  SweepOutcome out;
  out.rows = std::move(rows);
  for (const auto& r : out.rows)
    if (!r.error.empty()) out.exit_code = 3;
  return out;
}

}  // namespace

SweepOutcome run_sweep(const SweepConfig& cfg) { return run_rows(cfg, false); }

SweepOutcome run_semiclassical(const SweepConfig& cfg, int n) {
  for (const auto& e : cfg.symbols)
    if (!e.symbol.semiclassical())
      throw ValidationError("symbol '" + e.symbol.id() + "' has no semiclassical metadata (m, rho, N0)");
  for (double h : cfg.h_values)
    if (!(h > 0.0) || h > 1.0) throw ValidationError("semiclassical sweeps need h in (0, 1]");
  SweepConfig c = cfg;
  c.semiclassical_n = n;
  return run_rows(c, true);
}

}  // namespace antiwick
