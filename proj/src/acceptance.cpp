#include "antiwick/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <utility>

#include "antiwick/antiwick.hpp"
#include "antiwick/ball_quadrature.hpp"
#include "antiwick/coherent.hpp"
#include "antiwick/errors.hpp"
#include "antiwick/gap.hpp"
#include "antiwick/harness.hpp"
#include "antiwick/report.hpp"
#include "antiwick/spectrum.hpp"
#include "antiwick/symbol_diagnostics.hpp"

namespace antiwick {

namespace {

using Outcome = std::pair<bool, std::string>;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string num_list(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s + "]";
}

bool rel_close(double x, double target, double tol) { return std::abs(x - target) <= tol * std::abs(target); }

class Checks {
 public:
  void run(const std::string& name, const std::function<Outcome()>& f) {
    try {
      auto [ok, detail] = f();
      items_.push_back({name, ok, detail});
    } catch (const std::exception& e) {
      items_.push_back({name, false, std::string("exception: ") + e.what()});
    }
  }
  CriterionResult finish(int id, std::string name) && {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    r.passed = !items_.empty();
    std::string failed, passed;
    for (const auto& c : items_) {
      r.passed = r.passed && c.passed;
      std::string& dst = c.passed ? passed : failed;
      if (!dst.empty()) dst += "; ";
      dst += c.name + " (" + c.detail + ")";
    }
    const std::size_t n_ok = std::count_if(items_.begin(), items_.end(), [](const CheckResult& c) { return c.passed; });
    r.detail = std::to_string(n_ok) + "/" + std::to_string(items_.size()) + " checks";
    if (!failed.empty()) r.detail += "; failed: " + failed;
    r.checks = std::move(items_);
    return r;
  }

 private:
  std::vector<CheckResult> items_;
};

Symbol abs_z2() { return Symbol::polynomial({{{1}, {1}, 1.0}}).with_id("abs_z2"); }
Symbol x_sq() { return Symbol::polynomial_xw({{{2}, {0}, 1.0}}).with_id("x2"); }

double min_eig(const HermiteOperator& op) { return spectrum_bottom(op, 1).bottom(); }

std::map<std::string, std::vector<const GapReport*>> by_symbol(const std::vector<GapReport>& rows) {
  std::map<std::string, std::vector<const GapReport*>> m;
  for (const auto& r : rows) m[r.symbol_id].push_back(&r);
  return m;
}

// Shared sweeps, computed on first use.
struct Context {
  AcceptanceOptions opt;
  std::optional<SweepOutcome> sweep;
  std::optional<SweepOutcome> semiclassical;

  const SweepOutcome& default_sweep() {
    if (!sweep) {
      SweepConfig cfg = default_sweep_config();
      cfg.workers = opt.workers;
      sweep = run_sweep(cfg);
    }
    return *sweep;
  }
  const SweepOutcome& semiclassical_sweep() {
    if (!semiclassical) {
      SweepConfig cfg = default_sweep_config();
      cfg.symbols = default_semiclassical_suite();
      cfg.workers = opt.workers;
      semiclassical = run_semiclassical(cfg, 4);
    }
    return *semiclassical;
  }
};

// ------------------------------------------------------------ 1

CriterionResult harmonic_oscillator(Context&) {
  Checks c;
  const Symbol a = abs_z2();
  for (double h : {0.1, 1.0}) {
    const std::string tag = " h=" + num(h);
    const HermiteOperator P = assemble_polynomial(a, h, 32);
    c.run("polynomial route diagonal 2h(n+1)" + tag, [&]() -> Outcome {
      double err = 0.0;
      for (int m = 0; m < 32; ++m)
        for (int n = 0; n < 32; ++n) {
          const double want = m == n ? 2.0 * h * (n + 1) : 0.0;
          err = std::max(err, std::abs(P.matrix()(m, n) - want));
        }
      return {err <= 1e-12 * 64.0 * h, "max err " + num(err)};
    });
    const CoherentFrame frame = CoherentFrame::gaussian(h);
    const HermiteOperator Q = assemble_quadrature(a, frame, 32, quadrature_grid(frame, 32));
    c.run("quadrature route agrees entrywise" + tag, [&]() -> Outcome {
      const double d = (P.matrix() - Q.matrix()).cwiseAbs().maxCoeff();
      return {d <= 1e-6, "max diff " + num(d)};
    });
    c.run("spectrum bottom = 2h" + tag, [&]() -> Outcome {
      const double b = min_eig(Q);
      return {std::abs(b - 2.0 * h) <= 1e-6, "bottom " + num(b)};
    });
  }
  return std::move(c).finish(1, "harmonic-oscillator exactness");
}

// ------------------------------------------------------------ 2

CriterionResult heisenberg(Context& ctx) {
  Checks c;
  const Symbol a = abs_z2();
  const int max_modes = 16;
  for (double h : {0.1, 1.0}) {
    const std::string tag = " h=" + num(h);
    const CoherentFrame frame = CoherentFrame::gaussian(h);
    const PhaseGrid pg = PhaseGrid::for_modes(h, max_modes);
    double worst_margin = std::numeric_limits<double>::infinity();
    double worst_oracle = 0.0;
    for (int s = 0; s < 100; ++s) {
      const int n = 2 + s % (max_modes - 1);
      const StateVector f = StateVector::random_hermite(n, h, ctx.opt.seed + s);
      const double q = quadratic_form(a, frame, f, pg);
      // Op(|z|^2) = 2h (N + 1) in the h-Hermite basis.
      double oracle = 0.0;
      for (int k = 0; k < n; ++k) oracle += 2.0 * h * (k + 1) * std::norm(f.coefficients()[k]);
      worst_margin = std::min(worst_margin, q - 2.0 * h);
      worst_oracle = std::max(worst_oracle, std::abs(q - oracle));
    }
    c.run("100 random unit states: Q >= 2h - 1e-5" + tag, [&]() -> Outcome {
      return {worst_margin >= -1e-5, "min Q - 2h = " + num(worst_margin)};
    });
    c.run("random states are not minimizers" + tag, [&]() -> Outcome {
      return {worst_margin > 1e-5, "min excess " + num(worst_margin)};
    });
    c.run("Q matches 2h sum (n+1)|c_n|^2" + tag, [&]() -> Outcome {
      return {worst_oracle <= 1e-6, "max diff " + num(worst_oracle)};
    });
    c.run("equality at the h-Gaussian" + tag, [&]() -> Outcome {
      const SpatialGrid g = SpatialGrid::for_modes(h, 1);
      const double q1 = quadratic_form(a, frame, coherent_state(frame, 0.0, 0.0, g), pg);
      const double q2 = quadratic_form(a, frame, StateVector::hermite({1.0}, h), pg);
      return {std::abs(q1 - 2.0 * h) <= 1e-5 && std::abs(q2 - 2.0 * h) <= 1e-5,
              "sampled " + num(q1 - 2.0 * h) + ", hermite " + num(q2 - 2.0 * h)};
    });
    c.run("translated Gaussian exceeds by |z0|^2" + tag, [&]() -> Outcome {
      const double x0 = 0.7 * std::sqrt(h), w0 = -0.4 * std::sqrt(h);
      const SpatialGrid g = SpatialGrid::for_modes(h, 1, std::abs(x0));
      const PhaseGrid pgs = PhaseGrid::for_modes(h, max_modes, 0.0, 0.0, 1.0);
      const double q = quadratic_form(a, frame, coherent_state(frame, x0, w0, g), pgs);
      const double want = 2.0 * h + x0 * x0 + w0 * w0;
      return {std::abs(q - want) <= 1e-5, "Q - oracle = " + num(q - want)};
    });
  }
  return std::move(c).finish(2, "Heisenberg lower bound");
}

// ------------------------------------------------------------ 3

CriterionResult h_uniform_band(Context& ctx) {
  Checks c;
  const auto& out = ctx.default_sweep();
  c.run("sweep rows without errors", [&]() -> Outcome {
    return {out.exit_code == 0, "exit code " + std::to_string(out.exit_code)};
  });
  for (const auto& [id, rows] : by_symbol(out.rows)) {
    c.run("max/min ratio <= 1.25 for " + id, [&, &rows = rows]() -> Outcome {
      std::vector<double> r;
      for (const auto* row : rows) r.push_back(row->ratio);
      const bool finite = std::all_of(r.begin(), r.end(), [](double v) { return std::isfinite(v) && v > 0.0; });
      if (!finite || r.size() != 7) return {false, "ratios " + num_list(r)};
      const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
      return {*hi / *lo <= 1.25, "max/min " + num(*hi / *lo)};
    });
  }
  c.run("|z|^2 ratio = 4 within 2% at every h", [&]() -> Outcome {
    std::vector<double> r;
    bool ok = true;
    for (const auto& row : out.rows)
      if (row.symbol_id == "abs_z2") {
        r.push_back(row.ratio);
        ok = ok && rel_close(row.ratio, 4.0, 0.02);
      }
    return {ok && r.size() == 7, "ratios " + num_list(r)};
  });
  return std::move(c).finish(3, "h-uniform band");
}

// ------------------------------------------------------------ 4

CriterionResult closed_forms(Context&) {
  Checks c;
  const SearchConfig cfg;
  const Symbol z2 = abs_z2(), x2 = x_sq();
  c.run("ball average of |z|^2 = |c|^2 + r^2/2", [&]() -> Outcome {
    double err = 0.0;
    for (auto cen : {std::vector<double>{0.0, 0.0}, {1.5, -0.5}, {-3.0, 2.0}})
      for (double r : {0.1, 1.0, 3.0}) {
        const double want = cen[0] * cen[0] + cen[1] * cen[1] + r * r / 2.0;
        err = std::max(err, std::abs(ball_average(z2, BallSpec{cen, r, cfg.quadrature}, 1.0) - want) / want);
      }
    return {err <= 1e-12, "max rel err " + num(err)};
  });
  for (double h : {0.001, 0.1, 1.0}) {
    const std::string tag = " h=" + num(h);
    c.run("lambda(|z|^2) = h/2" + tag, [&]() -> Outcome {
      const double v = lambda_gap(z2, h, cfg).value;
      return {std::abs(v - h / 2.0) <= 1e-3 * h, num(v / h) + " h"};
    });
    c.run("lambda(x^2) = h/4" + tag, [&]() -> Outcome {
      const double v = lambda_gap(x2, h, cfg).value;
      return {rel_close(v, h / 4.0, 0.01), num(v / h) + " h"};
    });
    c.run("lambda_sup(|z|^2) = h" + tag, [&]() -> Outcome {
      const double v = lambda_sup_gap(z2, h, cfg).value;
      return {rel_close(v, h, 0.02), num(v / h) + " h"};
    });
  }
  c.run("C_r(|z|^2) = r^2/2", [&]() -> Outcome {
    const auto prof = c_r_profile(z2, {0.25, 0.5, 1.0}, cfg, 1.0);
    bool ok = prof.size() == 3;
    std::vector<double> v;
    for (const auto& [r, val] : prof) {
      ok = ok && rel_close(val, r * r / 2.0, 0.005);
      v.push_back(val);
    }
    return {ok, "values " + num_list(v)};
  });
  return std::move(c).finish(4, "gap-functional closed forms");
}

// ------------------------------------------------------------ 5

CriterionResult essential_spectrum(Context& ctx) {
  Checks c;
  const Symbol x2 = x_sq();
  const SpectrumResult s = converge_bottom(x2, CoherentFrame::gaussian(1.0), {64, 128, 256});
  c.run("bottom at N_b=256, h=1 in (0.5, 0.53)", [&]() -> Outcome {
    const double b = s.bottom();
    return {b > 0.5 && b < 0.53, "bottom " + num(b)};
  });
  c.run("bottom decreases along 64, 128, 256", [&]() -> Outcome {
    const auto& b = s.bottoms;
    return {b.size() == 3 && b[1] < b[0] && b[2] < b[1], "bottoms " + num_list(b)};
  });
  c.run("operator equals X^2 + h/2 on the resolved block", [&]() -> Outcome {
    // Position operator x = (a + a+)/2 is tridiagonal with X_{n,n+1} = sqrt(h (n+1) / 2).
    for (double h : {0.3, 1.0}) {
      const int n = 64;
      Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n + 1, n + 1);
      for (int k = 0; k < n; ++k) X(k, k + 1) = X(k + 1, k) = std::sqrt(h * (k + 1) / 2.0);
      const Eigen::MatrixXd ref = (X * X).topLeftCorner(n, n) + 0.5 * h * Eigen::MatrixXd::Identity(n, n);
      const HermiteOperator A = assemble_polynomial(x2, h, n);
      const double d = (A.matrix().real() - ref).cwiseAbs().maxCoeff() + A.matrix().imag().cwiseAbs().maxCoeff();
      if (d > 1e-10 * n) return {false, "h=" + num(h) + " diff " + num(d)};
    }
    return {true, "max diff below 1e-10 N_b"};
  });
  for (double h : {0.01, 1.0})
    c.run("lambda_ess(x^2) = h/4 at h=" + num(h), [&]() -> Outcome {
      const double v = lambda_ess_gap(x2, h, default_shells(h), SearchConfig{}).value;
      return {rel_close(v, h / 4.0, 0.01), num(v / h) + " h"};
    });
  c.run("ess ratio = 2 within 5% and h-independent", [&]() -> Outcome {
    std::vector<double> r;
    for (const auto& row : ctx.default_sweep().rows)
      if (row.symbol_id == "x2") r.push_back(row.ess_ratio);
    if (r.size() != 7) return {false, "ess ratios " + num_list(r)};
    const bool band = std::all_of(r.begin(), r.end(), [](double v) { return rel_close(v, 2.0, 0.05); });
    const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
    return {band && *hi / *lo <= 1.1, "ess ratios " + num_list(r)};
  });
  return std::move(c).finish(5, "essential-spectrum case");
}

// ------------------------------------------------------------ 6

CriterionResult discreteness(Context&) {
  Checks c;
  const SearchConfig cfg;
  const double h = 1.0;
  const std::vector<std::pair<Symbol, Discreteness>> cases = {
      {abs_z2(), Discreteness::discrete},
      {Symbol::radial_power(2.0).with_id("radial_pow_2"), Discreteness::discrete},
      {x_sq(), Discreteness::not_discrete},
      {Symbol::constant(1.0).with_id("one"), Discreteness::not_discrete},
      {Symbol::constant(3.0).with_id("three"), Discreteness::not_discrete},
  };
  for (const auto& [a, want] : cases)
    c.run(a.id() + " is " + to_string(want), [&, &a = a, want = want]() -> Outcome {
      const auto rep = discreteness_indicator(a, h, default_shells(h), cfg);
      return {rep.verdict == want, std::string("verdict ") + to_string(rep.verdict)};
    });
  return std::move(c).finish(6, "discreteness criterion");
}

// ------------------------------------------------------------ 7

CriterionResult semiclassical_band(Context& ctx) {
  Checks c;
  const auto& out = ctx.semiclassical_sweep();
  c.run("semiclassical rows without errors", [&]() -> Outcome {
    return {out.exit_code == 0, "exit code " + std::to_string(out.exit_code)};
  });
  c.run("|z|^2: spec_bottom / lambda_sup = 2 within 5% without slack", [&]() -> Outcome {
    std::vector<double> r;
    bool ok = true;
    for (const auto& row : out.rows)
      if (row.symbol_id == "abs_z2") {
        // The band must hold on the raw ratio; the slack column is not used.
        const double raw = row.spec_bottom / row.lambda_sup;
        r.push_back(raw);
        ok = ok && rel_close(raw, 2.0, 0.05) && row.h > 0.0 && row.h <= 1.0;
      }
    return {ok && r.size() == 7, "ratios " + num_list(r)};
  });
  c.run("slack column is max(h^4, tol)", [&]() -> Outcome {
    bool ok = true;
    for (const auto& row : out.rows) ok = ok && rel_close(row.slack, std::max(std::pow(row.h, 4), 1e-12), 1e-12);
    return {ok, "checked " + std::to_string(out.rows.size()) + " rows"};
  });
  c.run("constant: ratio 1", [&]() -> Outcome {
    bool ok = true;
    for (const auto& row : out.rows)
      if (row.symbol_id == "one") ok = ok && std::abs(row.ratio - 1.0) <= 1e-9;
    return {ok, "all rows"};
  });
  c.run("x^2: analytic ess-bottom over lambda_sup_ess = 0.5 within 5%", [&]() -> Outcome {
    std::vector<double> r;
    bool ok = true;
    for (const auto& row : out.rows)
      if (row.symbol_id == "x2") {
        r.push_back(row.ess_ratio);
        ok = ok && rel_close(row.ess_ratio, 0.5, 0.05);
      }
    return {ok && r.size() == 7, "ratios " + num_list(r)};
  });
  return std::move(c).finish(7, "semiclassical band");
}

// ------------------------------------------------------------ 8

void symbol_invariants(Checks& c) {
  const QuadratureSpec q{16, 32};
  const Symbol z2 = abs_z2(), x2 = x_sq();
  const Symbol s = Symbol::radial_power(0.5);
  const std::vector<BallSpec> balls = {{{0.0, 0.0}, 1.0, q}, {{1.2, -0.7}, 0.5, q}, {{-3.0, 4.0}, 2.0, q}};
  c.run("ball_average monotone (x^2 <= |z|^2)", [&]() -> Outcome {
    for (const auto& b : balls)
      if (ball_average(x2, b, 1.0) > ball_average(z2, b, 1.0) + 1e-12) return {false, "violated"};
    return {true, "3 balls"};
  });
  c.run("ball_average linear", [&]() -> Outcome {
    double err = 0.0;
    const Symbol comb = sum(scaled(z2, 2.5), scaled(s, 0.75));
    for (const auto& b : balls)
      err = std::max(err, std::abs(ball_average(comb, b, 1.0) -
                                   (2.5 * ball_average(z2, b, 1.0) + 0.75 * ball_average(s, b, 1.0))));
    return {err <= 1e-12 * 100.0, "max err " + num(err)};
  });
  c.run("ball_average rotation invariant for radial symbols", [&]() -> Outcome {
    double err = 0.0;
    for (double th : {0.3, 1.1, 2.0}) {
      const double co = std::cos(th), si = std::sin(th);
      const Symbol rot = Symbol::generic([s, co, si](std::span<const double> z, double h) {
        const double p[2] = {co * z[0] - si * z[1], si * z[0] + co * z[1]};
        return s(p, h);
      });
      for (double r : {0.5, 2.0})
        err = std::max(err, std::abs(ball_average(rot, BallSpec{{0.0, 0.0}, r, q}, 1.0) -
                                     ball_average(s, BallSpec{{0.0, 0.0}, r, q}, 1.0)));
    }
    return {err <= 1e-10, "max diff " + num(err)};
  });
  c.run("ainfty_constant of constants is exactly 1", [&]() -> Outcome {
    for (double v : {0.5, 1.0, 7.0}) {
      const auto r = ainfty_constant(Symbol::constant(v), 2.0, {{0.0, 0.0}, {2.0, 1.0}}, {0.5, 3.0}, 1.0);
      if (r.constant_estimate != 1.0) return {false, "got " + num(r.constant_estimate)};
    }
    return {true, "c in {0.5, 1, 7}"};
  });
  c.run("doubling bound is center-independent within 1.5x", [&]() -> Outcome {
    const std::vector<Symbol> syms = {z2, Symbol::radial_power(-0.5),
                                      Symbol::abs_power({{{1}, {0}, 1.0}}, 0.5)};
    // Radii span scales well below and above each center's distance to the
    // singular set, so every center sees both regimes.
    std::vector<double> radii;
    for (int k = -6; k <= 6; ++k) radii.push_back(std::ldexp(1.0, k));
    std::string detail;
    bool ok = true;
    for (const auto& a : syms) {
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for (auto cen : {std::vector<double>{0.13, 0.07}, {1.1, -0.6}, {-2.3, 1.7}, {3.1, 2.9}}) {
        const double b = doubling_bound(a, {cen}, radii, 1.0, QuadratureSpec{32, 64});
        lo = std::min(lo, b);
        hi = std::max(hi, b);
      }
      ok = ok && hi / lo <= 1.5;
      detail += (detail.empty() ? "" : ", ") + num(hi / lo);
    }
    return {ok, "max/min per symbol " + detail};
  });
}

void transform_invariants(Checks& c, Context& ctx) {
  const double h = 0.25;
  const CoherentFrame frame = CoherentFrame::gaussian(h);
  const int modes = 12;
  const StateVector f = StateVector::random_hermite(modes, h, ctx.opt.seed);
  const PhaseGrid pg = PhaseGrid::for_modes(h, modes);
  c.run("|stft| invariant under a unimodular factor", [&]() -> Outcome {
    const auto V1 = stft(frame, f, pg);
    const auto V2 = stft(frame, f.scaled(std::polar(1.0, 0.83)), pg);
    const double d = (V1.cwiseAbs() - V2.cwiseAbs()).cwiseAbs().maxCoeff();
    return {d <= 1e-12, "max diff " + num(d)};
  });
  c.run("coherent-state covariance |V phi_z1(z)| = exp(-|z - z1|^2 / 4h)", [&]() -> Outcome {
    const double x1 = 0.6, w1 = -0.9;
    const SpatialGrid g = SpatialGrid::for_modes(h, modes, std::abs(x1));
    const auto V = stft(frame, coherent_state(frame, x1, w1, g), pg);
    double err = 0.0;
    for (int i = 0; i < pg.x_points; ++i)
      for (int k = 0; k < pg.w_points; ++k) {
        const double dx = pg.x_node(i) - x1, dw = pg.w_node(k) - w1;
        err = std::max(err, std::abs(std::abs(V(i, k)) - std::exp(-(dx * dx + dw * dw) / (4.0 * h))));
      }
    return {err <= 1e-6, "max err " + num(err)};
  });
  c.run("Parseval defect < 1e-6", [&]() -> Outcome {
    const double d = parseval_defect(frame, f, pg);
    return {d < 1e-6, "defect " + num(d)};
  });
  c.run("reproducing defect < 1e-4", [&]() -> Outcome {
    const double d = reproducing_defect(frame, f, pg);
    return {d < 1e-4, "defect " + num(d)};
  });
  c.run("Parseval defect decreases under grid refinement", [&]() -> Outcome {
    // Boxes too small for the state: the defect is dominated by the mass
    // outside, which shrinks as the box and the node count grow together.
    std::vector<double> d;
    const double sh = std::sqrt(h);
    for (int k = 0; k < 3; ++k) {
      const double half = sh * (2.0 + 1.5 * k);
      const int m = 2 * static_cast<int>(std::ceil(half / (sh / 4.0)));
      d.push_back(parseval_defect(frame, f, PhaseGrid::box(0.0, 0.0, half, half, m, m)));
    }
    return {d[1] < d[0] && d[2] < d[1], "defects " + num_list(d)};
  });
  c.run("quadratic form monotone in the symbol", [&]() -> Outcome {
    const double qa = quadratic_form(x_sq(), frame, f, pg);
    const double qb = quadratic_form(abs_z2(), frame, f, pg);
    return {qa <= qb + 1e-10, num(qa) + " <= " + num(qb)};
  });
  c.run("rescaling identity Q(a, h, f) = Q(a(sqrt h .), 1, D_h f)", [&]() -> Outcome {
    double err = 0.0;
    const CoherentFrame one = CoherentFrame::gaussian(1.0);
    const PhaseGrid pg1 = PhaseGrid::for_modes(1.0, modes);
    const StateVector g = dilate(f, h);
    for (const Symbol& a : {abs_z2(), Symbol::radial_power(0.5), Symbol::abs_power({{{1}, {1}, 1.0}}, 0.5)}) {
      const double lhs = quadratic_form(a, frame, f, pg);
      const double rhs = quadratic_form(dilated(a, std::sqrt(h)), one, g, pg1);
      err = std::max(err, std::abs(lhs - rhs));
    }
    return {err <= 1e-6, "max diff " + num(err)};
  });
}

void operator_invariants(Checks& c) {
  const double h = 0.5;
  const int nb = 24;
  const CoherentFrame frame = CoherentFrame::gaussian(h);
  const PhaseGrid pg = quadrature_grid(frame, nb);
  const Symbol z2 = abs_z2(), x2 = x_sq();
  // 2|z|^2 - 2xw, written with a complex coefficient table.
  const Symbol skew = Symbol::polynomial({{{1}, {1}, 2.0}, {{2}, {0}, {0.0, 0.5}}, {{0}, {2}, {0.0, -0.5}}});
  const Symbol quartic = Symbol::radial_power(2.0);
  const Symbol mixed = Symbol::polynomial_xw({{{2}, {0}, 1.0}, {{1}, {1}, 0.5}, {{0}, {2}, 1.0}, {{0}, {0}, 0.2}});
  c.run("route agreement on polynomial symbols", [&]() -> Outcome {
    double worst = 0.0;
    for (const Symbol& a : {z2, x2, skew, mixed, Symbol::polynomial({{{2}, {2}, 1.0}})}) {
      const auto P = assemble_polynomial(a, h, nb);
      const auto Q = assemble_quadrature(a, frame, nb, pg);
      worst = std::max(worst, (P.matrix() - Q.matrix()).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-6, "max diff " + num(worst)};
  });
  c.run("radial route agrees with quadrature on a smooth radial symbol", [&]() -> Outcome {
    const auto R = assemble_radial(quartic, h, nb);
    const auto Q = assemble_quadrature(quartic, frame, nb, pg);
    const double d = (R.matrix() - Q.matrix()).cwiseAbs().maxCoeff();
    return {d <= 1e-6, "max diff " + num(d)};
  });
  c.run("quadrature converges to the radial route at the |z|^(2 beta) rate", [&]() -> Outcome {
    // The midpoint rule loses accuracy at the origin; halving the spacing
    // should shrink the error by about 2^(2 + 2 beta).
    std::string detail;
    bool ok = true;
    for (double beta : {0.5, -0.4}) {
      const Symbol a = Symbol::radial_power(beta);
      const auto R = assemble_radial(a, h, nb);
      std::vector<double> d;
      for (double refine : {1.0, 2.0, 4.0})
        d.push_back((R.matrix() - assemble_quadrature(a, frame, nb, quadrature_grid(frame, nb, refine)).matrix())
                        .cwiseAbs()
                        .maxCoeff());
      const double want = 0.8 * std::pow(2.0, 2.0 + 2.0 * beta);
      ok = ok && d[0] / d[1] >= want && d[1] / d[2] >= want;
      detail += (detail.empty() ? "" : "; ") + std::string("beta ") + num(beta) + " errors " + num_list(d);
    }
    return {ok, detail};
  });
  const Symbol rough = Symbol::abs_power({{{1}, {1}, 1.0}}, 0.5);
  c.run("Hermitian assembly", [&]() -> Outcome {
    double worst = 0.0;
    for (const Symbol& a : {skew, rough})
      worst = std::max(worst, assemble_quadrature(a, frame, nb, pg).hermitian_defect());
    return {worst <= 1e-12, "defect " + num(worst)};
  });
  c.run("linearity of quadrature assembly", [&]() -> Outcome {
    const auto A = assemble_quadrature(x2, frame, nb, pg);
    const auto B = assemble_quadrature(rough, frame, nb, pg);
    const auto S = assemble_quadrature(sum(x2, rough), frame, nb, pg);
    const double d = (S.matrix() - A.matrix() - B.matrix()).cwiseAbs().maxCoeff();
    return {d <= 1e-8, "max diff " + num(d)};
  });
  c.run("positivity for nonnegative symbols", [&]() -> Outcome {
    double lo = std::numeric_limits<double>::infinity();
    for (const Symbol& a : {x2, rough, Symbol::radial_power(-0.4), skew, Symbol::radial([](double r2) { return std::exp(-r2); })})
      lo = std::min(lo, min_eig(assemble(a, frame, nb)));
    return {lo >= -1e-8, "min eigenvalue " + num(lo)};
  });
  c.run("monotonicity of the bottom eigenvalue", [&]() -> Outcome {
    const double a = min_eig(assemble(x2, frame, nb)), b = min_eig(assemble(z2, frame, nb));
    const double c1 = min_eig(assemble_quadrature(rough, frame, nb, pg));
    const double c2 = min_eig(assemble_quadrature(sum(rough, x2), frame, nb, pg));
    return {a <= b + 1e-8 && c1 <= c2 + 1e-8, num(a) + " <= " + num(b) + ", " + num(c1) + " <= " + num(c2)};
  });
  c.run("h-scaling of the bottom eigenvalue", [&]() -> Outcome {
    const CoherentFrame one = CoherentFrame::gaussian(1.0);
    double err = 0.0;
    for (const Symbol& a : {z2, Symbol::radial_power(0.5), rough}) {
      const double lhs = min_eig(assemble(a, frame, nb));
      const double rhs = min_eig(assemble(dilated(a, std::sqrt(h)), one, nb));
      err = std::max(err, std::abs(lhs - rhs));
    }
    return {err <= 1e-6, "max diff " + num(err)};
  });
}

void spectrum_invariants(Checks& c, Context& ctx) {
  const CoherentFrame frame = CoherentFrame::gaussian(0.5);
  c.run("variational monotonicity along nested ladders", [&]() -> Outcome {
    std::string detail;
    bool ok = true;
    for (const Symbol& a : {x_sq(), Symbol::radial_power(-0.4), Symbol::abs_power({{{1}, {1}, 1.0}}, 0.5)}) {
      const auto s = converge_bottom(a, frame, {8, 16, 32, 48});
      for (std::size_t i = 1; i < s.bottoms.size(); ++i) ok = ok && s.bottoms[i] <= s.bottoms[i - 1] + 1e-9;
      ok = ok && s.monotone;
    }
    return {ok, "3 symbols"};
  });
  const HermiteOperator A = assemble(Symbol::radial_power(0.5), frame, 40);
  c.run("shift covariance", [&]() -> Outcome {
    const double b = min_eig(A);
    double err = 0.0;
    for (double s : {-1.0, 0.37, 5.0}) err = std::max(err, std::abs(min_eig(A.shifted(s)) - (b + s)));
    return {err <= 1e-10, "max err " + num(err)};
  });
  c.run("Rayleigh quotients bound the bottom from above", [&]() -> Outcome {
    const double b = min_eig(A);
    std::mt19937_64 rng(ctx.opt.seed);
    std::normal_distribution<double> nd;
    double worst = std::numeric_limits<double>::infinity();
    for (int t = 0; t < 50; ++t) {
      Eigen::VectorXcd f(A.size());
      for (int i = 0; i < A.size(); ++i) f(i) = {nd(rng), nd(rng)};
      f.normalize();
      worst = std::min(worst, rayleigh_quotient(A, f) - b);
    }
    return {worst >= -1e-9, "min margin " + num(worst)};
  });
  c.run("|z|^2 bottom = 2h with Gaussian eigenvector", [&]() -> Outcome {
    double err = 0.0, overlap = 1.0;
    for (double h : {0.01, 0.1, 1.0}) {
      const auto s = spectrum_bottom(assemble(abs_z2(), CoherentFrame::gaussian(h), 64), 1);
      err = std::max(err, std::abs(s.bottom() - 2.0 * h));
      overlap = std::min(overlap, std::abs(s.bottom_vector(0)));
    }
    return {err <= 1e-6 && overlap >= 1.0 - 1e-6, "err " + num(err) + ", overlap " + num(overlap)};
  });
}

void gap_invariants(Checks& c, Context& ctx) {
  const SearchConfig cfg;
  const Symbol z2 = abs_z2(), x2 = x_sq();
  c.run("lambda <= lambda_ess and lambda <= lambda_sup in every sweep row", [&]() -> Outcome {
    for (const auto& r : ctx.default_sweep().rows)
      if (!(r.lambda <= r.lambda_ess + 1e-9 && r.lambda <= r.lambda_sup + 1e-9))
        return {false, r.symbol_id + " h=" + num(r.h)};
    return {true, std::to_string(ctx.default_sweep().rows.size()) + " rows"};
  });
  c.run("scaling law lambda(a(s .), h) = lambda(a, s^2 h)", [&]() -> Outcome {
    double err = 0.0;
    for (double s : {2.0, 4.0})
      for (double h : {0.01, 0.1}) {
        const double lhs = lambda_gap(dilated(z2, s), h, cfg).value;
        const double rhs = lambda_gap(z2, s * s * h, cfg).value;
        err = std::max(err, std::abs(lhs - rhs) / rhs);
      }
    return {err <= 1e-3, "max rel diff " + num(err)};
  });
  c.run("translation invariance", [&]() -> Outcome {
    const double v[2] = {1.5, -2.0};
    double err = 0.0;
    for (double h : {0.1, 1.0})
      err = std::max(err, std::abs(lambda_gap(translated(z2, v), h, cfg).value - lambda_gap(z2, h, cfg).value));
    return {err <= 1e-6, "max diff " + num(err)};
  });
  c.run("estimator monotonicity (x^2 <= |z|^2)", [&]() -> Outcome {
    const double h = 0.1;
    const auto a = gap_values(x2, h, cfg, default_shells(h));
    const auto b = gap_values(z2, h, cfg, default_shells(h));
    const bool ok = a.lambda.value <= b.lambda.value + 1e-9 && a.lambda_sup.value <= b.lambda_sup.value + 1e-9 &&
                    a.lambda_ess.value <= b.lambda_ess.value + 1e-9 &&
                    a.lambda_sup_ess.value <= b.lambda_sup_ess.value + 1e-9;
    return {ok, "four estimators"};
  });
  c.run("refinement stability: doubling the coarse grid changes estimates < 1%", [&]() -> Outcome {
    const double h = 0.1;
    SweepConfig sc = default_sweep_config();
    double worst = 0.0;
    for (const auto& e : sc.symbols) {
      const Symbol a = minus_floor(e.symbol).kind() == SymbolKind::constant ? e.symbol : minus_floor(e.symbol);
      SearchConfig base = row_search(sc, h);
      SearchConfig fine = base;
      fine.coarse_points = 2 * base.coarse_points - 1;
      const auto g1 = gap_values(a, h, base, default_shells(h));
      const auto g2 = gap_values(a, h, fine, default_shells(h));
      for (auto [u, w] : {std::pair{g1.lambda.value, g2.lambda.value}, {g1.lambda_sup.value, g2.lambda_sup.value},
                          {g1.lambda_ess.value, g2.lambda_ess.value},
                          {g1.lambda_sup_ess.value, g2.lambda_sup_ess.value}}) {
        if (std::isinf(u) && std::isinf(w)) continue;
        worst = std::max(worst, std::abs(u - w) / std::max(std::abs(u), 1e-300));
      }
    }
    return {worst < 0.01, "max rel change " + num(worst)};
  });
}

void harness_invariants(Checks& c, Context& ctx) {
  const auto& out = ctx.default_sweep();
  c.run("determinism: rerun produces byte-identical CSV", [&]() -> Outcome {
    SweepConfig cfg = default_sweep_config();
    cfg.workers = std::max(2, ctx.opt.workers);
    const auto again = run_sweep(cfg);
    return {to_csv(again.rows) == to_csv(out.rows), "workers " + std::to_string(cfg.workers)};
  });
  c.run("spec_bottom >= -1e-8 in every row", [&]() -> Outcome {
    for (const auto& r : out.rows)
      if (!(r.spec_bottom >= -1e-8)) return {false, r.symbol_id + " h=" + num(r.h)};
    return {true, "all rows"};
  });
  c.run("shift check for |z|^2 + 5", [&]() -> Outcome {
    std::map<double, const GapReport*> base;
    for (const auto& r : out.rows)
      if (r.symbol_id == "abs_z2") base[r.h] = &r;
    double err = 0.0;
    int n = 0;
    for (const auto& r : out.rows)
      if (r.symbol_id == "abs_z2_plus5") {
        const GapReport* b = base.at(r.h);
        err = std::max({err, std::abs(r.spec_bottom - 5.0 - b->spec_bottom), std::abs(r.lambda - 5.0 - b->lambda)});
        ++n;
      }
    return {n == 7 && err <= 1e-6, "max diff " + num(err)};
  });
}

CriterionResult structural(Context& ctx) {
  Checks c;
  symbol_invariants(c);
  transform_invariants(c, ctx);
  operator_invariants(c);
  spectrum_invariants(c, ctx);
  gap_invariants(c, ctx);
  harness_invariants(c, ctx);
  return std::move(c).finish(8, "structural invariant suite");
}

// ------------------------------------------------------------ 9

CriterionResult ainfty(Context&) {
  Checks c;
  auto centers = [](int half, double step) {
    std::vector<std::vector<double>> out;
    for (int i = -half; i <= half; ++i)
      for (int j = -half; j <= half; ++j) out.push_back({i * step + 0.1, j * step + 0.05});
    return out;
  };
  const auto c1 = centers(2, 1.3), c2 = centers(4, 0.65);
  const std::vector<double> r1 = {0.25, 0.5, 1.0, 2.0, 4.0};
  const std::vector<double> r2 = {0.25, 0.35, 0.5, 0.7, 1.0, 1.4, 2.0, 2.8, 4.0};
  struct Case {
    const char* name;
    Symbol w;
    double centred;  // A_2 product on a disk centred at the singularity
  };
  // avg(r^{-2b}) avg(r^{2b}) on a centred disk = 1 / (1 - b^2).
  const std::vector<Case> cases = {{"|z|^-1", Symbol::radial_power(-0.5), 4.0 / 3.0},
                                   {"(x^2+w^2)^-0.4", Symbol::radial_power(-0.4), 1.0 / (1.0 - 0.16)}};
  for (const auto& cs : cases) {
    c.run(std::string(cs.name) + " centred-disk product matches closed form", [&]() -> Outcome {
      const auto r = ainfty_constant(cs.w, 2.0, {{0.0, 0.0}}, {0.7}, 1.0);
      return {rel_close(r.constant_estimate, cs.centred, 1e-8), num(r.constant_estimate)};
    });
    c.run(std::string(cs.name) + " finite and stable under 2x sampling", [&]() -> Outcome {
      const auto a = ainfty_constant(cs.w, 2.0, c1, r1, 1.0);
      const auto b = ainfty_constant(cs.w, 2.0, c2, r2, 1.0);
      const bool ok = std::isfinite(a.constant_estimate) && std::isfinite(b.constant_estimate) &&
                      rel_close(b.constant_estimate, a.constant_estimate, 0.10);
      return {ok, num(a.constant_estimate) + " vs " + num(b.constant_estimate)};
    });
  }
  c.run("constants give exactly 1", [&]() -> Outcome {
    for (double v : {0.25, 1.0, 9.0})
      for (const auto& [cs, rs] : {std::pair{&c1, &r1}, std::pair{&c2, &r2}})
        if (ainfty_constant(Symbol::constant(v), 2.0, *cs, *rs, 1.0).constant_estimate != 1.0)
          return {false, "c=" + num(v)};
    return {true, "3 constants, 2 samplings"};
  });
  return std::move(c).finish(9, "A-infinity diagnostics");
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  Context ctx{opt, std::nullopt, std::nullopt};
  using Fn = CriterionResult (*)(Context&);
  const Fn all[] = {harmonic_oscillator, heisenberg, h_uniform_band, closed_forms, essential_spectrum,
                    discreteness, semiclassical_band, structural, ainfty};
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 9; ++id) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
    try {
      out.push_back(all[id - 1](ctx));
    } catch (const std::exception& e) {
      CriterionResult r;
      r.id = id;
      r.name = "criterion " + std::to_string(id);
      r.detail = std::string("exception: ") + e.what();
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::string format_criterion(const CriterionResult& r) {
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " + r.detail;
}

}  // namespace antiwick
