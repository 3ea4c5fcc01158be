#include "antiwick/gap.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "antiwick/errors.hpp"
#include "antiwick/nelder_mead.hpp"

namespace antiwick {

double SearchConfig::box_for(double h) const {
  if (box) return *box;
  return std::max(10.0, 10.0 * std::sqrt(h));
}

double SearchConfig::step_for(double h) const {
  if (step) return *step;
  const int half = std::max(1, (coarse_points - 1) / 2);
  return box_for(h) / half;
}

void SearchConfig::validate() const {
  if (box && !(*box > 0.0)) throw ValidationError("search box half-width must be positive");
  if (step && !(*step > 0.0)) throw ValidationError("coarse grid step must be positive");
  if (coarse_points < 1) throw ValidationError("coarse grid needs at least one point per axis");
  if (iterations < 1) throw ValidationError("refinement needs at least one iteration");
  if (candidates < 1) throw ValidationError("at least one candidate must be refined");
  if (quadrature.shells < 1 || quadrature.angular < 1) throw ValidationError("ball quadrature must be positive");
  if (shell_radial < 1 || shell_angular < 4 || shell_angular % 4 != 0)
    throw ValidationError("shell grid needs radial >= 1 and angular a positive multiple of 4");
  if (!(cap > 0.0)) throw ValidationError("divergence cap must be positive");
}

std::vector<double> default_shells(double h) {
  const double s = std::sqrt(h);
  return {4.0 * s, 8.0 * s, 16.0 * s, 32.0 * s};
}

const char* to_string(Discreteness d) noexcept {
  switch (d) {
    case Discreteness::discrete:
      return "discrete";
    case Discreteness::not_discrete:
      return "not-discrete";
    case Discreteness::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

namespace {

using Center = std::vector<double>;
using BallFunctional = std::function<double(const Center&)>;

struct Scored {
  double value;
  Center c;
};

bool scored_less(const Scored& a, const Scored& b) { return better_point(a.value, a.c, b.value, b.c); }

/// Coarse grid plus Nelder-Mead refinement of the best few nodes, with
/// candidates projected by `project`.
Scored refine_best(std::vector<Scored> pool, const BallFunctional& F, const SearchConfig& cfg, double step,
                   const Projection& project) {
  std::sort(pool.begin(), pool.end(), scored_less);
  Scored best = pool.front();
  const int n_ref = std::min<int>(cfg.candidates, static_cast<int>(pool.size()));
  NelderMeadOptions opt;
  opt.max_iterations = cfg.iterations;
  opt.initial_step = step;
  opt.x_tolerance = 1e-10 * std::max(1.0, step);
  for (int i = 0; i < n_ref; ++i) {
    const auto r = nelder_mead([&](std::span<const double> x) { return F(Center(x.begin(), x.end())); }, pool[i].c,
                               opt, project);
    Scored s{r.value, r.x};
    if (scored_less(s, best)) best = s;
  }
  return best;
}

std::vector<Center> box_grid(int pdim, double S, double step) {
  int half = static_cast<int>(std::floor(S / step + 1e-9));
  if (pdim > 2) half = std::min(half, 5);
  const double st = half > 0 ? S / half : 0.0;
  const int n = 2 * half + 1;
  std::vector<Center> out;
  std::vector<int> idx(pdim, 0);
  while (true) {
    Center c(pdim);
    for (int d = 0; d < pdim; ++d) c[d] = (idx[d] - half) * st;
    out.push_back(std::move(c));
    int d = pdim - 1;
    while (d >= 0 && ++idx[d] == n) idx[d--] = 0;
    if (d < 0) break;
  }
  return out;
}

GapResult box_search(int pdim, const BallFunctional& F, const SearchConfig& cfg, double h,
                     const std::vector<Center>& extra_seeds) {
  const double S = cfg.box_for(h);
  const double step = cfg.step_for(h);
  std::vector<Scored> pool;
  for (auto& c : box_grid(pdim, S, step)) pool.push_back({F(c), std::move(c)});
  auto clamp_box = [S](std::span<double> x) {
    for (double& v : x) v = std::clamp(v, -S, S);
  };
  Scored best = refine_best(std::move(pool), F, cfg, step, clamp_box);
  GapResult r;
  r.value = best.value;
  r.argmin = best.c;
  for (double v : best.c)
    if (std::abs(v) >= S * (1.0 - 1e-9)) r.on_boundary = true;
  for (const auto& c : extra_seeds) {
    if (static_cast<int>(c.size()) != pdim) continue;
    const double v = F(c);
    if (better_point(v, c, r.value, r.argmin)) {
      r.value = v;
      r.argmin = c;
      r.on_boundary = false;
    }
  }
  return r;
}

std::vector<Center> shell_directions(int pdim, int angular) {
  std::vector<Center> dirs;
  if (pdim == 2) {
    // Angles start at 0, so the coordinate axes are sampled.
    for (int j = 0; j < angular; ++j) {
      const double th = 2.0 * std::numbers::pi * j / angular;
      dirs.push_back({std::cos(th), std::sin(th)});
    }
    return dirs;
  }
  for (int d = 0; d < pdim; ++d)
    for (double s : {1.0, -1.0}) {
      Center e(pdim, 0.0);
      e[d] = s;
      dirs.push_back(e);
    }
  const BallRule& rule = BallRule::get(pdim, QuadratureSpec{1, angular});
  const auto ring = rule.ring();
  for (std::size_t i = 0; i < rule.ring_size(); ++i) dirs.emplace_back(ring.begin() + i * pdim, ring.begin() + (i + 1) * pdim);
  return dirs;
}

ShellResult shell_search(int pdim, const BallFunctional& F, const std::vector<double>& shells,
                         const SearchConfig& cfg, std::size_t min_shells) {
  if (shells.size() < min_shells)
    throw ValidationError("shell estimator needs at least " + std::to_string(min_shells) + " shells");
  for (std::size_t i = 0; i < shells.size(); ++i) {
    if (!(shells[i] > 0.0)) throw ValidationError("shell radii must be positive");
    if (i > 0 && shells[i] <= shells[i - 1]) throw ValidationError("shell radii must be strictly increasing");
  }
  const auto dirs = shell_directions(pdim, cfg.shell_angular);
  ShellResult out;
  std::vector<Scored> mins;
  for (double R : shells) {
    std::vector<Scored> pool;
    for (int i = 0; i < cfg.shell_radial; ++i) {
      const double r = cfg.shell_radial == 1 ? 1.5 * R : R + R * i / (cfg.shell_radial - 1);
      for (const auto& u : dirs) {
        Center c(pdim);
        for (int d = 0; d < pdim; ++d) c[d] = r * u[d];
        pool.push_back({F(c), std::move(c)});
      }
    }
    auto into_annulus = [R](std::span<double> x) {
      double n2 = 0.0;
      for (double v : x) n2 += v * v;
      const double n = std::sqrt(n2);
      if (n == 0.0) {
        x[0] = R;
        return;
      }
      const double target = std::clamp(n, R, 2.0 * R);
      for (double& v : x) v *= target / n;
    };
    const double step = R * 2.0 * std::numbers::pi / cfg.shell_angular;
    Scored best = refine_best(std::move(pool), F, cfg, step, into_annulus);
    out.profile.emplace_back(R, best.value);
    mins.push_back(std::move(best));
  }
  const std::size_t k = mins.size();
  bool increasing = true;
  bool capped = false;
  for (std::size_t i = 0; i < k; ++i) {
    if (i > 0 && !(mins[i].value > mins[i - 1].value)) increasing = false;
    if (!(mins[i].value < cfg.cap)) capped = true;
  }
  out.diverged = capped || (k >= 2 && increasing && mins.back().value > 10.0 * mins.front().value);
  const Scored& pick = k >= 2 && scored_less(mins[k - 2], mins[k - 1]) ? mins[k - 2] : mins[k - 1];
  out.argmin = pick.c;
  out.value = out.diverged ? std::numeric_limits<double>::infinity() : pick.value;
  return out;
}

BallFunctional average_on(const Symbol& a, double h, double radius, const SearchConfig& cfg) {
  return [&a, h, radius, q = cfg.quadrature](const Center& c) { return ball_average(a, BallSpec{c, radius, q}, h); };
}

BallFunctional sup_on(const Symbol& a, double h, double radius, const SearchConfig& cfg) {
  return [&a, h, radius, q = cfg.quadrature](const Center& c) { return ball_sup(a, BallSpec{c, radius, q}, h); };
}

void require_h(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("h must be positive and finite");
}

GapResult constant_gap(const Symbol& a) {
  GapResult r;
  r.value = a.constant_value();
  r.argmin.assign(a.phase_dim(), 0.0);
  return r;
}

ShellResult constant_shells(const Symbol& a, const std::vector<double>& shells, std::size_t min_shells) {
  if (shells.size() < min_shells)
    throw ValidationError("shell estimator needs at least " + std::to_string(min_shells) + " shells");
  ShellResult r;
  r.value = a.constant_value();
  r.argmin.assign(a.phase_dim(), 0.0);
  r.argmin[0] = shells.back();
  for (double R : shells) r.profile.emplace_back(R, a.constant_value());
  return r;
}

}  // namespace

GapResult lambda_gap(const Symbol& a, double h, const SearchConfig& cfg, const std::vector<std::vector<double>>& seeds) {
  require_h(h);
  cfg.validate();
  if (a.kind() == SymbolKind::constant) return constant_gap(a);
  return box_search(a.phase_dim(), average_on(a, h, std::sqrt(h), cfg), cfg, h, seeds);
}

GapResult lambda_sup_gap(const Symbol& a, double h, const SearchConfig& cfg,
                         const std::vector<std::vector<double>>& seeds) {
  require_h(h);
  cfg.validate();
  if (a.kind() == SymbolKind::constant) return constant_gap(a);
  return box_search(a.phase_dim(), sup_on(a, h, std::sqrt(h), cfg), cfg, h, seeds);
}

ShellResult lambda_ess_gap(const Symbol& a, double h, const std::vector<double>& shells, const SearchConfig& cfg) {
  require_h(h);
  cfg.validate();
  if (a.kind() == SymbolKind::constant) return constant_shells(a, shells, 3);
  return shell_search(a.phase_dim(), average_on(a, h, std::sqrt(h), cfg), shells, cfg, 3);
}

ShellResult lambda_sup_ess_gap(const Symbol& a, double h, const std::vector<double>& shells,
                               const SearchConfig& cfg) {
  require_h(h);
  cfg.validate();
  if (a.kind() == SymbolKind::constant) return constant_shells(a, shells, 3);
  return shell_search(a.phase_dim(), sup_on(a, h, std::sqrt(h), cfg), shells, cfg, 3);
}

std::vector<std::pair<double, double>> c_r_profile(const Symbol& w, const std::vector<double>& radii,
                                                   const SearchConfig& cfg, double h) {
  require_h(h);
  cfg.validate();
  std::vector<std::pair<double, double>> out;
  for (double r : radii) {
    if (!(r > 0.0) || r > 1.0) throw ValidationError("C_r radii must lie in (0, 1]");
    if (w.kind() == SymbolKind::constant) {
      out.emplace_back(r, w.constant_value());
      continue;
    }
    out.emplace_back(r, box_search(w.phase_dim(), average_on(w, h, r, cfg), cfg, h, {}).value);
  }
  return out;
}

DiscretenessReport discreteness_indicator(const Symbol& a, double h, const std::vector<double>& shells,
                                          const SearchConfig& cfg) {
  require_h(h);
  cfg.validate();
  const double vol = ball_volume(a.phase_dim(), std::sqrt(h));
  ShellResult s = a.kind() == SymbolKind::constant ? constant_shells(a, shells, 4)
                                                   : shell_search(a.phase_dim(), average_on(a, h, std::sqrt(h), cfg),
                                                                  shells, cfg, 4);
  DiscretenessReport rep;
  for (auto [R, v] : s.profile) rep.profile.emplace_back(R, v * vol);
  const auto& p = rep.profile;
  bool increasing = true, capped = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0 && !(p[i].second > p[i - 1].second)) increasing = false;
    if (!(p[i].second < cfg.cap)) capped = true;
  }
  const double last = p.back().second, prev = p[p.size() - 2].second;
  if (capped || (increasing && last > 10.0 * p.front().second)) {
    rep.verdict = Discreteness::discrete;
  } else if (std::abs(last - prev) <= 0.1 * std::max(std::abs(last), std::abs(prev))) {
    rep.verdict = Discreteness::not_discrete;
  } else {
    rep.verdict = Discreteness::inconclusive;
  }
  return rep;
}

GapValues gap_values(const Symbol& a, double h, const SearchConfig& cfg, const std::vector<double>& shells,
                     const std::vector<double>& c_r_radii) {
  GapValues g;
  g.lambda_ess = lambda_ess_gap(a, h, shells, cfg);
  g.lambda_sup_ess = lambda_sup_ess_gap(a, h, shells, cfg);
  g.lambda_sup = lambda_sup_gap(a, h, cfg);
  std::vector<std::vector<double>> seeds{g.lambda_ess.argmin, g.lambda_sup.argmin, g.lambda_sup_ess.argmin};
  g.lambda = lambda_gap(a, h, cfg, seeds);
  if (!c_r_radii.empty()) g.c_r = c_r_profile(a, c_r_radii, cfg, h);
  if (g.lambda.on_boundary) g.caveats.push_back("argmin_on_search_boundary");
  if (g.lambda_ess.diverged) g.caveats.push_back("lambda_ess_divergent");
  if (g.lambda_sup_ess.diverged) g.caveats.push_back("lambda_sup_ess_divergent");
  return g;
}

}  // namespace antiwick
