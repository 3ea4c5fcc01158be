#include "antiwick/symbol_diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "antiwick/errors.hpp"

namespace antiwick {

AInftyReport ainfty_constant(const Symbol& w, double p, const std::vector<std::vector<double>>& centers,
                             const std::vector<double>& radii, double h, QuadratureSpec q) {
  if (!(p > 1.0)) throw ValidationError("A-infinity exponent p must exceed 1");
  if (centers.empty() || radii.empty()) throw ValidationError("A-infinity sampling needs centers and radii");
  AInftyReport rep;
  rep.p = p;
  rep.radius_min = *std::min_element(radii.begin(), radii.end());
  rep.radius_max = *std::max_element(radii.begin(), radii.end());
  rep.worst_ball = BallSpec{centers.front(), radii.front(), q};

  // Jensen's inequality is an equality for constant weights.
  if (w.kind() == SymbolKind::constant) {
    rep.constant_estimate = 1.0;
    rep.n_balls_sampled = static_cast<int>(centers.size() * radii.size());
    return rep;
  }

  const double dual = -1.0 / (p - 1.0);  // -p'/p
  // Radial weights in R^2 use the exact one-dimensional reduction; the product
  // rule loses accuracy when the singularity sits off-centre in a ball.
  std::optional<Symbol::Profile> profile;
  if (w.phase_dim() == 2 && !w.h_dependent()) profile = w.radial_profile();
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& c : centers)
    for (double r : radii) {
      BallSpec ball{c, r, q};
      ++rep.n_balls_sampled;
      double value;
      try {
        double avg, avg_dual;
        if (profile) {
          const double cn = std::hypot(c[0], c[1]);
          avg = radial_ball_average_pow(*profile, cn, r, 1.0);
          avg_dual = radial_ball_average_pow(*profile, cn, r, dual);
        } else {
          avg = ball_average(w, ball, h);
          avg_dual = ball_average_pow(w, ball, h, dual);
        }
        value = avg * std::pow(avg_dual, p - 1.0);
        if (!std::isfinite(value)) value = std::numeric_limits<double>::infinity();
      } catch (const NumericError&) {
        value = std::numeric_limits<double>::infinity();
      }
      if (value > worst) {
        worst = value;
        rep.worst_ball = ball;
      }
    }
  rep.constant_estimate = worst;
  rep.diverged = std::isinf(worst);
  return rep;
}

AInftySweep ainfty_sweep(const Symbol& w, const std::vector<std::vector<double>>& centers,
                         const std::vector<double>& radii, double h, std::vector<double> ps, QuadratureSpec q) {
  AInftySweep out;
  for (double p : ps) out.per_p.push_back(ainfty_constant(w, p, centers, radii, h, q));
  for (std::size_t i = 1; i < out.per_p.size(); ++i)
    if (out.per_p[i].constant_estimate < out.per_p[out.best].constant_estimate) out.best = i;
  return out;
}

std::vector<double> default_growth_radii() {
  std::vector<double> r;
  for (int k = 0; k <= 8; ++k) r.push_back(std::ldexp(1.0, k));
  return r;
}

GrowthFit growth_check(const Symbol& a, const std::vector<double>& radii, double h, QuadratureSpec q) {
  if (radii.empty()) throw ValidationError("growth_check needs at least one radius");
  GrowthFit fit;
  fit.radii = radii;
  const std::vector<double> origin(a.phase_dim(), 0.0);
  std::vector<double> lx, ly;
  for (double r : radii) {
    double integral;
    try {
      integral = ball_integral(a, BallSpec{origin, r, q}, h);
    } catch (const NumericError&) {
      integral = std::numeric_limits<double>::infinity();
    }
    fit.integrals.push_back(integral);
    if (integral > 0.0 && std::isfinite(integral)) {
      lx.push_back(std::log1p(r));
      ly.push_back(std::log(integral));
    }
  }
  const std::size_t n = lx.size();
  if (n == 0) {
    fit.warning = true;
    return fit;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.N = sxx > 0.0 ? sxy / sxx : 0.0;
  const double intercept = my - fit.N * mx;
  double ss = 0.0, worst_excess = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = ly[i] - (intercept + fit.N * lx[i]);
    ss += res * res;
    fit.max_residual = std::max(fit.max_residual, std::abs(res));
    worst_excess = std::max(worst_excess, res);
  }
  fit.rms_residual = std::sqrt(ss / n);
  // Samples must satisfy I <= C (1+r)^N within 5% log-slack.
  fit.C = std::exp(intercept + std::max(0.0, worst_excess - std::log(1.05)));
  fit.warning = fit.rms_residual > 0.25 || fit.N > 20.0 || n < radii.size();
  return fit;
}

double doubling_bound(const Symbol& a, const std::vector<std::vector<double>>& centers,
                      const std::vector<double>& radii, double h, QuadratureSpec q) {
  std::optional<Symbol::Profile> profile;
  if (a.phase_dim() == 2 && !a.h_dependent()) profile = a.radial_profile();
  auto integral = [&](const std::vector<double>& c, double r) {
    if (profile) return radial_ball_average_pow(*profile, std::hypot(c[0], c[1]), r) * ball_volume(2, r);
    return ball_integral(a, BallSpec{c, r, q}, h);
  };
  double worst = 0.0;
  for (const auto& c : centers)
    for (double r : radii) {
      const double inner = integral(c, r);
      const double outer = integral(c, 2.0 * r);
      if (inner <= 0.0) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, outer / inner);
    }
  return worst;
}

}  // namespace antiwick
