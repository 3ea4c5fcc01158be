#include "antiwick/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "antiwick/errors.hpp"

namespace antiwick {

bool better_point(double fa, std::span<const double> a, double fb, std::span<const double> b) {
  // NaN sorts last.
  if (std::isnan(fa) != std::isnan(fb)) return std::isnan(fb);
  if (fa != fb) return fa < fb;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opt,
                             const Projection& project) {
  const std::size_t n = x0.size();
  if (n == 0) throw ValidationError("Nelder-Mead needs at least one coordinate");
  if (opt.max_iterations < 1) throw ValidationError("Nelder-Mead needs at least one iteration");
  NelderMeadResult res;
  auto eval = [&](std::vector<double>& x) {
    if (project) project(x);
    ++res.evaluations;
    return f(x);
  };

  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opt.initial_step;
  for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return better_point(vals[a], pts[a], vals[b], pts[b]); });
    std::vector<std::vector<double>> p2(n + 1);
    std::vector<double> v2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      p2[i] = std::move(pts[order[i]]);
      v2[i] = vals[order[i]];
    }
    pts = std::move(p2);
    vals = std::move(v2);
  };

  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
    sort_simplex();
    double diam = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t c = 0; c < n; ++c) diam = std::max(diam, std::abs(pts[i][c] - pts[0][c]));
    if (diam < opt.x_tolerance || std::abs(vals[n] - vals[0]) < opt.f_tolerance) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < n; ++c) centroid[c] += pts[i][c] / static_cast<double>(n);

    for (std::size_t c = 0; c < n; ++c) xr[c] = centroid[c] + (centroid[c] - pts[n][c]);
    const double fr = eval(xr);
    if (better_point(fr, xr, vals[0], pts[0])) {
      for (std::size_t c = 0; c < n; ++c) xe[c] = centroid[c] + 2.0 * (centroid[c] - pts[n][c]);
      const double fe = eval(xe);
      if (better_point(fe, xe, fr, xr)) {
        pts[n] = xe;
        vals[n] = fe;
      } else {
        pts[n] = xr;
        vals[n] = fr;
      }
      continue;
    }
    if (better_point(fr, xr, vals[n - 1], pts[n - 1])) {
      pts[n] = xr;
      vals[n] = fr;
      continue;
    }
    const bool outside = better_point(fr, xr, vals[n], pts[n]);
    for (std::size_t c = 0; c < n; ++c)
      xc[c] = outside ? centroid[c] + 0.5 * (xr[c] - centroid[c]) : centroid[c] + 0.5 * (pts[n][c] - centroid[c]);
    const double fc = eval(xc);
    if (better_point(fc, xc, outside ? fr : vals[n], outside ? std::span<const double>(xr) : std::span<const double>(pts[n]))) {
      pts[n] = xc;
      vals[n] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t c = 0; c < n; ++c) pts[i][c] = pts[0][c] + 0.5 * (pts[i][c] - pts[0][c]);
      vals[i] = eval(pts[i]);
    }
  }
  sort_simplex();
  res.x = pts[0];
  res.value = vals[0];
  return res;
}

}  // namespace antiwick
