#include "antiwick/ball_quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

#include "antiwick/errors.hpp"

namespace antiwick {

void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw ValidationError("Gauss-Legendre order must be positive");
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
  std::vector<double> x, w;
  for (double z : zeros) {
    const double dp = boost::math::legendre_p_prime(n, z);
    const double wt = 2.0 / ((1.0 - z * z) * dp * dp);
    if (z == 0.0) {
      x.push_back(0.0);
      w.push_back(wt);
    } else {
      x.push_back(z);
      w.push_back(wt);
      x.push_back(-z);
      w.push_back(wt);
    }
  }
  std::vector<std::size_t> order(x.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  nodes.clear();
  weights.clear();
  for (auto i : order) {
    nodes.push_back(0.5 * (x[i] + 1.0));
    weights.push_back(0.5 * w[i]);
  }
}

double ball_volume(int n, double r) {
  return std::pow(std::numbers::pi, 0.5 * n) * std::pow(r, n) / std::tgamma(0.5 * n + 1.0);
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

BallRule::BallRule(int phase_dim, QuadratureSpec q) : dim_(phase_dim) {
  if (q.shells < 1 || q.angular < 1) throw ValidationError("ball quadrature resolution must be positive");
  std::vector<double> r, wr;
  gauss_legendre_unit(q.shells, r, wr);
  const double two_pi = 2.0 * std::numbers::pi;
  if (phase_dim == 2) {
    for (int k = 0; k < q.shells; ++k)
      for (int j = 0; j < q.angular; ++j) {
        const double th = two_pi * (j + 0.5) / q.angular;
        nodes_.push_back(r[k] * std::cos(th));
        nodes_.push_back(r[k] * std::sin(th));
        weights_.push_back(wr[k] * r[k]);
      }
    for (int j = 0; j < 2 * q.angular; ++j) {
      const double th = two_pi * (j + 0.25) / (2 * q.angular);
      ring_.push_back(std::cos(th));
      ring_.push_back(std::sin(th));
    }
  } else if (phase_dim == 4) {
    // Hopf coordinates: (cos e cos a, sin e cos b, cos e sin a, sin e sin b)
    // with u = sin^2 e uniform, so the angular measure is du da db.
    const int m = std::max(4, q.angular / 2);
    const int mu = std::max(2, q.angular / 4);
    for (int k = 0; k < q.shells; ++k)
      for (int iu = 0; iu < mu; ++iu) {
        const double u = (iu + 0.5) / mu;
        const double ce = std::sqrt(1.0 - u), se = std::sqrt(u);
        for (int ia = 0; ia < m; ++ia)
          for (int ib = 0; ib < m; ++ib) {
            const double a = two_pi * (ia + 0.5) / m, b = two_pi * (ib + 0.5) / m;
            nodes_.push_back(r[k] * ce * std::cos(a));
            nodes_.push_back(r[k] * se * std::cos(b));
            nodes_.push_back(r[k] * ce * std::sin(a));
            nodes_.push_back(r[k] * se * std::sin(b));
            weights_.push_back(wr[k] * r[k] * r[k] * r[k]);
          }
      }
    for (int iu = 0; iu < mu; ++iu) {
      const double u = (iu + 0.5) / mu;
      const double ce = std::sqrt(1.0 - u), se = std::sqrt(u);
      for (int ia = 0; ia < m; ++ia)
        for (int ib = 0; ib < m; ++ib) {
          const double a = two_pi * (ia + 0.25) / m, b = two_pi * (ib + 0.25) / m;
          ring_.insert(ring_.end(), {ce * std::cos(a), se * std::cos(b), ce * std::sin(a), se * std::sin(b)});
        }
    }
  } else {
    throw UnsupportedDimension("ball quadrature supports phase dimension 2 or 4 only");
  }
  const double total = pairwise_sum(weights_);
  for (double& w : weights_) w /= total;
}

const BallRule& BallRule::get(int phase_dim, QuadratureSpec q) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<BallRule>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{phase_dim, q.shells, q.angular}];
  if (!slot) slot = std::make_unique<BallRule>(phase_dim, q);
  return *slot;
}

void check_ball(const BallSpec& ball, int phase_dim) {
  if (static_cast<int>(ball.center.size()) != phase_dim)
    throw ShapeError("ball center has the wrong dimension");
  if (!(ball.radius > 0.0) || !std::isfinite(ball.radius)) throw ValidationError("ball radius must be positive");
  if (ball.quadrature.shells < 1 || ball.quadrature.angular < 1)
    throw ValidationError("ball quadrature resolution must be positive");
}

namespace {

template <class F>
double accumulate_ball(const Symbol& a, const BallSpec& ball, F&& transform) {
  const int n = a.phase_dim();
  check_ball(ball, n);
  const BallRule& rule = BallRule::get(n, ball.quadrature);
  const auto nodes = rule.nodes();
  const auto w = rule.weights();
  std::vector<double> terms(rule.size());
  std::vector<double> z(n);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    for (int c = 0; c < n; ++c) z[c] = ball.center[c] + ball.radius * nodes[i * n + c];
    terms[i] = w[i] * transform(z);
  }
  const double s = pairwise_sum(terms);
  if (!std::isfinite(s)) throw NumericError("non-finite ball quadrature accumulation");
  return s;
}

}  // namespace

double ball_average(const Symbol& a, const BallSpec& ball, double h) {
  return accumulate_ball(a, ball, [&](std::span<const double> z) { return a(z, h); });
}

double ball_average_pow(const Symbol& a, const BallSpec& ball, double h, double power) {
  return accumulate_ball(a, ball, [&](std::span<const double> z) { return std::pow(a(z, h), power); });
}

double ball_integral(const Symbol& a, const BallSpec& ball, double h) {
  return ball_average(a, ball, h) * ball_volume(a.phase_dim(), ball.radius);
}

double ball_sup(const Symbol& a, const BallSpec& ball, double h) {
  const int n = a.phase_dim();
  check_ball(ball, n);
  const BallRule& rule = BallRule::get(n, ball.quadrature);
  std::vector<double> z(n);
  double best = 0.0;
  const auto nodes = rule.nodes();
  for (std::size_t i = 0; i < rule.size(); ++i) {
    for (int c = 0; c < n; ++c) z[c] = ball.center[c] + ball.radius * nodes[i * n + c];
    best = std::max(best, a(z, h));
  }
  const auto ring = rule.ring();
  const double rr = 0.999 * ball.radius;
  for (std::size_t i = 0; i < rule.ring_size(); ++i) {
    for (int c = 0; c < n; ++c) z[c] = ball.center[c] + rr * ring[i * n + c];
    best = std::max(best, a(z, h));
  }
  if (!std::isfinite(best)) throw NumericError("non-finite ball sup");
  return best;
}

double radial_ball_average_pow(const Symbol::Profile& g, double center_norm, double radius, double power) {
  if (!(radius > 0.0) || !(center_norm >= 0.0)) throw ValidationError("radial ball needs r > 0 and |c| >= 0");
  const double c = center_norm, r = radius;
  const double pi = std::numbers::pi;
  boost::math::quadrature::tanh_sinh<double> ts;
  auto integrate = [&](double lo, double hi, auto&& weight) {
    // Two-argument form: the exact distance to the nearest endpoint keeps
    // a singular profile from being evaluated at rho = 0.
    auto f = [&](double, double rc) {
      const double x = rc < 0.0 ? lo - rc : hi - rc;
      // x * x underflows long before an integrable singularity matters.
      if (!(x * x > 0.0)) return 0.0;
      return std::pow(g(x * x), power) * x * weight(x);
    };
    double err = 0.0, l1 = 0.0;
    const double v = ts.integrate(f, lo, hi, 1e-12, &err, &l1);
    if (!std::isfinite(v) || err > 1e-7 * std::max(l1, 1e-300))
      throw NumericError("radial ball integral did not converge");
    return v;
  };
  double total = 0.0;
  // Circles |z| = rho lying entirely inside the ball.
  const double inner = std::max(0.0, r - c);
  if (inner > 0.0) total += 2.0 * pi * integrate(0.0, inner, [](double) { return 1.0; });
  // Circles cut by the boundary contribute the length of the inside arc.
  if (c > 0.0) {
    const double lo = std::abs(r - c), hi = r + c;
    total += integrate(lo, hi, [&](double rho) {
      const double t = std::clamp((rho * rho + c * c - r * r) / (2.0 * rho * c), -1.0, 1.0);
      return 2.0 * std::acos(t);
    });
  }
  return total / (pi * r * r);
}

}  // namespace antiwick
