#pragma once

// Quadrature over Euclidean balls in phase space R^{2d}.
//
// Product rule: Gauss-Legendre shells in the radius (with the r^{2d-1}
// Jacobian folded into the weights) times a midpoint rule in the angles.
// All nodes are strictly inside the open ball and none sits at its center.
// Supported phase dimensions: 2 (polar) and 4 (Hopf coordinates).

#include <span>
#include <vector>

#include "antiwick/symbol.hpp"

namespace antiwick {

struct QuadratureSpec {
  int shells = 16;
  /// Points per full angle. Multiples of 4 keep nodes off the coordinate axes
  /// through the center.
  int angular = 32;
};

struct BallSpec {
  std::vector<double> center;
  double radius = 1.0;
  QuadratureSpec quadrature;
};

/// Unit-ball nodes and normalized weights (they sum to 1).
class BallRule {
 public:
  static const BallRule& get(int phase_dim, QuadratureSpec q);

  int phase_dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return weights_.size(); }
  /// Node i occupies nodes()[i*phase_dim .. (i+1)*phase_dim).
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  /// Unit directions used for the boundary ring in sup estimates.
  std::span<const double> ring() const noexcept { return ring_; }
  std::size_t ring_size() const noexcept { return ring_.size() / dim_; }

  BallRule(int phase_dim, QuadratureSpec q);

 private:
  int dim_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> ring_;
};

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Volume of the Euclidean ball of radius r in R^n.
double ball_volume(int n, double r);

/// Sum of values in a fixed pairwise order.
double pairwise_sum(std::span<const double> v);

/// Quadrature approximation of the average of a over the ball. Throws
/// NumericError on non-finite accumulation, DomainError if a node hits a
/// singular point.
double ball_average(const Symbol& a, const BallSpec& ball, double h);
/// Average of a^power (used by the A-infinity diagnostic).
double ball_average_pow(const Symbol& a, const BallSpec& ball, double h, double power);
double ball_integral(const Symbol& a, const BallSpec& ball, double h);
/// Largest value over the quadrature nodes plus a ring at 0.999 * radius.
double ball_sup(const Symbol& a, const BallSpec& ball, double h);

/// Average of g(|z|^2)^power over the disk B(c, r) in R^2, reduced to a
/// one-dimensional integral in |z| weighted by the arc length inside the disk.
/// Accurate when g is singular at the origin. Throws NumericError if the
/// integral does not converge.
double radial_ball_average_pow(const Symbol::Profile& g, double center_norm, double radius, double power = 1.0);

void check_ball(const BallSpec& ball, int phase_dim);

}  // namespace antiwick
