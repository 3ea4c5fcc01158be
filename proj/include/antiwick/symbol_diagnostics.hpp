#pragma once

// Sampled weight diagnostics: Muckenhoupt-type ball constants, polynomial
// growth fits and doubling ratios. These are lower estimates over the sampled
// balls, never certificates.

#include <vector>

#include "antiwick/ball_quadrature.hpp"
#include "antiwick/symbol.hpp"

namespace antiwick {

struct AInftyReport {
  double p = 2.0;
  /// max over sampled balls of avg(w) * avg(w^{-1/(p-1)})^{p-1}; +inf on divergence.
  double constant_estimate = 1.0;
  int n_balls_sampled = 0;
  BallSpec worst_ball;
  double radius_min = 0.0;
  double radius_max = 0.0;
  bool diverged = false;
};

AInftyReport ainfty_constant(const Symbol& w, double p, const std::vector<std::vector<double>>& centers,
                             const std::vector<double>& radii, double h, QuadratureSpec q = {});

struct AInftySweep {
  std::vector<AInftyReport> per_p;
  /// Index into per_p of the smallest constant.
  std::size_t best = 0;
};

/// Runs ainfty_constant for each exponent (default {2, 4, 8}).
AInftySweep ainfty_sweep(const Symbol& w, const std::vector<std::vector<double>>& centers,
                         const std::vector<double>& radii, double h, std::vector<double> ps = {2.0, 4.0, 8.0},
                         QuadratureSpec q = {});

struct GrowthFit {
  double C = 0.0;
  double N = 0.0;
  double rms_residual = 0.0;
  double max_residual = 0.0;
  bool warning = false;
  std::vector<double> radii;
  std::vector<double> integrals;
};

/// Least-squares fit of log int_{B(0,r)} a against log(1 + r). C is raised so
/// that every sample satisfies the bound within 5% log-slack.
GrowthFit growth_check(const Symbol& a, const std::vector<double>& radii, double h, QuadratureSpec q = {});
std::vector<double> default_growth_radii();

/// max over sampled (center, radius) of int_{2B} a / int_B a.
double doubling_bound(const Symbol& a, const std::vector<std::vector<double>>& centers,
                      const std::vector<double>& radii, double h, QuadratureSpec q = {});

}  // namespace antiwick
