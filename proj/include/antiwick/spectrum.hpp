#pragma once

// Bottom of the spectrum of assembled operators by dense symmetric
// eigensolves, plus truncation ladders.

#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "antiwick/antiwick.hpp"

namespace antiwick {

struct SpectrumResult {
  /// k smallest eigenvalues, ascending.
  std::vector<double> eigenvalues;
  int n_b = 0;
  /// Change of the bottom eigenvalue from the previous rung (NaN for a single solve).
  double delta = std::numeric_limits<double>::quiet_NaN();
  /// Bottom non-increasing along the ladder within 1e-9.
  bool monotone = true;
  /// |delta| < max(1e-8, 1e-4 |bottom|) on the last rung.
  bool converged = false;
  /// Largest ||A v - lambda v|| / ||A|| over the returned pairs.
  double residual = 0.0;
  /// Eigenvector of the bottom eigenvalue.
  Eigen::VectorXcd bottom_vector;
  /// Per-rung bottoms for ladder runs.
  std::vector<int> ladder;
  std::vector<double> bottoms;

  double bottom() const { return eigenvalues.front(); }
};

/// Throws ValidationError unless 1 <= k <= N_b, NumericError if the solver
/// fails or a residual exceeds 1e-8 ||A||.
SpectrumResult spectrum_bottom(const HermiteOperator& op, int k);

/// Assembles at the largest rung and solves every leading block, so the
/// trial subspaces are nested. ladder must be strictly increasing.
SpectrumResult converge_bottom(const Symbol& a, const CoherentFrame& frame, const std::vector<int>& ladder,
                               int workers = 1);
/// Same ladder study on an already assembled operator.
SpectrumResult converge_bottom(const HermiteOperator& op, const std::vector<int>& ladder);

/// Consecutive gaps lambda_{j+1} - lambda_j of the k lowest eigenvalues (k >= 2).
std::vector<double> eigen_accumulation(const HermiteOperator& op, int k);

/// <A f, f> / <f, f> for a coefficient vector of length N_b.
double rayleigh_quotient(const HermiteOperator& op, const Eigen::VectorXcd& f);

}  // namespace antiwick
