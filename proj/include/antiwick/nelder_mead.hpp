#pragma once

// Deterministic Nelder-Mead with projection onto a feasible set. The seed
// simplex is x0 + step * e_i; vertex ties are broken by lexicographic order
// of the coordinates, so the result depends only on the inputs.

#include <functional>
#include <span>
#include <vector>

namespace antiwick {

struct NelderMeadOptions {
  int max_iterations = 200;
  double initial_step = 1.0;
  /// Stop when the simplex diameter falls below this.
  double x_tolerance = 1e-9;
  /// Stop when the value spread falls below this.
  double f_tolerance = 1e-14;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;
/// Maps a trial point into the feasible set in place.
using Projection = std::function<void(std::span<double>)>;

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opt,
                             const Projection& project = {});

/// Lexicographic (value, coordinates) order used for all tie-breaks.
bool better_point(double fa, std::span<const double> a, double fb, std::span<const double> b);

}  // namespace antiwick
