#pragma once

// Ball-average spectral-gap functionals of a symbol:
//   lambda(a, h)          inf over centers of the average of a on B(c, sqrt h)
//   lambda_ess(a, h)      liminf of the same as |c| -> infinity
//   lambda_sup(a, h)      inf over centers of sup of a on B(c, sqrt h)
//   lambda_sup_ess(a, h)  liminf of the sup version
//   C_r(w)                inf over centers of the average of w on B(c, r)
// Infima are searched on a coarse grid over a box of half-width S, then
// refined by Nelder-Mead; liminfs use minima over dyadic shells of centers.

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "antiwick/ball_quadrature.hpp"
#include "antiwick/symbol.hpp"

namespace antiwick {

struct SearchConfig {
  /// Center search box half-width S; unset means max(10, 10 sqrt h).
  std::optional<double> box;
  /// Coarse grid step; unset means S / ((coarse_points - 1) / 2).
  std::optional<double> step;
  /// Coarse points per axis when step is unset (odd keeps the origin).
  int coarse_points = 41;
  /// Nelder-Mead iteration cap per refined candidate.
  int iterations = 200;
  /// Number of best coarse centers refined.
  int candidates = 3;
  QuadratureSpec quadrature{16, 32};
  /// Shell values at or above this are reported as divergent.
  double cap = 1e12;
  /// Centers per shell: radial x angular (angular a multiple of 4).
  int shell_radial = 9;
  int shell_angular = 64;

  double box_for(double h) const;
  double step_for(double h) const;
  /// Throws ValidationError on S <= 0, step <= 0 or iterations < 1.
  void validate() const;
};

struct GapResult {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> argmin;
  /// True when the argmin sits on the search-box boundary.
  bool on_boundary = false;
};

struct ShellResult {
  /// min over the last two shells; +inf when divergent.
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> argmin;
  /// (R_k, shell minimum) pairs.
  std::vector<std::pair<double, double>> profile;
  /// Strictly increasing profile with last > 10 x first, or a value at the cap.
  bool diverged = false;
};

/// Default shell radii (4, 8, 16, 32) sqrt(h).
std::vector<double> default_shells(double h);

/// extra_seeds are evaluated and compete with the searched centers.
GapResult lambda_gap(const Symbol& a, double h, const SearchConfig& cfg,
                     const std::vector<std::vector<double>>& extra_seeds = {});
ShellResult lambda_ess_gap(const Symbol& a, double h, const std::vector<double>& shells, const SearchConfig& cfg);
GapResult lambda_sup_gap(const Symbol& a, double h, const SearchConfig& cfg,
                         const std::vector<std::vector<double>>& extra_seeds = {});
ShellResult lambda_sup_ess_gap(const Symbol& a, double h, const std::vector<double>& shells, const SearchConfig& cfg);

/// C_r for each radius in (0, 1]; the r = 1 entry is I_UP(w).
std::vector<std::pair<double, double>> c_r_profile(const Symbol& w, const std::vector<double>& radii,
                                                   const SearchConfig& cfg, double h);

enum class Discreteness { discrete, not_discrete, inconclusive };
const char* to_string(Discreteness d) noexcept;

struct DiscretenessReport {
  Discreteness verdict = Discreteness::inconclusive;
  /// (R_k, min over the shell of the integral of a on B(c, sqrt h)).
  std::vector<std::pair<double, double>> profile;
};

/// discrete: profile strictly increasing with last > 10 x first (or at the
/// cap); not-discrete: last two shells within 10%; otherwise inconclusive.
DiscretenessReport discreteness_indicator(const Symbol& a, double h, const std::vector<double>& shells,
                                          const SearchConfig& cfg);

struct GapValues {
  GapResult lambda;
  ShellResult lambda_ess;
  GapResult lambda_sup;
  ShellResult lambda_sup_ess;
  std::vector<std::pair<double, double>> c_r;
  std::vector<std::string> caveats;
};

/// All four functionals with cross-seeding: the argmins of the shell and sup
/// searches are offered to the lambda search, which keeps lambda <= lambda_ess
/// and lambda <= lambda_sup.
GapValues gap_values(const Symbol& a, double h, const SearchConfig& cfg, const std::vector<double>& shells,
                     const std::vector<double>& c_r_radii = {});

}  // namespace antiwick
