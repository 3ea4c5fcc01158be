#pragma once

// Experiment runner: symbol suites x h sweeps, each row running
// assembly -> eigensolve -> gap estimators.
//
// Config document (JSON, "version": 1):
//   {
//     "version": 1,
//     "symbols": [ <symbol record>, ... ],          // see symbol_io.hpp; default suite if absent
//     "h_values": [1e-3, ...],                      // default 10^{-3 + k/2}, k = 0..6
//     "n_b_ladder": [64, 128, 256],
//     "search": {"box": 10, "box_policy": "basis" | "fixed", "coarse_points": 41,
//                "iterations": 200, "candidates": 3, "shells": [4, 8, 16, 32],
//                "quadrature": {"shells": 16, "angular": 32}, "cap": 1e12},
//     "semiclassical_N": 4,
//     "workers": 1,
//     "seed": 0,
//     "timings": false
//   }
// Symbol records may carry "analytic": {"ess_bottom": {"coef": c, "h_power": p}}
// declaring inf sigma_ess = c h^p.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "antiwick/gap.hpp"
#include "antiwick/symbol.hpp"

namespace antiwick {

struct AnalyticEss {
  double coef = 0.0;
  double h_power = 1.0;
  double at(double h) const;
};

struct SuiteEntry {
  Symbol symbol;
  std::optional<AnalyticEss> ess_bottom;
};

enum class BoxPolicy {
  /// Box half-width sqrt(h (2 N_b + 1)): the phase-space region resolved by the basis.
  basis,
  /// SearchConfig::box (or its default) for every row.
  fixed,
};

struct SweepConfig {
  std::vector<SuiteEntry> symbols;
  std::vector<double> h_values;
  std::vector<int> n_b_ladder{64, 128, 256};
  SearchConfig search;
  BoxPolicy box_policy = BoxPolicy::basis;
  /// Shell radii in units of sqrt(h).
  std::vector<double> shells{4.0, 8.0, 16.0, 32.0};
  int semiclassical_n = 4;
  int workers = 1;
  std::uint64_t seed = 0;
  bool timings = false;
};

/// Standard suite: 1, |z|^2, x^2, (x^2 + w^2)^beta for beta in {-0.4, 0.5, 2}, |z|^2 + 5.
std::vector<SuiteEntry> default_suite();
/// Suite members carrying semiclassical metadata (m = 0, rho = 0, N0 = 3): 1, |z|^2, x^2.
std::vector<SuiteEntry> default_semiclassical_suite();
std::vector<double> default_h_values();
SweepConfig default_sweep_config();

/// Throws ConfigError with a JSON-pointer path for any schema violation.
SweepConfig parse_sweep_config(const nlohmann::json& doc);
SweepConfig load_sweep_config(const std::string& path);

struct GapReport {
  std::string symbol_id;
  double h = 0.0;
  int n_b = 0;
  double spec_bottom = 0.0;
  double lambda = 0.0;
  double lambda_ess = 0.0;
  double lambda_sup = 0.0;
  double lambda_sup_ess = 0.0;
  /// (spec_bottom - floor) / lambda(a - floor); spec_bottom / lambda_sup in semiclassical runs.
  double ratio = 0.0;
  /// Analytic ess-bottom over lambda_ess (or lambda_sup_ess); NaN when unknown.
  double ess_ratio = 0.0;
  bool converged = false;
  std::vector<std::string> caveats;
  double runtime_ms = 0.0;
  /// Non-empty when the row failed.
  std::string error;

  double ess_bottom = 0.0;
  double slack = 0.0;
};

struct SweepOutcome {
  std::vector<GapReport> rows;
  /// 0, or 3 when at least one row failed.
  int exit_code = 0;
};

/// One row per (symbol, h), merged in (symbol_id, h) order.
SweepOutcome run_sweep(const SweepConfig& cfg);
/// Rows compare spec_bottom with lambda_sup. Throws ValidationError if a
/// symbol lacks semiclassical metadata or an h lies outside (0, 1].
SweepOutcome run_semiclassical(const SweepConfig& cfg, int n);

/// The single-row pipeline, exposed for tests.
GapReport run_row(const SuiteEntry& entry, double h, const SweepConfig& cfg, bool semiclassical = false);

/// Search config used for a row (applies the box policy).
SearchConfig row_search(const SweepConfig& cfg, double h);

}  // namespace antiwick
