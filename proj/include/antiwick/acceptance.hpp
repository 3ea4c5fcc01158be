#pragma once

// Acceptance suite: nine criteria, each a group of checks against closed-form
// or independently computed reference values.

#include <string>
#include <vector>

namespace antiwick {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Summary of the failed checks, or of the measured values when all pass.
  std::string detail;
  std::vector<CheckResult> checks;
};

struct AcceptanceOptions {
  int workers = 1;
  /// Base seed of the random trial states.
  unsigned long long seed = 1000;
  /// Criteria to run (1..9); empty runs all.
  std::vector<int> only;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});

/// "PASS [id] name: detail" / "FAIL ...".
std::string format_criterion(const CriterionResult& r);

}  // namespace antiwick
