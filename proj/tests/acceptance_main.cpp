// Acceptance suite runner: one PASS/FAIL line per criterion.

#include <cstdio>

#include "antiwick/acceptance.hpp"

int main() {
  bool ok = true;
  for (const auto& r : antiwick::run_acceptance()) {
    std::printf("%s\n", antiwick::format_criterion(r).c_str());
    for (const auto& c : r.checks)
      if (!c.passed) std::printf("    FAIL %s: %s\n", c.name.c_str(), c.detail.c_str());
    std::fflush(stdout);
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}
