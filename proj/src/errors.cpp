#include "antiwick/errors.hpp"

#include <cstdio>

namespace antiwick {

std::string format_point(const double* z, std::size_t n) {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", z[i]);
    if (i) out += ", ";
    out += buf;
  }
  out += ")";
  return out;
}

}  // namespace antiwick
