#pragma once

// Dense operator export. First line is a JSON header
//   {"symbol_id", "h", "N_b", "route", "complex", "exact_block", "grid"}
// followed by N_b rows of the real part, row-major, 17 significant digits.
// Complex operators append a line "imag" and N_b rows of the imaginary part.

#include <string>

#include "antiwick/antiwick.hpp"

namespace antiwick {

void write_operator(const HermiteOperator& op, const std::string& path);
HermiteOperator read_operator(const std::string& path);

}  // namespace antiwick
