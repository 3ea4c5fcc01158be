#pragma once

// Declarative symbol records.
//
//   {"kind": "constant", "value": 1}
//   {"kind": "polynomial", "terms": [[alpha, beta, re], [alpha, beta, re, im], ...]}
//   {"kind": "polynomial_xw", "terms": [[p, q, coeff], ...]}        // c x^p w^q
//   {"kind": "abs_power", "P": [[p, q, coeff], ...], "beta": b}
//   {"kind": "radial_power", "beta": b}                              // (x^2+w^2)^b
//   {"kind": "builtin", "name": "exp_norm" | "exp_x" | "gaussian"}
//
// Common optional fields: "id", "dim" (default 1), "shift" (adds a constant
// and records it as the symbol floor), "floor" (declared infimum, as written
// by symbol_to_json), "semiclassical": {"m", "rho", "N0"}.
// Multi-indices are integers for d = 1 and arrays otherwise.

#include <string>

#include "json.hpp"

#include "antiwick/symbol.hpp"

namespace antiwick {

/// Throws ConfigError naming the offending field.
Symbol symbol_from_json(const nlohmann::json& j, const std::string& path = "");
nlohmann::json symbol_to_json(const Symbol& s);

}  // namespace antiwick
