#pragma once

// h-scaled Hermite functions psi_n^h(x) = h^{-1/4} psi_n(x / sqrt(h)),
// orthonormal in L^2(R) and eigenfunctions of -h^2 d^2/dx^2 + x^2 with
// eigenvalues h (2n + 1).

#include <span>
#include <vector>

namespace antiwick {

/// Table of psi_0^h .. psi_{count-1}^h at the points xs, row-major:
/// entry (n, i) at [n * xs.size() + i]. Uses the normalized three-term
/// recurrence with a running log-scale, so count in the thousands is fine
/// far out in the tails (values below the double range come back as 0).
std::vector<double> hermite_table(int count, std::span<const double> xs, double h);

double hermite_function(int n, double x, double h);

/// Classical turning point sqrt(h (2n + 1)) of mode n.
double hermite_turning_point(int n, double h);

}  // namespace antiwick
