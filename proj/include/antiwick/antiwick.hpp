#pragma once

// Anti-Wick operators A_{a,h} as Hermitian matrices in the h-scaled Hermite
// basis: A_{mn} = (2 pi h)^{-1} int a(z) <psi_n, phi_z> conj(<psi_m, phi_z>) dz.
//
// Three routes:
//   quadrature  direct phase-space quadrature of the weak definition (any
//               symbol, any frame window);
//   polynomial  sum c_ab a^alpha (a+)^beta with ladder operators
//               a = h d/dx + x, a+ = -h d/dx + x (Gaussian window);
//   radial      diagonal entries from the Poisson overlap density of the
//               Gaussian window (radial symbols).

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "antiwick/coherent.hpp"
#include "antiwick/symbol.hpp"

namespace antiwick {

enum class AssemblyRoute { quadrature, polynomial, radial };
const char* to_string(AssemblyRoute r) noexcept;

class HermiteOperator {
 public:
  HermiteOperator(Eigen::MatrixXcd m, double h, AssemblyRoute route, std::string symbol_id);

  int size() const noexcept { return static_cast<int>(matrix_.rows()); }
  double h() const noexcept { return h_; }
  int dim() const noexcept { return 1; }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  AssemblyRoute route() const noexcept { return route_; }
  const std::string& symbol_id() const noexcept { return symbol_id_; }

  /// True when every imaginary part is zero after symmetrization.
  bool is_real() const noexcept;
  Eigen::MatrixXd real_part() const { return matrix_.real(); }
  /// max |A - A^H| entrywise.
  double hermitian_defect() const noexcept;

  /// Leading block on which the entries are exact (polynomial route) or
  /// fully resolved (other routes); equals size() for all routes here.
  int exact_block() const noexcept { return exact_block_; }
  /// Phase grid used by the quadrature route.
  const std::optional<PhaseGrid>& phase_grid() const noexcept { return pgrid_; }
  int spatial_points() const noexcept { return spatial_points_; }
  double spatial_half_width() const noexcept { return spatial_half_width_; }

  /// Leading n x n block.
  HermiteOperator leading_block(int n) const;
  /// A + c I.
  HermiteOperator shifted(double c) const;

  void set_grid_certificate(const PhaseGrid& g, const SpatialGrid& s);
  void set_exact_block(int n) noexcept { exact_block_ = n; }

 private:
  Eigen::MatrixXcd matrix_;
  double h_;
  AssemblyRoute route_;
  std::string symbol_id_;
  int exact_block_;
  std::optional<PhaseGrid> pgrid_;
  int spatial_points_ = 0;
  double spatial_half_width_ = 0.0;
};

/// Throws CoverageError if pgrid does not contain the phase-space support of
/// mode N_b - 1 (tail mass 1e-8), DomainError if a node is singular for a.
/// workers > 1 splits the node rows; the reduction order is fixed.
HermiteOperator assemble_quadrature(const Symbol& a, const CoherentFrame& frame, int n_b, const PhaseGrid& pgrid,
                                    int workers = 1);
/// Phase grid that assemble_quadrature accepts for (frame, n_b).
PhaseGrid quadrature_grid(const CoherentFrame& frame, int n_b, double refine = 1.0);

/// Exact on the full N_b block. Throws ValidationError unless a is a
/// polynomial (or constant) symbol.
HermiteOperator assemble_polynomial(const Symbol& a, double h, int n_b);

struct RadialQuadrature {
  /// Relative tolerance of the tanh-sinh rule.
  double tolerance = 1e-13;
  /// Half-width of the integration window, in units of sqrt(n + 1) + 1
  /// around the peak of the mode-n density.
  double sigmas = 20.0;
};

/// Diagonal matrix mu_n = int_0^inf g(2 h rho) rho^n e^{-rho} / n! d rho.
/// Throws UnsupportedDimension for d != 1, ValidationError if a has no
/// radial profile, NumericError if the integral does not converge.
HermiteOperator assemble_radial(const Symbol& a, double h, int n_b, RadialQuadrature rq = {});

/// Polynomial route for polynomial and constant symbols, radial route for
/// radial ones, quadrature otherwise. Non-Gaussian windows always use
/// quadrature.
HermiteOperator assemble(const Symbol& a, const CoherentFrame& frame, int n_b, int workers = 1);
AssemblyRoute preferred_route(const Symbol& a, const CoherentFrame& frame) noexcept;

}  // namespace antiwick
