#pragma once

// Coherent states phi^h_{(x0,w0)}(x) = h^{-1/4} e^{i w0 x / h} phi((x - x0) / sqrt(h))
// and the transform V f(x, w) = <f, phi^h_{(x,w)}> on a discrete phase grid.
// One configuration dimension (phase space R^2) throughout.

#include <complex>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "antiwick/symbol.hpp"

namespace antiwick {

/// Uniform periodic-style grid x_j = -L + j * delta, j = 0..M-1, delta = 2L/M.
class SpatialGrid {
 public:
  SpatialGrid(double half_width, int points);

  double half_width() const noexcept { return L_; }
  int points() const noexcept { return M_; }
  double spacing() const noexcept { return 2.0 * L_ / M_; }
  double point(int j) const noexcept { return -L_ + j * spacing(); }
  std::vector<double> nodes() const;

  /// Grid for states built from the first n_modes h-Hermite functions,
  /// optionally shifted by x_extent: L = x_extent + 8 sqrt(h) (1 + sqrt(n_modes)).
  static SpatialGrid for_modes(double h, int n_modes, double x_extent = 0.0);

 private:
  double L_;
  int M_;
};

class CoherentFrame {
 public:
  /// Gaussian window pi^{-1/4} e^{-y^2/2}. Only dim = 1 is supported.
  static CoherentFrame gaussian(double h, int dim = 1);
  /// Window sum_k c_k psi_k(y) with unscaled Hermite functions. Throws
  /// ValidationError unless its L^2 norm, checked by quadrature, is 1 within 1e-10.
  static CoherentFrame hermite_window(double h, std::vector<double> coeffs);

  double h() const noexcept { return h_; }
  int dim() const noexcept { return 1; }
  bool is_gaussian() const noexcept { return coeffs_.size() == 1; }
  /// {1} for the Gaussian window.
  std::span<const double> window_coefficients() const noexcept { return coeffs_; }
  /// Highest Hermite mode present in the window.
  int window_order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  /// Unscaled window phi(y).
  double window(double y) const;
  /// |y| beyond which the unscaled window is below double precision.
  double window_cutoff() const noexcept;
  /// |norm - 1| as measured at construction.
  double norm_defect() const noexcept { return norm_defect_; }

  CoherentFrame with_h(double h) const;

 private:
  CoherentFrame(double h, std::vector<double> coeffs);
  double h_;
  std::vector<double> coeffs_;
  double norm_defect_ = 0.0;
};

/// Midpoint grid over [xc - Lx, xc + Lx] x [wc - Lw, wc + Lw]; nodes sit at
/// cell centers, so a symbol singular at a cell corner is never evaluated.
struct PhaseGrid {
  double x_center = 0.0;
  double w_center = 0.0;
  double x_half = 1.0;
  double w_half = 1.0;
  int x_points = 1;
  int w_points = 1;
  /// Bound on the phase-space mass of the certified mode content outside the
  /// box; NaN when the grid was not certified.
  double tail_mass = std::numeric_limits<double>::quiet_NaN();
  int certified_modes = 0;

  static PhaseGrid box(double x_center, double w_center, double x_half, double w_half, int x_points,
                       int w_points);
  /// Grid resolving states made of the first n_modes h-Hermite functions
  /// translated to (xc, wc). refine > 1 shrinks the spacing.
  static PhaseGrid for_modes(double h, int n_modes, double xc = 0.0, double wc = 0.0, double refine = 1.0);

  double x_spacing() const noexcept { return 2.0 * x_half / x_points; }
  double w_spacing() const noexcept { return 2.0 * w_half / w_points; }
  double x_node(int i) const noexcept { return x_center - x_half + (i + 0.5) * x_spacing(); }
  double w_node(int k) const noexcept { return w_center - w_half + (k + 0.5) * w_spacing(); }
  double cell_area() const noexcept { return x_spacing() * w_spacing(); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(x_points) * w_points; }

  /// Radius of the largest origin-centred disk inside the box (0 if the
  /// origin is outside).
  double inscribed_radius() const noexcept;
  /// Records the tail bound for n_modes h-Hermite modes centred at the origin
  /// and returns it.
  double certify(double h, int n_modes);
};

/// Phase-space tail mass of modes < n_modes outside the disk of radius R:
/// the upper regularized gamma Q(n_modes, R^2 / 2h).
double mode_tail_mass(double h, int n_modes, double radius);
/// Smallest radius whose tail mass is at most tol.
double mode_cover_radius(double h, int n_modes, double tol = 1e-8);

class StateVector {
 public:
  enum class Representation { samples, hermite };

  StateVector(SpatialGrid grid, std::vector<std::complex<double>> samples, double h = 1.0);
  /// f = sum_n c_n psi_n^{basis_h}.
  static StateVector hermite(std::vector<std::complex<double>> coeffs, double basis_h);
  /// Seeded random unit combination of the first n_modes h-Hermite functions.
  static StateVector random_hermite(int n_modes, double basis_h, unsigned long long seed);
  static StateVector zero(const SpatialGrid& grid, double h = 1.0);

  Representation representation() const noexcept { return repr_; }
  int dim() const noexcept { return 1; }
  /// Semiclassical parameter recorded in the grid header.
  double h() const noexcept { return h_; }
  /// Throws ShapeError for Hermite states.
  const SpatialGrid& grid() const;
  std::span<const std::complex<double>> samples() const noexcept { return values_; }
  std::span<const std::complex<double>> coefficients() const noexcept { return values_; }
  double basis_h() const noexcept { return basis_h_; }

  /// Cached L^2 norm (trapezoid rule for samples, l^2 for coefficients).
  double norm() const noexcept { return norm_; }
  double recompute_norm() const;

  /// Samples on g; Hermite states are synthesized, sampled states must
  /// already live on a grid of the same shape.
  StateVector sampled_on(const SpatialGrid& g) const;
  StateVector scaled(std::complex<double> c) const;

 private:
  StateVector() = default;
  Representation repr_ = Representation::samples;
  std::vector<std::complex<double>> values_;
  double h_ = 1.0;
  double basis_h_ = 1.0;
  double norm_ = 0.0;
  std::optional<SpatialGrid> grid_;
};

/// Samples of phi^h_{(x0,w0)} on grid. Throws CoverageError (with the
/// required half-width) if more than 1e-8 of its mass falls outside the grid,
/// ShapeError if the spacing does not resolve the width sqrt(h).
StateVector coherent_state(const CoherentFrame& frame, double x0, double w0, const SpatialGrid& grid);

/// Matrix of V f at phase-grid nodes: rows are x nodes, columns w nodes.
/// Throws ShapeError if f's grid spacing aliases the grid's frequency range.
Eigen::MatrixXcd stft(const CoherentFrame& frame, const StateVector& f, const PhaseGrid& pgrid);

/// Relative Parseval defect |(2 pi h)^{-1} sum |V f|^2 dA - |f|^2| / |f|^2; 0 for f = 0.
double parseval_defect(const CoherentFrame& frame, const StateVector& f, const PhaseGrid& pgrid);

/// Max over probe nodes of |V f(z) - (2 pi h)^{-1} sum_z' V f(z') <phi_z', phi_z> dA|.
/// The default probes are the nine nodes offset by 0 and +-1/4 of each half-width.
double reproducing_defect(const CoherentFrame& frame, const StateVector& f, const PhaseGrid& pgrid);
double reproducing_defect(const CoherentFrame& frame, const StateVector& f, const PhaseGrid& pgrid,
                          const std::vector<std::pair<int, int>>& probe_nodes);

/// D_h f(x) = h^{1/4} f(sqrt(h) x). Sampled states get a rescaled grid with
/// the same point count, Hermite states the basis scale basis_h / h.
StateVector dilate(const StateVector& f, double h);

/// (2 pi h)^{-1} sum a(z) |V f(z)|^2 dA. Throws DomainError if a node hits a
/// singular point of a.
double quadratic_form(const Symbol& a, const CoherentFrame& frame, const StateVector& f, const PhaseGrid& pgrid);

/// Spatial grid used internally for transforms of Hermite content up to
/// n_modes (scale basis_h) against frame on pgrid.
SpatialGrid transform_grid(const CoherentFrame& frame, const PhaseGrid& pgrid, int n_modes, double basis_h);

}  // namespace antiwick
