#include "antiwick/coherent.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "antiwick/ball_quadrature.hpp"
#include "antiwick/errors.hpp"
#include "antiwick/hermite.hpp"
#include "antiwick/simd/kernels.hpp"
#include "transform_plan.hpp"

namespace antiwick {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive_h(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("h must be positive and finite");
}

double trapezoid_norm2(std::span<const std::complex<double>> v, double delta) {
  std::vector<double> sq(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) sq[j] = std::norm(v[j]);
  return pairwise_sum(sq) * delta;
}

double coefficient_norm2(std::span<const std::complex<double>> c) {
  std::vector<double> sq(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) sq[j] = std::norm(c[j]);
  return pairwise_sum(sq);
}

}  // namespace

// ---------------------------------------------------------------- SpatialGrid

SpatialGrid::SpatialGrid(double half_width, int points) : L_(half_width), M_(points) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw ValidationError("grid half-width must be positive");
  if (points < 8) throw ValidationError("spatial grid needs at least 8 points");
}

std::vector<double> SpatialGrid::nodes() const {
  std::vector<double> x(M_);
  for (int j = 0; j < M_; ++j) x[j] = point(j);
  return x;
}

SpatialGrid SpatialGrid::for_modes(double h, int n_modes, double x_extent) {
  require_positive_h(h);
  const int n = std::max(n_modes, 1);
  const double sh = std::sqrt(h);
  const double L = std::abs(x_extent) + 8.0 * sh * (1.0 + std::sqrt(static_cast<double>(n)));
  const double delta = kTwoPi * sh / (2.0 * std::sqrt(2.0 * n + 1.0) + 24.0);
  const int M = std::max(8, static_cast<int>(std::ceil(2.0 * L / delta)));
  return SpatialGrid(L, M);
}

// -------------------------------------------------------------- CoherentFrame

CoherentFrame::CoherentFrame(double h, std::vector<double> coeffs) : h_(h), coeffs_(std::move(coeffs)) {}

CoherentFrame CoherentFrame::gaussian(double h, int dim) {
  require_positive_h(h);
  if (dim != 1) throw UnsupportedDimension("coherent frames are implemented for d = 1 only");
  CoherentFrame f(h, {1.0});
  const double cut = f.window_cutoff();
  const SpatialGrid g(cut, 4096);
  std::vector<std::complex<double>> v(g.points());
  for (int j = 0; j < g.points(); ++j) v[j] = f.window(g.point(j));
  f.norm_defect_ = std::abs(std::sqrt(trapezoid_norm2(v, g.spacing())) - 1.0);
  if (f.norm_defect_ > 1e-10) throw NumericError("Gaussian window failed its norm check");
  return f;
}

CoherentFrame CoherentFrame::hermite_window(double h, std::vector<double> coeffs) {
  require_positive_h(h);
  if (coeffs.empty()) throw ValidationError("window coefficient vector is empty");
  for (double c : coeffs)
    if (!std::isfinite(c)) throw ValidationError("window coefficients must be finite");
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  CoherentFrame f(h, std::move(coeffs));
  const double cut = f.window_cutoff();
  const SpatialGrid g(cut, std::max(4096, 64 * static_cast<int>(f.coeffs_.size())));
  std::vector<std::complex<double>> v(g.points());
  for (int j = 0; j < g.points(); ++j) v[j] = f.window(g.point(j));
  f.norm_defect_ = std::abs(std::sqrt(trapezoid_norm2(v, g.spacing())) - 1.0);
  if (f.norm_defect_ > 1e-10)
    throw ValidationError("window is not unit norm (defect " + std::to_string(f.norm_defect_) + ")");
  return f;
}

double CoherentFrame::window(double y) const {
  if (is_gaussian()) return std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * y * y);
  const double pt[1] = {y};
  const auto table = hermite_table(static_cast<int>(coeffs_.size()), pt, 1.0);
  double s = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) s += coeffs_[k] * table[k];
  return s;
}

double CoherentFrame::window_cutoff() const noexcept {
  if (is_gaussian()) return 9.0;
  return std::sqrt(2.0 * window_order() + 1.0) + 9.0;
}

CoherentFrame CoherentFrame::with_h(double h) const {
  require_positive_h(h);
  CoherentFrame f = *this;
  f.h_ = h;
  return f;
}

// ------------------------------------------------------------------ PhaseGrid

PhaseGrid PhaseGrid::box(double x_center, double w_center, double x_half, double w_half, int x_points,
                         int w_points) {
  if (!(x_half > 0.0) || !(w_half > 0.0)) throw ValidationError("phase grid half-widths must be positive");
  if (x_points < 1 || w_points < 1) throw ValidationError("phase grid needs at least one node per axis");
  PhaseGrid g;
  g.x_center = x_center;
  g.w_center = w_center;
  g.x_half = x_half;
  g.w_half = w_half;
  g.x_points = x_points;
  g.w_points = w_points;
  return g;
}

PhaseGrid PhaseGrid::for_modes(double h, int n_modes, double xc, double wc, double refine) {
  require_positive_h(h);
  if (!(refine > 0.0)) throw ValidationError("refinement factor must be positive");
  const int n = std::max(n_modes, 1);
  const double sh = std::sqrt(h);
  const double root = std::sqrt(2.0 * n + 1.0);
  const double half = sh * (root + 8.0);
  const double step = std::min(sh / 4.0, kTwoPi * sh / (2.0 * root + 16.0)) / refine;
  // Even count: no node at the grid center, where radial powers may be singular.
  int m = static_cast<int>(std::ceil(2.0 * half / step));
  m += m % 2;
  PhaseGrid g = box(xc, wc, half, half, m, m);
  g.certified_modes = n;
  g.tail_mass = mode_tail_mass(h, n, half);
  return g;
}

double PhaseGrid::inscribed_radius() const noexcept {
  const double r = std::min(x_half - std::abs(x_center), w_half - std::abs(w_center));
  return std::max(0.0, r);
}

double PhaseGrid::certify(double h, int n_modes) {
  certified_modes = n_modes;
  tail_mass = mode_tail_mass(h, n_modes, inscribed_radius());
  return tail_mass;
}

double mode_tail_mass(double h, int n_modes, double radius) {
  require_positive_h(h);
  if (n_modes < 1) return 0.0;
  if (!(radius > 0.0)) return 1.0;
  // The phase-space density of psi_n^h is Poisson in rho = |z|^2 / 2h; the
  // tail is increasing in n, so the top mode bounds the rest.
  return boost::math::gamma_q(static_cast<double>(n_modes), radius * radius / (2.0 * h));
}

double mode_cover_radius(double h, int n_modes, double tol) {
  require_positive_h(h);
  const double rho = boost::math::gamma_q_inv(static_cast<double>(std::max(n_modes, 1)), tol);
  return std::sqrt(2.0 * h * rho);
}

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(SpatialGrid grid, std::vector<std::complex<double>> samples, double h)
    : repr_(Representation::samples), values_(std::move(samples)), h_(h), basis_h_(h),
      grid_(grid) {
  require_positive_h(h);
  if (static_cast<int>(values_.size()) != grid.points())
    throw ShapeError("sample count " + std::to_string(values_.size()) + " does not match grid size " +
                     std::to_string(grid.points()));
  norm_ = recompute_norm();
}

StateVector StateVector::hermite(std::vector<std::complex<double>> coeffs, double basis_h) {
  require_positive_h(basis_h);
  if (coeffs.empty()) throw ValidationError("Hermite state needs at least one coefficient");
  StateVector s;
  s.repr_ = Representation::hermite;
  s.values_ = std::move(coeffs);
  s.h_ = basis_h;
  s.basis_h_ = basis_h;
  s.norm_ = s.recompute_norm();
  return s;
}

StateVector StateVector::random_hermite(int n_modes, double basis_h, unsigned long long seed) {
  if (n_modes < 1) throw ValidationError("random state needs at least one mode");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<std::complex<double>> c(n_modes);
  for (auto& v : c) {
    const double re = normal(rng);
    const double im = normal(rng);
    v = {re, im};
  }
  const double nrm = std::sqrt(coefficient_norm2(c));
  for (auto& v : c) v /= nrm;
  return hermite(std::move(c), basis_h);
}

StateVector StateVector::zero(const SpatialGrid& grid, double h) {
  return StateVector(grid, std::vector<std::complex<double>>(grid.points()), h);
}

const SpatialGrid& StateVector::grid() const {
  if (!grid_) throw ShapeError("Hermite state has no spatial grid");
  return *grid_;
}

double StateVector::recompute_norm() const {
  if (repr_ == Representation::hermite) return std::sqrt(coefficient_norm2(values_));
  return std::sqrt(trapezoid_norm2(values_, grid_->spacing()));
}

StateVector StateVector::sampled_on(const SpatialGrid& g) const {
  if (repr_ == Representation::samples) {
    if (g.points() != grid_->points() || g.half_width() != grid_->half_width()) throw ShapeError("state lives on a different spatial grid");
    return *this;
  }
  const auto x = g.nodes();
  const int n = static_cast<int>(values_.size());
  const auto table = hermite_table(n, x, basis_h_);
  std::vector<double> re(x.size(), 0.0), im(x.size(), 0.0);
  for (int k = 0; k < n; ++k) {
    const std::span<const double> row(table.data() + static_cast<std::size_t>(k) * x.size(), x.size());
    const std::vector<double> zeros(x.size(), 0.0);
    simd::caxpy(values_[k], row, zeros, re, im);
  }
  std::vector<std::complex<double>> v(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) v[j] = {re[j], im[j]};
  return StateVector(g, std::move(v), h_);
}

StateVector StateVector::scaled(std::complex<double> c) const {
  StateVector s = *this;
  for (auto& v : s.values_) v *= c;
  s.norm_ = s.recompute_norm();
  return s;
}

// ------------------------------------------------------------ TransformPlan

namespace detail {

TransformPlan::TransformPlan(const CoherentFrame& frame, const PhaseGrid& pgrid, const SpatialGrid& grid)
    : pgrid_(pgrid), grid_(grid) {
  const double h = frame.h();
  const double sh = std::sqrt(h);
  const double delta = grid.spacing();
  const double cut = frame.window_cutoff() * sh;
  const double amp = std::pow(h, -0.25) * delta;
  slices_.resize(pgrid.x_points);
  jlo_ = grid.points();
  jhi_ = 0;
  for (int i = 0; i < pgrid.x_points; ++i) {
    const double x = pgrid.x_node(i);
    Slice& s = slices_[i];
    s.j0 = std::clamp(static_cast<int>(std::ceil((x - cut + grid.half_width()) / delta)), 0, grid.points());
    s.j1 = std::clamp(static_cast<int>(std::floor((x + cut + grid.half_width()) / delta)) + 1, s.j0, grid.points());
    s.weights.resize(s.j1 - s.j0);
    for (int j = s.j0; j < s.j1; ++j) s.weights[j - s.j0] = amp * frame.window((grid.point(j) - x) / sh);
    if (s.j1 > s.j0) {
      jlo_ = std::min(jlo_, s.j0);
      jhi_ = std::max(jhi_, s.j1);
    }
  }
  if (jhi_ < jlo_) jhi_ = jlo_;
  const int width = jhi_ - jlo_;
  cos_.resize(static_cast<std::size_t>(pgrid.w_points) * width);
  sin_.resize(cos_.size());
  for (int k = 0; k < pgrid.w_points; ++k) {
    const double w = pgrid.w_node(k);
    for (int j = jlo_; j < jhi_; ++j) {
      const double phase = w * grid.point(j) / h;
      cos_[static_cast<std::size_t>(k) * width + (j - jlo_)] = std::cos(phase);
      sin_[static_cast<std::size_t>(k) * width + (j - jlo_)] = std::sin(phase);
    }
  }
}

void TransformPlan::row(int i, std::span<const double> fr, std::span<const double> fi,
                        std::span<std::complex<double>> out, std::vector<double>& scratch) const {
  const Slice& s = slices_[i];
  const int n = s.j1 - s.j0;
  const int width = jhi_ - jlo_;
  scratch.resize(2 * static_cast<std::size_t>(n));
  double* gr = scratch.data();
  double* gi = scratch.data() + n;
  for (int j = 0; j < n; ++j) {
    gr[j] = fr[s.j0 + j] * s.weights[j];
    gi[j] = fi[s.j0 + j] * s.weights[j];
  }
  const std::span<const double> a_r(gr, n), a_i(gi, n);
  for (int k = 0; k < pgrid_.w_points; ++k) {
    const std::size_t off = static_cast<std::size_t>(k) * width + (s.j0 - jlo_);
    out[k] = simd::complex_dot_conj(a_r, a_i, std::span<const double>(cos_.data() + off, n),
                                    std::span<const double>(sin_.data() + off, n));
  }
}

void TransformPlan::row_real(int i, std::span<const double> f, std::span<std::complex<double>> out,
                             std::vector<double>& scratch) const {
  const Slice& s = slices_[i];
  const int n = s.j1 - s.j0;
  const int width = jhi_ - jlo_;
  scratch.resize(n);
  for (int j = 0; j < n; ++j) scratch[j] = f[s.j0 + j] * s.weights[j];
  const std::span<const double> g(scratch.data(), n);
  for (int k = 0; k < pgrid_.w_points; ++k) {
    const std::size_t off = static_cast<std::size_t>(k) * width + (s.j0 - jlo_);
    out[k] = {simd::dot(g, std::span<const double>(cos_.data() + off, n)),
              -simd::dot(g, std::span<const double>(sin_.data() + off, n))};
  }
}

}  // namespace detail

// ------------------------------------------------------------ transforms

SpatialGrid transform_grid(const CoherentFrame& frame, const PhaseGrid& pgrid, int n_modes, double basis_h) {
  const double h = frame.h();
  const double sh = std::sqrt(h);
  const int n = std::max(n_modes, 1) + frame.window_order();
  const double root = std::sqrt(2.0 * n + 1.0);
  const double x_reach = std::max(std::abs(pgrid.x_center - pgrid.x_half), std::abs(pgrid.x_center + pgrid.x_half)) +
                         frame.window_cutoff() * sh;
  const double basis_reach = 8.0 * std::sqrt(basis_h) * (1.0 + std::sqrt(static_cast<double>(n)));
  const double L = std::max({x_reach, basis_reach, 8.0 * sh * (1.0 + std::sqrt(static_cast<double>(n)))});
  // Alias-free spacing: the modulation e^{-i w y/h} shifts the integrand's
  // band by up to w_max / h.
  const double w_max = std::max(std::abs(pgrid.w_center - pgrid.w_half), std::abs(pgrid.w_center + pgrid.w_half));
  const double band = (root + 12.0) / std::min(sh, std::sqrt(basis_h)) + w_max / h;
  const double delta = std::min(kTwoPi * sh / (2.0 * root + 24.0), kTwoPi / band);
  const int M = std::max(8, static_cast<int>(std::ceil(2.0 * L / delta)));
  return SpatialGrid(L, M);
}

StateVector coherent_state(const CoherentFrame& frame, double x0, double w0, const SpatialGrid& grid) {
  const double h = frame.h();
  const double sh = std::sqrt(h);
  const double L = grid.half_width();
  double required;
  double tail;
  if (frame.is_gaussian()) {
    // |phi^h|^2 is a normal density with variance h/2.
    tail = 0.5 * std::erfc((L - x0) / sh) + 0.5 * std::erfc((L + x0) / sh);
    required = std::abs(x0) + sh * boost::math::erfc_inv(1e-8);
  } else {
    required = std::abs(x0) + sh * (std::sqrt(2.0 * frame.window_order() + 1.0) + 6.0);
    tail = L >= required ? 0.0 : 1.0;
  }
  if (tail > 1e-8)
    throw CoverageError("grid half-width " + std::to_string(L) + " does not cover the coherent state at x0 = " +
                            std::to_string(x0),
                        required);
  if (grid.spacing() > 0.5 * sh)
    throw ShapeError("grid spacing " + std::to_string(grid.spacing()) + " does not resolve sqrt(h) = " +
                     std::to_string(sh));
  const double amp = std::pow(h, -0.25);
  std::vector<std::complex<double>> v(grid.points());
  for (int j = 0; j < grid.points(); ++j) {
    const double x = grid.point(j);
    v[j] = amp * frame.window((x - x0) / sh) * std::polar(1.0, w0 * x / h);
  }
  return StateVector(grid, std::move(v), h);
}

namespace {

/// Samples of f on a grid suitable for the transform against pgrid.
StateVector prepared_samples(const CoherentFrame& frame, const StateVector& f, const PhaseGrid& pgrid) {
  if (f.dim() != frame.dim()) throw ShapeError("state and frame dimensions differ");
  if (f.representation() == StateVector::Representation::hermite) {
    const auto g = transform_grid(frame, pgrid, static_cast<int>(f.coefficients().size()), f.basis_h());
    return f.sampled_on(g);
  }
  const double h = frame.h();
  const double w_max = std::max(std::abs(pgrid.w_center - pgrid.w_half), std::abs(pgrid.w_center + pgrid.w_half));
  const double delta = f.grid().spacing();
  if (delta * (w_max / h + 6.0 / std::sqrt(h)) > kTwoPi)
    throw ShapeError("state grid spacing " + std::to_string(delta) + " aliases frequencies up to w = " +
                     std::to_string(w_max) + " at h = " + std::to_string(h));
  return f;
}

}  // namespace

Eigen::MatrixXcd stft(const CoherentFrame& frame, const StateVector& f, const PhaseGrid& pgrid) {
  const StateVector s = prepared_samples(frame, f, pgrid);
  const detail::TransformPlan plan(frame, pgrid, s.grid());
  const auto v = s.samples();
  std::vector<double> fr(v.size()), fi(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    fr[j] = v[j].real();
    fi[j] = v[j].imag();
  }
  Eigen::MatrixXcd out(pgrid.x_points, pgrid.w_points);
  std::vector<std::complex<double>> row(pgrid.w_points);
  std::vector<double> scratch;
  for (int i = 0; i < pgrid.x_points; ++i) {
    plan.row(i, fr, fi, row, scratch);
    for (int k = 0; k < pgrid.w_points; ++k) out(i, k) = row[k];
  }
  return out;
}

namespace {

double weighted_energy(const Eigen::MatrixXcd& V, const PhaseGrid& pgrid, double h,
                       const std::function<double(double, double)>& weight) {
  std::vector<double> terms(V.size());
  std::size_t t = 0;
  for (int i = 0; i < pgrid.x_points; ++i)
    for (int k = 0; k < pgrid.w_points; ++k) terms[t++] = weight(pgrid.x_node(i), pgrid.w_node(k)) * std::norm(V(i, k));
  return pairwise_sum(terms) * pgrid.cell_area() / (kTwoPi * h);
}

}  // namespace

double parseval_defect(const CoherentFrame& frame, const StateVector& f, const PhaseGrid& pgrid) {
  const double n2 = f.norm() * f.norm();
  if (n2 == 0.0) return 0.0;
  const auto V = stft(frame, f, pgrid);
  const double energy = weighted_energy(V, pgrid, frame.h(), [](double, double) { return 1.0; });
  return std::abs(energy - n2) / n2;
}

double reproducing_defect(const CoherentFrame& frame, const StateVector& f, const PhaseGrid& pgrid) {
  std::vector<std::pair<int, int>> probes;
  for (int a : {-1, 0, 1})
    for (int b : {-1, 0, 1}) {
      const int i = std::clamp(pgrid.x_points / 2 + a * pgrid.x_points / 8, 0, pgrid.x_points - 1);
      const int k = std::clamp(pgrid.w_points / 2 + b * pgrid.w_points / 8, 0, pgrid.w_points - 1);
      probes.emplace_back(i, k);
    }
  return reproducing_defect(frame, f, pgrid, probes);
}

double reproducing_defect(const CoherentFrame& frame, const StateVector& f, const PhaseGrid& pgrid,
                          const std::vector<std::pair<int, int>>& probe_nodes) {
  if (f.norm() == 0.0) return 0.0;
  const auto V = stft(frame, f, pgrid);
  const double h = frame.h();
  const double scale = pgrid.cell_area() / (kTwoPi * h);
  const auto g = transform_grid(frame, pgrid, 1, h);
  double worst = 0.0;
  for (auto [pi, pk] : probe_nodes) {
    if (pi < 0 || pi >= pgrid.x_points || pk < 0 || pk >= pgrid.w_points)
      throw ShapeError("probe node outside the phase grid");
    // K(z', z) = <phi_z', phi_z> = conj(V phi_z (z')).
    const auto probe = coherent_state(frame, pgrid.x_node(pi), pgrid.w_node(pk), g);
    const auto K = stft(frame, probe, pgrid);
    std::vector<double> re(V.size()), im(V.size());
    std::size_t t = 0;
    for (int i = 0; i < pgrid.x_points; ++i)
      for (int k = 0; k < pgrid.w_points; ++k, ++t) {
        const std::complex<double> term = V(i, k) * std::conj(K(i, k));
        re[t] = term.real();
        im[t] = term.imag();
      }
    const std::complex<double> rebuilt(pairwise_sum(re) * scale, pairwise_sum(im) * scale);
    worst = std::max(worst, std::abs(V(pi, pk) - rebuilt));
  }
  return worst;
}

StateVector dilate(const StateVector& f, double h) {
  require_positive_h(h);
  if (f.representation() == StateVector::Representation::hermite) {
    std::vector<std::complex<double>> c(f.coefficients().begin(), f.coefficients().end());
    return StateVector::hermite(std::move(c), f.basis_h() / h);
  }
  const SpatialGrid& g = f.grid();
  const SpatialGrid target(g.half_width() / std::sqrt(h), g.points());
  const double amp = std::pow(h, 0.25);
  std::vector<std::complex<double>> v(f.samples().begin(), f.samples().end());
  for (auto& x : v) x *= amp;
  return StateVector(target, std::move(v), f.h() / h);
}

double quadratic_form(const Symbol& a, const CoherentFrame& frame, const StateVector& f, const PhaseGrid& pgrid) {
  if (a.dim() != frame.dim()) throw ShapeError("symbol and frame dimensions differ");
  if (f.norm() == 0.0) return 0.0;
  const auto V = stft(frame, f, pgrid);
  const double h = frame.h();
  return weighted_energy(V, pgrid, h, [&](double x, double w) { return a.at(x, w, h); });
}

}  // namespace antiwick
