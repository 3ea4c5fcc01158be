#include "antiwick/antiwick.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "antiwick/errors.hpp"
#include "antiwick/hermite.hpp"
#include "antiwick/simd/kernels.hpp"
#include "transform_plan.hpp"

namespace antiwick {

const char* to_string(AssemblyRoute r) noexcept {
  switch (r) {
    case AssemblyRoute::quadrature:
      return "quadrature";
    case AssemblyRoute::polynomial:
      return "polynomial";
    case AssemblyRoute::radial:
      return "radial";
  }
  return "unknown";
}

// ------------------------------------------------------------ HermiteOperator

HermiteOperator::HermiteOperator(Eigen::MatrixXcd m, double h, AssemblyRoute route, std::string symbol_id)
    : matrix_(std::move(m)), h_(h), route_(route), symbol_id_(std::move(symbol_id)) {
  if (matrix_.rows() != matrix_.cols()) throw ShapeError("operator matrix must be square");
  if (!matrix_.allFinite()) throw NumericError("operator matrix has non-finite entries");
  const Eigen::MatrixXcd adj = matrix_.adjoint();
  matrix_ = 0.5 * (matrix_ + adj);
  exact_block_ = size();
}

bool HermiteOperator::is_real() const noexcept {
  if (matrix_.size() == 0) return true;
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  return matrix_.imag().cwiseAbs().maxCoeff() <= 1e-14 * scale;
}

double HermiteOperator::hermitian_defect() const noexcept {
  if (matrix_.size() == 0) return 0.0;
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

HermiteOperator HermiteOperator::leading_block(int n) const {
  if (n < 1 || n > size()) throw ShapeError("leading block size out of range");
  HermiteOperator out(matrix_.topLeftCorner(n, n), h_, route_, symbol_id_);
  out.exact_block_ = std::min(n, exact_block_);
  out.pgrid_ = pgrid_;
  out.spatial_points_ = spatial_points_;
  out.spatial_half_width_ = spatial_half_width_;
  return out;
}

HermiteOperator HermiteOperator::shifted(double c) const {
  HermiteOperator out = *this;
  out.matrix_.diagonal().array() += c;
  return out;
}

void HermiteOperator::set_grid_certificate(const PhaseGrid& g, const SpatialGrid& s) {
  pgrid_ = g;
  spatial_points_ = s.points();
  spatial_half_width_ = s.half_width();
}

// ------------------------------------------------------------ quadrature route

PhaseGrid quadrature_grid(const CoherentFrame& frame, int n_b, double refine) {
  return PhaseGrid::for_modes(frame.h(), n_b + frame.window_order(), 0.0, 0.0, refine);
}

HermiteOperator assemble_quadrature(const Symbol& a, const CoherentFrame& frame, int n_b, const PhaseGrid& pgrid,
                                    int workers) {
  if (n_b < 1) throw ValidationError("basis size must be at least 1");
  if (a.dim() != frame.dim()) throw ShapeError("symbol and frame dimensions differ");
  const double h = frame.h();
  const int content = n_b + frame.window_order();
  const double needed = mode_cover_radius(h, content, 1e-8);
  if (pgrid.inscribed_radius() < needed)
    throw CoverageError("phase grid does not contain the support of Hermite mode " + std::to_string(n_b - 1),
                        needed + std::max(std::abs(pgrid.x_center), std::abs(pgrid.w_center)));
  PhaseGrid certified = pgrid;
  certified.certify(h, content);

  const SpatialGrid grid = transform_grid(frame, pgrid, n_b, h);
  const detail::TransformPlan plan(frame, pgrid, grid);
  const auto xs = grid.nodes();
  const auto table = hermite_table(n_b, xs, h);

  const int rows = pgrid.x_points;
  const int n_blocks = std::min(rows, 8);
  const std::size_t nn = static_cast<std::size_t>(n_b) * n_b;
  std::vector<std::vector<double>> part_r(n_blocks), part_i(n_blocks);
  const double scale = pgrid.cell_area() / (2.0 * std::numbers::pi * h);
  const int mw = pgrid.w_points;

  auto run_block = [&](int b) {
    auto& ar = part_r[b];
    auto& ai = part_i[b];
    ar.assign(nn, 0.0);
    ai.assign(nn, 0.0);
    const int r0 = static_cast<int>(static_cast<long long>(rows) * b / n_blocks);
    const int r1 = static_cast<int>(static_cast<long long>(rows) * (b + 1) / n_blocks);
    std::vector<std::complex<double>> vrow(static_cast<std::size_t>(n_b) * mw);
    std::vector<double> vr(n_b), vi(n_b), scratch;
    double z[2];
    for (int i = r0; i < r1; ++i) {
      for (int n = 0; n < n_b; ++n)
        plan.row_real(i, std::span<const double>(table.data() + static_cast<std::size_t>(n) * xs.size(), xs.size()),
                      std::span<std::complex<double>>(vrow.data() + static_cast<std::size_t>(n) * mw, mw), scratch);
      z[0] = pgrid.x_node(i);
      for (int k = 0; k < mw; ++k) {
        z[1] = pgrid.w_node(k);
        const double w = a(z, h) * scale;
        if (w == 0.0) continue;
        for (int n = 0; n < n_b; ++n) {
          vr[n] = vrow[static_cast<std::size_t>(n) * mw + k].real();
          vi[n] = vrow[static_cast<std::size_t>(n) * mw + k].imag();
        }
        // Row m of the upper triangle: A_{m,n} += w conj(V_m) V_n for n >= m.
        for (int m = 0; m < n_b; ++m) {
          const std::complex<double> alpha = w * std::complex<double>(vr[m], -vi[m]);
          const std::size_t off = static_cast<std::size_t>(m) * n_b + m;
          const std::size_t len = n_b - m;
          simd::caxpy(alpha, std::span<const double>(vr.data() + m, len), std::span<const double>(vi.data() + m, len),
                      std::span<double>(ar.data() + off, len), std::span<double>(ai.data() + off, len));
        }
      }
    }
  };

  const int n_workers = std::clamp(workers, 1, n_blocks);
  if (n_workers == 1) {
    for (int b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(n_workers);
    for (int t = 0; t < n_workers; ++t)
      pool.emplace_back([&, t] {
        try {
          for (int b = t; b < n_blocks; b += n_workers) run_block(b);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_b, n_b);
  for (int b = 0; b < n_blocks; ++b)
    for (int r = 0; r < n_b; ++r)
      for (int c = r; c < n_b; ++c) {
        const std::size_t idx = static_cast<std::size_t>(r) * n_b + c;
        m(r, c) += std::complex<double>(part_r[b][idx], part_i[b][idx]);
      }
  for (int r = 0; r < n_b; ++r)
    for (int c = 0; c < r; ++c) m(r, c) = std::conj(m(c, r));
  HermiteOperator op(std::move(m), h, AssemblyRoute::quadrature, a.id());
  op.set_grid_certificate(certified, grid);
  return op;
}

// ------------------------------------------------------------ polynomial route

HermiteOperator assemble_polynomial(const Symbol& a, double h, int n_b) {
  if (n_b < 1) throw ValidationError("basis size must be at least 1");
  if (!(h > 0.0)) throw ValidationError("h must be positive");
  if (a.dim() != 1) throw UnsupportedDimension("polynomial route is implemented for d = 1 only");
  if (a.h_dependent()) throw ValidationError("polynomial route needs an h-independent symbol");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_b, n_b);
  if (a.kind() == SymbolKind::constant) {
    m.diagonal().setConstant(a.constant_value());
    return HermiteOperator(std::move(m), h, AssemblyRoute::polynomial, a.id());
  }
  if (a.kind() != SymbolKind::polynomial) throw ValidationError("polynomial route needs a polynomial symbol");
  // a^alpha (a+)^beta e_n = (2h)^{(alpha+beta)/2} sqrt((n+1)..(n+beta)) sqrt((n+beta)..(n+beta-alpha+1)) e_{n+beta-alpha}.
  // Every intermediate index stays below n + beta, so no truncation enters.
  const double s2h = std::sqrt(2.0 * h);
  for (const auto& t : a.z_terms()) {
    const int alpha = t.alpha[0], beta = t.beta[0];
    const double lift = std::pow(s2h, alpha + beta);
    for (int n = 0; n < n_b; ++n) {
      const int target = n + beta - alpha;
      if (target < 0 || target >= n_b) continue;
      double f = lift;
      for (int k = 1; k <= beta; ++k) f *= std::sqrt(static_cast<double>(n + k));
      for (int k = 0; k < alpha; ++k) f *= std::sqrt(static_cast<double>(n + beta - k));
      m(target, n) += t.coeff * f;
    }
  }
  return HermiteOperator(std::move(m), h, AssemblyRoute::polynomial, a.id());
}

// ------------------------------------------------------------ radial route

HermiteOperator assemble_radial(const Symbol& a, double h, int n_b, RadialQuadrature rq) {
  if (n_b < 1) throw ValidationError("basis size must be at least 1");
  if (!(h > 0.0)) throw ValidationError("h must be positive");
  if (a.dim() != 1) throw UnsupportedDimension("radial route is implemented for d = 1 only");
  const auto profile = a.radial_profile();
  if (!profile) throw ValidationError("radial route needs a radial symbol");
  const auto& g = *profile;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_b, n_b);
  boost::math::quadrature::tanh_sinh<double> integrator;
  for (int n = 0; n < n_b; ++n) {
    const double lg = std::lgamma(n + 1.0);
    const double spread = rq.sigmas * (std::sqrt(n + 1.0) + 1.0);
    const double lo = std::max(0.0, n - spread);
    const double hi = n + spread;
    auto density = [n, lg](double rho) { return n == 0 ? std::exp(-rho) : std::exp(n * std::log(rho) - rho - lg); };
    // The two-argument form receives the exact distance to the nearest
    // endpoint, so singular profiles are never evaluated at rho = 0.
    auto piece = [&](double a0, double b0, double* e, double* l) {
      auto f = [&](double, double rc) {
        const double r = rc < 0.0 ? a0 - rc : b0 - rc;
        return r > 0.0 ? g(2.0 * h * r) * density(r) : 0.0;
      };
      return integrator.integrate(f, a0, b0, rq.tolerance, e, l);
    };
    double err = 0.0, l1 = 0.0;
    double mu;
    // Split at the density peak so each half is a one-sided bump.
    if (n > 0 && lo < n) {
      double e1 = 0.0, e2 = 0.0, l1a = 0.0, l1b = 0.0;
      mu = piece(lo, static_cast<double>(n), &e1, &l1a) + piece(static_cast<double>(n), hi, &e2, &l1b);
      err = e1 + e2;
      l1 = l1a + l1b;
    } else {
      mu = piece(lo, hi, &err, &l1);
    }
    if (!std::isfinite(mu) || err > 1e-6 * std::max(l1, 1e-300))
      throw NumericError("radial quadrature did not converge for mode " + std::to_string(n) +
                         " (error estimate " + std::to_string(err) + ")");
    m(n, n) = mu;
  }
  return HermiteOperator(std::move(m), h, AssemblyRoute::radial, a.id());
}

// ------------------------------------------------------------ dispatch

AssemblyRoute preferred_route(const Symbol& a, const CoherentFrame& frame) noexcept {
  if (!frame.is_gaussian() || a.dim() != 1 || a.h_dependent()) return AssemblyRoute::quadrature;
  if (a.kind() == SymbolKind::constant || a.kind() == SymbolKind::polynomial) return AssemblyRoute::polynomial;
  if (a.radial_profile()) return AssemblyRoute::radial;
  return AssemblyRoute::quadrature;
}

HermiteOperator assemble(const Symbol& a, const CoherentFrame& frame, int n_b, int workers) {
  switch (preferred_route(a, frame)) {
    case AssemblyRoute::polynomial:
      return assemble_polynomial(a, frame.h(), n_b);
    case AssemblyRoute::radial:
      return assemble_radial(a, frame.h(), n_b);
    case AssemblyRoute::quadrature:
      break;
  }
  return assemble_quadrature(a, frame, n_b, quadrature_grid(frame, n_b), workers);
}

}  // namespace antiwick
