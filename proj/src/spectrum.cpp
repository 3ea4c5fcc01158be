#include "antiwick/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "antiwick/errors.hpp"

namespace antiwick {

namespace {

template <class Matrix>
SpectrumResult solve(const Matrix& A, int k) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(A);
  if (es.info() != Eigen::Success) throw NumericError("symmetric eigensolver did not converge");
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  const double norm = std::max(std::abs(vals(0)), std::abs(vals(vals.size() - 1)));
  SpectrumResult r;
  r.n_b = static_cast<int>(A.rows());
  for (int j = 0; j < k; ++j) {
    r.eigenvalues.push_back(vals(j));
    const double res = (A * vecs.col(j) - vals(j) * vecs.col(j)).norm();
    r.residual = std::max(r.residual, norm > 0.0 ? res / norm : res);
  }
  if (r.residual > 1e-8)
    throw NumericError("eigenpair residual " + std::to_string(r.residual) + " exceeds 1e-8 ||A||");
  r.bottom_vector = vecs.col(0).template cast<std::complex<double>>();
  return r;
}

}  // namespace

SpectrumResult spectrum_bottom(const HermiteOperator& op, int k) {
  if (k < 1 || k > op.size()) throw ValidationError("k must lie in [1, N_b]");
  if (op.is_real()) return solve(Eigen::MatrixXd(op.real_part()), k);
  return solve(op.matrix(), k);
}

SpectrumResult converge_bottom(const HermiteOperator& op, const std::vector<int>& ladder) {
  if (ladder.empty()) throw ValidationError("ladder is empty");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (ladder[i] <= ladder[i - 1]) throw ValidationError("ladder must be strictly increasing");
  if (ladder.front() < 1 || ladder.back() > op.size()) throw ValidationError("ladder rung outside the operator size");
  SpectrumResult last;
  std::vector<double> bottoms;
  bool monotone = true;
  for (int n : ladder) {
    last = spectrum_bottom(op.leading_block(n), 1);
    if (!bottoms.empty() && last.bottom() > bottoms.back() + 1e-9) monotone = false;
    bottoms.push_back(last.bottom());
  }
  last.ladder = ladder;
  last.bottoms = bottoms;
  last.monotone = monotone;
  if (bottoms.size() >= 2) {
    last.delta = bottoms.back() - bottoms[bottoms.size() - 2];
    last.converged = std::abs(last.delta) < std::max(1e-8, 1e-4 * std::abs(bottoms.back()));
  }
  return last;
}

SpectrumResult converge_bottom(const Symbol& a, const CoherentFrame& frame, const std::vector<int>& ladder,
                               int workers) {
  if (ladder.empty()) throw ValidationError("ladder is empty");
  const int top = *std::max_element(ladder.begin(), ladder.end());
  return converge_bottom(assemble(a, frame, top, workers), ladder);
}

std::vector<double> eigen_accumulation(const HermiteOperator& op, int k) {
  if (k < 2) throw ValidationError("eigen_accumulation needs k >= 2");
  const auto r = spectrum_bottom(op, k);
  std::vector<double> gaps;
  for (int j = 0; j + 1 < k; ++j) gaps.push_back(r.eigenvalues[j + 1] - r.eigenvalues[j]);
  return gaps;
}

double rayleigh_quotient(const HermiteOperator& op, const Eigen::VectorXcd& f) {
  if (f.size() != op.size()) throw ShapeError("vector length does not match the operator");
  const double n2 = f.squaredNorm();
  if (n2 == 0.0) throw ValidationError("Rayleigh quotient of the zero vector");
  return f.dot(op.matrix() * f).real() / n2;
}

}  // namespace antiwick
