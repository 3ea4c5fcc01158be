#pragma once

// Shared inner machinery for V f at phase-grid nodes. For a fixed x node the
// window restricts the y-sum to a slice; the modulation e^{i w y / h} is
// tabulated once per w node over the union of slices.

#include <complex>
#include <span>
#include <vector>

#include "antiwick/coherent.hpp"

namespace antiwick::detail {

class TransformPlan {
 public:
  TransformPlan(const CoherentFrame& frame, const PhaseGrid& pgrid, const SpatialGrid& grid);

  /// Fills out[k] = V f(x_i, w_k) for samples f = fr + i fi on the spatial grid.
  void row(int i, std::span<const double> fr, std::span<const double> fi, std::span<std::complex<double>> out,
           std::vector<double>& scratch) const;
  /// Same for a real sample vector.
  void row_real(int i, std::span<const double> f, std::span<std::complex<double>> out,
                std::vector<double>& scratch) const;

  const PhaseGrid& pgrid() const noexcept { return pgrid_; }
  const SpatialGrid& grid() const noexcept { return grid_; }

 private:
  struct Slice {
    int j0 = 0;
    int j1 = 0;
    std::vector<double> weights;  // h^{-1/4} phi((y - x)/sqrt h) * delta
  };
  PhaseGrid pgrid_;
  SpatialGrid grid_;
  std::vector<Slice> slices_;
  int jlo_ = 0;
  int jhi_ = 0;
  std::vector<double> cos_;  // [k * (jhi - jlo) + (j - jlo)]
  std::vector<double> sin_;
};

}  // namespace antiwick::detail
