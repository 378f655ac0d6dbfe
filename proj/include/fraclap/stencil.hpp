#pragma once

// Dimensionless quadrature weights for the singular integral on the unit
// lattice. With spacing h the operator is
//   C h^{-2s} [ T u_i - sum_{j != i} W(j-i) u_j - kappa (L u)_i ]
// where L is the unit 3-point (1D) or 5-point (2D) Laplacian. W(d) integrates
// the piecewise-linear (bilinear) hat at offset d against |xi|^{-N-2s} over all
// cells outside the near square [-1,1]^N, T is the exact kernel mass outside
// that square, and kappa makes the whole rule exact for quadratics.

#include <memory>
#include <vector>

namespace fraclap {

struct StencilTable {
  int dim = 1;
  double s = 0.5;
  /// Offsets |d_a| <= extent - 1 are tabulated.
  int extent = 0;
  double total = 0.0;
  double kappa = 0.0;
  /// kappa before the clamp that keeps nearest-neighbour couplings <= 0.
  double kappa_unclamped = 0.0;
  /// Row dk (|offset| along axis 1) holds W(d, dk) for d = -(extent-1)..extent-1;
  /// the entry for d sits at index extent-1+d. 1D tables have one row.
  std::vector<double> table;

  std::size_t row_length() const { return 2 * static_cast<std::size_t>(extent) - 1; }
  const double* row(int dk) const { return table.data() + static_cast<std::size_t>(dk) * row_length(); }
  /// Pointer p with p[d] = W(d, dk) for |d| < extent.
  const double* centered_row(int dk) const { return row(dk) + (extent - 1); }
  double weight(int d1, int d2 = 0) const;
  double nearest() const { return weight(1, 0); }
};

/// Cached; thread-safe.
std::shared_ptr<const StencilTable> stencil_table(int dim, double s, int extent);

/// Kernel mass outside the near square, exact.
double far_mass(int dim, double s);

/// Integral of |xi|^{-N-2s} times the interpolation-error weight, used by the
/// quadratic-exactness condition; exposed for tests.
double near_coefficient_unclamped(int dim, double s);

}  // namespace fraclap
