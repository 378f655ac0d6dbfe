#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "fraclap/grid.hpp"
#include "fraclap/stencil.hpp"

namespace fraclap {

struct FractionalParams {
  int dim = 1;
  double s = 0.5;
  double constant = 0.0;

  /// Validates s in (0,1) and caches C_{N,s}.
  static FractionalParams make(int dim, double s);
};

/// Stencil for a grid: the table extent covers every offset within the box.
std::shared_ptr<const StencilTable> stencil_for(const Grid& grid, double s);

/// (-Delta)^s u at every box node. Dirichlet-extended inputs sum over omega
/// only; other inputs over the whole box (zero beyond it).
GridFunction apply_fractional_laplacian(const GridFunction& u, const FractionalParams& params);
/// Same value at a single node.
double apply_at(const GridFunction& u, const FractionalParams& params, std::size_t node);

/// Default dense-storage cap for the operator matrix, in bytes.
inline constexpr std::size_t kDefaultMatrixBudget = std::size_t{1} << 30;

/// Dense Dirichlet-restricted operator, indexed by omega nodes.
class OperatorMatrix {
 public:
  static OperatorMatrix assemble(const GridPtr& grid, const FractionalParams& params,
                                 std::size_t budget_bytes = kDefaultMatrixBudget);

  const Eigen::MatrixXd& matrix() const { return a_; }
  std::size_t order() const { return static_cast<std::size_t>(a_.rows()); }
  double h() const { return h_; }
  const FractionalParams& params() const { return params_; }
  const GridPtr& grid() const { return grid_; }
  double operator()(std::size_t row, std::size_t col) const { return a_(row, col); }

  /// y = A x on omega vectors.
  std::vector<double> multiply(std::span<const double> x) const;

  /// Header: int32 N, float64 s, int32 n (nodes per axis), float64 h,
  /// int64 order; then order*order float64, row-major, little-endian.
  void save(const std::filesystem::path& path) const;
  /// Loads a dump made for the same grid and exponent (checked).
  static OperatorMatrix load(const std::filesystem::path& path, const GridPtr& grid);

 private:
  Eigen::MatrixXd a_;
  double h_ = 0.0;
  FractionalParams params_;
  GridPtr grid_;
};

}  // namespace fraclap
