#pragma once

#include <Eigen/Cholesky>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fraclap/grid.hpp"
#include "fraclap/operator.hpp"

namespace fraclap {

/// Cholesky factorization of the Dirichlet operator, reusable across right-hand sides.
class DirichletSolver {
 public:
  explicit DirichletSolver(const OperatorMatrix& a);

  std::vector<double> solve(std::span<const double> rhs) const;
  /// Takes f on the grid (values off omega ignored), returns u extended by zero.
  GridFunction solve(const GridFunction& f) const;
  std::size_t order() const { return order_; }

 private:
  // Only what solve() needs, so the solver may outlive the matrix.
  GridPtr grid_;
  std::size_t order_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

GridFunction solve_dirichlet(const GridFunction& f, const FractionalParams& params,
                             std::size_t budget_bytes = kDefaultMatrixBudget);

/// max over omega nodes of |(-Delta)^s u - f|.
double residual_check(const GridFunction& u, const GridFunction& f, const FractionalParams& params);

/// Named analytic right-hand sides on omega (zero elsewhere).
///   constant: value
///   jump:     value where x_0 > at, 0 otherwise
///   power:    value * |x - center|^alpha
///   bump:     value * (1 - |x - center|^2 / radius^2)_+^power
GridFunction make_profile(const GridPtr& grid, const std::string& name,
                          const std::map<std::string, double>& options = {});

/// CSV with header "value" or "x,value" / "x,y,value", one row per omega node
/// in node order.
GridFunction load_profile_csv(const GridPtr& grid, const std::filesystem::path& path);

}  // namespace fraclap
