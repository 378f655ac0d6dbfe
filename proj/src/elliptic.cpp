#include "fraclap/elliptic.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fraclap/error.hpp"

namespace fraclap {

DirichletSolver::DirichletSolver(const OperatorMatrix& a) : grid_(a.grid()), order_(a.order()), llt_(a.matrix()) {
  if (llt_.info() != Eigen::Success)
    fail(ErrorKind::SingularMatrix, "operator matrix is not positive definite");
}

std::vector<double> DirichletSolver::solve(std::span<const double> rhs) const {
  require(rhs.size() == order_, ErrorKind::LengthMismatch, "right-hand side length does not match omega");
  Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  Eigen::VectorXd x = llt_.solve(b);
  return {x.data(), x.data() + x.size()};
}

GridFunction DirichletSolver::solve(const GridFunction& f) const {
  require(f.grid == grid_, ErrorKind::InvalidArgument, "source lives on a different grid");
  const std::vector<double> rhs = restrict_to_omega(f);
  return extend_by_zero(solve(std::span<const double>(rhs)), f.grid);
}

GridFunction solve_dirichlet(const GridFunction& f, const FractionalParams& params, std::size_t budget_bytes) {
  const OperatorMatrix a = OperatorMatrix::assemble(f.grid, params, budget_bytes);
  return DirichletSolver(a).solve(f);
}

double residual_check(const GridFunction& u, const GridFunction& f, const FractionalParams& params) {
  require(u.grid == f.grid, ErrorKind::InvalidArgument, "u and f live on different grids");
  const GridFunction au = apply_fractional_laplacian(u, params);
  double worst = 0.0;
  for (std::size_t node : u.grid->omega_nodes()) worst = std::max(worst, std::abs(au.values[node] - f.values[node]));
  return worst;
}

GridFunction make_profile(const GridPtr& grid, const std::string& name, const std::map<std::string, double>& options) {
  auto opt = [&](const std::string& key, double fallback) {
    auto it = options.find(key);
    return it == options.end() ? fallback : it->second;
  };
  const double value = opt("value", 1.0);
  const Point c{opt("center", 0.0), opt("center_y", 0.0)};
  auto dist = [&](const Point& x) {
    double r2 = 0.0;
    for (int a = 0; a < grid->dim(); ++a) r2 += (x[a] - c[a]) * (x[a] - c[a]);
    return std::sqrt(r2);
  };
  if (name == "constant") return GridFunction::on_omega(grid, [&](const Point&) { return value; });
  if (name == "jump") {
    const double at = opt("at", 0.0);
    return GridFunction::on_omega(grid, [&](const Point& x) { return x[0] > at ? value : 0.0; });
  }
  if (name == "power") {
    const double alpha = opt("alpha", 1.0);
    return GridFunction::on_omega(grid, [&](const Point& x) { return value * std::pow(dist(x), alpha); });
  }
  if (name == "bump") {
    const double r = opt("radius", 0.5);
    const double k = opt("power", 5.0);
    return GridFunction::on_omega(grid, [&](const Point& x) {
      const double t = 1.0 - dist(x) * dist(x) / (r * r);
      return t > 0.0 ? value * std::pow(t, k) : 0.0;
    });
  }
  fail(ErrorKind::InvalidArgument, "unknown profile '" + name + "' (constant, jump, power, bump)");
}

GridFunction load_profile_csv(const GridPtr& grid, const std::filesystem::path& path) {
  std::ifstream is(path);
  require(static_cast<bool>(is), ErrorKind::Io, "cannot open " + path.string());
  std::string line;
  std::getline(is, line);
  int columns = 1;
  for (char ch : line) columns += ch == ',';
  std::vector<double> values;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    int col = 0;
    while (std::getline(ss, cell, ',')) {
      if (++col == columns) {
        try {
          values.push_back(std::stod(cell));
        } catch (const std::exception&) {
          fail(ErrorKind::Parse, path.string() + ":" + std::to_string(lineno) + ": bad value '" + cell + "'");
        }
      }
    }
    require(col == columns, ErrorKind::Parse, path.string() + ":" + std::to_string(lineno) + ": wrong column count");
  }
  return extend_by_zero(values, grid);
}

}  // namespace fraclap
