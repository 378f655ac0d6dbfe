#include "fraclap/operator.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>

#include "fraclap/error.hpp"
#include "fraclap/parallel.hpp"
#include "fraclap/simd/kernels.hpp"
#include "fraclap/special.hpp"

namespace fraclap {
namespace {

double scale_of(const Grid& grid, const FractionalParams& params) {
  return params.constant * std::pow(grid.h(), -2.0 * params.s);
}

void check_params(const Grid& grid, const FractionalParams& params) {
  require(params.dim == grid.dim(), ErrorKind::InvalidArgument, "operator dimension does not match the grid");
  require(params.constant > 0.0, ErrorKind::Precondition, "FractionalParams not initialised; use make()");
}

// Unit Laplacian stencil at a node; neighbours beyond the box count as 0.
double unit_laplacian(const Grid& grid, const double* u, std::size_t node) {
  const int n = grid.n();
  const int i = static_cast<int>(node % n);
  const int j = static_cast<int>(node / n);
  double acc = -2.0 * grid.dim() * u[node];
  if (i > 0) acc += u[node - 1];
  if (i + 1 < n) acc += u[node + 1];
  if (grid.dim() == 2) {
    if (j > 0) acc += u[node - n];
    if (j + 1 < n) acc += u[node + n];
  }
  return acc;
}

double evaluate(const Grid& grid, const StencilTable& st, const std::vector<Run>& runs, const double* u,
                std::size_t node) {
  const int n = grid.n();
  const int i1 = static_cast<int>(node % n);
  const int i2 = static_cast<int>(node / n);
  double far = 0.0;
  for (const Run& run : runs) {
    const double* w = st.centered_row(std::abs(run.row - i2)) + (run.begin - i1);
    far += simd::dot(w, u + grid.index(run.begin, run.row), static_cast<std::size_t>(run.end - run.begin));
  }
  return st.total * u[node] - far - st.kappa * unit_laplacian(grid, u, node);
}

}  // namespace

FractionalParams FractionalParams::make(int dim, double s) {
  require(dim == 1 || dim == 2, ErrorKind::InvalidArgument, "dimension must be 1 or 2");
  FractionalParams p;
  p.dim = dim;
  p.s = s;
  p.constant = normalization_constant(dim, s);
  return p;
}

std::shared_ptr<const StencilTable> stencil_for(const Grid& grid, double s) {
  return stencil_table(grid.dim(), s, grid.n());
}

GridFunction apply_fractional_laplacian(const GridFunction& u, const FractionalParams& params) {
  const Grid& grid = *u.grid;
  check_params(grid, params);
  require(u.values.size() == grid.node_count(), ErrorKind::LengthMismatch, "grid function has the wrong size");
  const auto st = stencil_for(grid, params.s);
  const std::vector<Run> full = u.dirichlet ? std::vector<Run>{} : grid.full_runs();
  const std::vector<Run>& runs = u.dirichlet ? grid.omega_runs() : full;
  const double scale = scale_of(grid, params);

  GridFunction out = GridFunction::zeros(u.grid, false);
  parallel_for(grid.node_count(), [&](std::size_t node) {
    out.values[node] = scale * evaluate(grid, *st, runs, u.values.data(), node);
  });
  return out;
}

double apply_at(const GridFunction& u, const FractionalParams& params, std::size_t node) {
  const Grid& grid = *u.grid;
  check_params(grid, params);
  require(node < grid.node_count(), ErrorKind::InvalidArgument, "node index out of range");
  const auto st = stencil_for(grid, params.s);
  const std::vector<Run> runs = u.dirichlet ? grid.omega_runs() : grid.full_runs();
  return scale_of(grid, params) * evaluate(grid, *st, runs, u.values.data(), node);
}

OperatorMatrix OperatorMatrix::assemble(const GridPtr& grid, const FractionalParams& params,
                                        std::size_t budget_bytes) {
  check_params(*grid, params);
  const std::size_t m = grid->omega_count();
  require(m > 0, ErrorKind::Precondition, "omega contains no grid nodes");
  const double bytes = static_cast<double>(m) * static_cast<double>(m) * sizeof(double);
  if (bytes > static_cast<double>(budget_bytes))
    fail(ErrorKind::MemoryBudget, "dense operator needs " + std::to_string(bytes / (1 << 20)) +
                                      " MiB, budget is " + std::to_string(budget_bytes >> 20) + " MiB");

  const auto st = stencil_for(*grid, params.s);
  const double scale = scale_of(*grid, params);
  const int n = grid->n();
  const auto& nodes = grid->omega_nodes();

  OperatorMatrix out;
  out.a_.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  out.h_ = grid->h();
  out.params_ = params;
  out.grid_ = grid;
  parallel_for(m, [&](std::size_t col) {
    const int i1 = static_cast<int>(nodes[col] % n);
    const int i2 = static_cast<int>(nodes[col] / n);
    double* dst = out.a_.col(static_cast<Eigen::Index>(col)).data();
    for (std::size_t row = 0; row < m; ++row) {
      const int d1 = static_cast<int>(nodes[row] % n) - i1;
      const int d2 = static_cast<int>(nodes[row] / n) - i2;
      if (d1 == 0 && d2 == 0) {
        dst[row] = scale * (st->total + 2.0 * grid->dim() * st->kappa);
        continue;
      }
      double w = st->centered_row(std::abs(d2))[d1];
      if (std::abs(d1) + std::abs(d2) == 1) w += st->kappa;
      dst[row] = -scale * w;
    }
  });
  return out;
}

std::vector<double> OperatorMatrix::multiply(std::span<const double> x) const {
  require(x.size() == order(), ErrorKind::LengthMismatch, "vector length does not match the operator order");
  std::vector<double> y(order());
  // The matrix is symmetric, so column k is row k and is contiguous.
  parallel_for(order(), [&](std::size_t k) {
    y[k] = simd::dot(a_.col(static_cast<Eigen::Index>(k)).data(), x.data(), x.size());
  });
  return y;
}

void OperatorMatrix::save(const std::filesystem::path& path) const {
  static_assert(std::endian::native == std::endian::little, "binary dump assumes a little-endian host");
  std::ofstream os(path, std::ios::binary);
  require(static_cast<bool>(os), ErrorKind::Io, "cannot open " + path.string() + " for writing");
  const std::int32_t dim = params_.dim;
  const std::int32_t n = grid_->n();
  const std::int64_t m = static_cast<std::int64_t>(order());
  os.write(reinterpret_cast<const char*>(&dim), sizeof dim);
  os.write(reinterpret_cast<const char*>(&params_.s), sizeof(double));
  os.write(reinterpret_cast<const char*>(&n), sizeof n);
  os.write(reinterpret_cast<const char*>(&h_), sizeof(double));
  os.write(reinterpret_cast<const char*>(&m), sizeof m);
  // Column-major storage of a symmetric matrix is also its row-major layout.
  os.write(reinterpret_cast<const char*>(a_.data()), static_cast<std::streamsize>(m * m * sizeof(double)));
  require(static_cast<bool>(os), ErrorKind::Io, "write failed for " + path.string());
}

OperatorMatrix OperatorMatrix::load(const std::filesystem::path& path, const GridPtr& grid) {
  std::ifstream is(path, std::ios::binary);
  require(static_cast<bool>(is), ErrorKind::Io, "cannot open " + path.string());
  std::int32_t dim = 0, n = 0;
  double s = 0.0, h = 0.0;
  std::int64_t m = 0;
  is.read(reinterpret_cast<char*>(&dim), sizeof dim);
  is.read(reinterpret_cast<char*>(&s), sizeof s);
  is.read(reinterpret_cast<char*>(&n), sizeof n);
  is.read(reinterpret_cast<char*>(&h), sizeof h);
  is.read(reinterpret_cast<char*>(&m), sizeof m);
  require(static_cast<bool>(is), ErrorKind::Io, "truncated operator header in " + path.string());
  require(dim == grid->dim() && n == grid->n() && h == grid->h() &&
              m == static_cast<std::int64_t>(grid->omega_count()),
          ErrorKind::Precondition, "operator dump " + path.string() + " was made for a different grid");
  OperatorMatrix out;
  out.params_ = FractionalParams::make(dim, s);
  out.h_ = h;
  out.grid_ = grid;
  out.a_.resize(m, m);
  is.read(reinterpret_cast<char*>(out.a_.data()), static_cast<std::streamsize>(m * m * sizeof(double)));
  require(static_cast<bool>(is), ErrorKind::Io, "truncated operator data in " + path.string());
  return out;
}

}  // namespace fraclap
