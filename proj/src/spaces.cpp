#include "fraclap/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fraclap/csv.hpp"
#include "fraclap/error.hpp"
#include "fraclap/parallel.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/simd/kernels.hpp"

namespace fraclap {
namespace {

struct Span {
  int begin;
  int end;
};

using RowRuns = std::vector<std::vector<Span>>;

RowRuns by_row(const Grid& grid, const std::vector<Run>& runs) {
  RowRuns rows(static_cast<std::size_t>(grid.rows()));
  for (const Run& r : runs) rows[static_cast<std::size_t>(r.row)].push_back({r.begin, r.end});
  return rows;
}

std::vector<Run> region_runs(const Grid& grid, const std::optional<Region>& region) {
  return region ? grid.runs(*region) : grid.full_runs();
}

double pow_abs(double x, double p) {
  x = std::abs(x);
  if (p == 2.0) return x * x;
  if (p == 1.0) return x;
  return std::pow(x, p);
}

double lp_power_runs(const Grid& grid, const double* u, const std::vector<Run>& runs, double p) {
  double acc = 0.0;
  for (const Run& r : runs)
    for (int i = r.begin; i < r.end; ++i) acc += pow_abs(u[grid.index(i, r.row)], p);
  return acc * grid.cell_volume();
}

// Sum over ordered pairs x != y, both in the runs, of |u(x)-u(y)|^p |x-y|^{-N-sigma p} h^{2N}.
double gagliardo_power_runs(const Grid& grid, const double* u, const std::vector<Run>& runs, double sigma, double p) {
  if (runs.empty()) return 0.0;
  const RowRuns rows = by_row(grid, runs);
  int lo0 = grid.n(), hi0 = 0, lo1 = grid.rows(), hi1 = 0;
  for (const Run& r : runs) {
    lo0 = std::min(lo0, r.begin);
    hi0 = std::max(hi0, r.end);
    lo1 = std::min(lo1, r.row);
    hi1 = std::max(hi1, r.row + 1);
  }
  const int span0 = hi0 - lo0;
  const int span1 = hi1 - lo1;

  struct Shift {
    int k1, k2;
  };
  std::vector<Shift> shifts;
  for (int k2 = 0; k2 < span1; ++k2)
    for (int k1 = -(span0 - 1); k1 < span0; ++k1)
      if (k2 > 0 || k1 > 0) shifts.push_back({k1, k2});

  const int dim = grid.dim();
  const double h = grid.h();
  std::vector<double> partial(shifts.size(), 0.0);
  parallel_for(shifts.size(), [&](std::size_t idx) {
    const auto [k1, k2] = shifts[idx];
    double acc = 0.0;
    for (int r = lo1; r + k2 < hi1; ++r) {
      for (const Span& a : rows[static_cast<std::size_t>(r)])
        for (const Span& b : rows[static_cast<std::size_t>(r + k2)]) {
          const int begin = std::max(a.begin, b.begin - k1);
          const int end = std::min(a.end, b.end - k1);
          if (end <= begin) continue;
          acc += simd::diff_pow(u + grid.index(begin + k1, r + k2), u + grid.index(begin, r),
                                static_cast<std::size_t>(end - begin), p);
        }
    }
    const double dist = h * std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
    partial[idx] = acc * std::pow(dist, -dim - sigma * p);
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return 2.0 * total * grid.cell_volume() * grid.cell_volume();
}

// Forward difference quotient along an axis, with the runs on which it is defined.
struct Derivative {
  std::vector<double> values;
  std::vector<Run> runs;
};

Derivative forward_difference(const Grid& grid, const double* u, const std::vector<Run>& runs, int axis) {
  Derivative d;
  d.values.assign(grid.node_count(), 0.0);
  const double inv_h = 1.0 / grid.h();
  if (axis == 0) {
    for (const Run& r : runs)
      if (r.end - 1 > r.begin) d.runs.push_back({r.row, r.begin, r.end - 1});
  } else {
    const RowRuns rows = by_row(grid, runs);
    for (int j = 0; j + 1 < grid.rows(); ++j)
      for (const Span& a : rows[static_cast<std::size_t>(j)])
        for (const Span& b : rows[static_cast<std::size_t>(j + 1)]) {
          const int begin = std::max(a.begin, b.begin);
          const int end = std::min(a.end, b.end);
          if (end > begin) d.runs.push_back({j, begin, end});
        }
  }
  const std::size_t step = axis == 0 ? 1 : static_cast<std::size_t>(grid.n());
  for (const Run& r : d.runs)
    for (int i = r.begin; i < r.end; ++i) {
      const std::size_t node = grid.index(i, r.row);
      d.values[node] = (u[node + step] - u[node]) * inv_h;
    }
  return d;
}

bool is_one(double sigma) { return std::abs(sigma - 1.0) < 1e-12; }

void check_index(double p, const char* what) {
  require(p >= 1.0, ErrorKind::Domain, std::string(what) + " must be >= 1");
}

// int over |y|_inf > R of |y|^{-N-a} dy
double tail_integral(int dim, double radius, double a) {
  if (dim == 1) return 2.0 * std::pow(radius, -a) / a;
  const double angular =
      integrate([a](double t) { return std::pow(std::cos(t), a); }, 0.0, std::numbers::pi / 4, 40);
  return std::pow(radius, -a) * 8.0 / a * angular;
}

}  // namespace

double lp_norm(const GridFunction& u, double p, const std::optional<Region>& region) {
  const Grid& grid = *u.grid;
  const std::vector<Run> runs = region_runs(grid, region);
  if (std::isinf(p)) {
    double m = 0.0;
    for (const Run& r : runs)
      for (int i = r.begin; i < r.end; ++i) m = std::max(m, std::abs(u.values[grid.index(i, r.row)]));
    return m;
  }
  check_index(p, "p");
  return std::pow(lp_power_runs(grid, u.values.data(), runs, p), 1.0 / p);
}

double gagliardo_seminorm(const GridFunction& u, double sigma, double p, const std::optional<Region>& region) {
  require(sigma > 0.0 && sigma < 1.0, ErrorKind::Domain, "Gagliardo order must lie in (0,1)");
  check_index(p, "p");
  const Grid& grid = *u.grid;
  const double power = gagliardo_power_runs(grid, u.values.data(), region_runs(grid, region), sigma, p);
  return std::pow(power, 1.0 / p);
}

double sobolev_power(const GridFunction& u, double sigma, double p, const std::optional<Region>& region) {
  require(sigma > 0.0 && sigma < 2.0, ErrorKind::Domain, "Sobolev order must lie in (0,2)");
  check_index(p, "p");
  const Grid& grid = *u.grid;
  const std::vector<Run> runs = region_runs(grid, region);
  if (sigma < 1.0 && !is_one(sigma)) return gagliardo_power_runs(grid, u.values.data(), runs, sigma, p);
  double total = 0.0;
  for (int axis = 0; axis < grid.dim(); ++axis) {
    const Derivative d = forward_difference(grid, u.values.data(), runs, axis);
    total += lp_power_runs(grid, d.values.data(), d.runs, p);
    if (!is_one(sigma)) total += gagliardo_power_runs(grid, d.values.data(), d.runs, sigma - 1.0, p);
  }
  return total;
}

double sobolev_seminorm(const GridFunction& u, double sigma, double p, const std::optional<Region>& region) {
  return std::pow(sobolev_power(u, sigma, p, region), 1.0 / p);
}

double besov_seminorm(const GridFunction& u, double sigma, double p, double q) {
  require(sigma > 0.0 && sigma < 2.0 && !is_one(sigma), ErrorKind::Domain, "Besov order must lie in (0,1) or (1,2)");
  check_index(p, "p");
  require(q >= 1.0, ErrorKind::Domain, "q must be >= 1");
  require(!std::isinf(p), ErrorKind::Domain, "Besov estimator needs finite p");
  const Grid& grid = *u.grid;
  const int n = grid.n();
  const int dim = grid.dim();
  const bool second = sigma > 1.0;

  // Zero padding of 2n on each side keeps every shifted copy in range.
  const int pn = 5 * n;
  const int prow = dim == 1 ? 1 : pn;
  std::vector<double> pad(static_cast<std::size_t>(pn) * prow, 0.0);
  auto pidx = [pn](int i, int j) { return static_cast<std::size_t>(i) + static_cast<std::size_t>(pn) * j; };
  for (int j = 0; j < grid.rows(); ++j)
    for (int i = 0; i < n; ++i) pad[pidx(i + 2 * n, dim == 1 ? 0 : j + 2 * n)] = u.values[grid.index(i, j)];

  struct Shift {
    int k1, k2;
  };
  std::vector<Shift> shifts;
  for (int k2 = 0; k2 < (dim == 1 ? 1 : n); ++k2)
    for (int k1 = -(n - 1); k1 < n; ++k1)
      if (k2 > 0 || k1 > 0) shifts.push_back({k1, k2});

  const double h = grid.h();
  const double vol = grid.cell_volume();
  // Range of base points t whose difference stencil can touch the support.
  auto range = [&](int k, int& begin, int& end) {
    const int reach = second ? 2 : 1;
    begin = 2 * n - reach * std::max(k, 0);
    end = 3 * n - reach * std::min(k, 0);
  };
  std::vector<double> terms(shifts.size(), 0.0);
  parallel_for(shifts.size(), [&](std::size_t idx) {
    const auto [k1, k2] = shifts[idx];
    int b1, e1, b2 = 0, e2 = 1;
    range(k1, b1, e1);
    if (dim == 2) range(k2, b2, e2);
    const std::size_t len = static_cast<std::size_t>(e1 - b1);
    double acc = 0.0;
    for (int t2 = b2; t2 < e2; ++t2) {
      const double* base = pad.data() + pidx(b1, t2);
      const double* one = pad.data() + pidx(b1 + k1, t2 + k2);
      if (second) {
        const double* two = pad.data() + pidx(b1 + 2 * k1, t2 + 2 * k2);
        acc += simd::second_diff_pow(two, one, base, len, p);
      } else {
        acc += simd::diff_pow(one, base, len, p);
      }
    }
    const double norm = std::pow(acc * vol, 1.0 / p);
    const double dist = h * std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
    terms[idx] = std::isinf(q) ? norm * std::pow(dist, -sigma) : std::pow(norm, q) * std::pow(dist, -dim - q * sigma);
  });

  const double unorm = lp_norm(u, p);
  const double factor = second ? std::pow(2.0 + std::pow(2.0, p), 1.0 / p) : std::pow(2.0, 1.0 / p);
  const double radius = (n - 0.5) * h;
  if (std::isinf(q)) {
    double sup = factor * unorm * std::pow(radius, -sigma);
    for (double v : terms) sup = std::max(sup, v);
    return sup;
  }
  double sum = 0.0;
  for (double v : terms) sum += v;
  sum = 2.0 * sum * vol + std::pow(factor * unorm, q) * tail_integral(dim, radius, q * sigma);
  return std::pow(sum, 1.0 / q);
}

double potential_norm(const GridFunction& u, const FractionalParams& params, double p) {
  return lp_norm(u, p) + lp_norm(apply_fractional_laplacian(u, params), p);
}

std::string NormReport::csv_header() { return "region,sigma,p,q,h,seminorm,norm"; }

std::string NormReport::csv_row() const {
  return region + "," + csv::num(sigma) + "," + csv::num(p) + "," + csv::num(q) + "," + csv::num(h) + "," +
         csv::num(seminorm) + "," + csv::num(norm);
}

NormReport sobolev_report(const GridFunction& u, double sigma, double p, const std::optional<Region>& region) {
  NormReport r;
  r.region = region ? region->describe() : "box";
  r.sigma = sigma;
  r.p = p;
  r.q = p;
  r.h = u.grid->h();
  const double semi = sobolev_power(u, sigma, p, region);
  const double lp = std::pow(lp_norm(u, p, region), p);
  r.seminorm = std::pow(semi, 1.0 / p);
  r.norm = std::pow(lp + semi, 1.0 / p);
  return r;
}

NormReport besov_report(const GridFunction& u, double sigma, double p, double q) {
  NormReport r;
  r.region = "box";
  r.sigma = sigma;
  r.p = p;
  r.q = q;
  r.h = u.grid->h();
  r.seminorm = besov_seminorm(u, sigma, p, q);
  r.norm = lp_norm(u, p) + r.seminorm;
  return r;
}

}  // namespace fraclap
