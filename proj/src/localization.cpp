#include "fraclap/localization.hpp"

#include <cmath>

#include "fraclap/error.hpp"
#include "fraclap/parallel.hpp"
#include "fraclap/simd/kernels.hpp"
#include "fraclap/spaces.hpp"

namespace fraclap {
namespace {

double central(const Grid& grid, const double* v, int i, int j, int axis) {
  const int n = grid.n();
  const int c = axis == 0 ? i : j;
  auto at = [&](int shift) {
    const int ii = axis == 0 ? i + shift : i;
    const int jj = axis == 0 ? j : j + shift;
    return (c + shift < 0 || c + shift >= n) ? 0.0 : v[grid.index(ii, jj)];
  };
  return 0.5 * (at(1) - at(-1));
}

}  // namespace

GridFunction remainder_is(const GridFunction& u, const GridFunction& eta, const FractionalParams& params) {
  require(u.grid == eta.grid, ErrorKind::InvalidArgument, "u and eta live on different grids");
  const Grid& grid = *u.grid;
  require(params.dim == grid.dim(), ErrorKind::InvalidArgument, "operator dimension does not match the grid");
  const auto st = stencil_for(grid, params.s);
  const double scale = params.constant * std::pow(grid.h(), -2.0 * params.s);
  const std::vector<Run> runs = grid.full_runs();
  const int n = grid.n();
  const double* uv = u.values.data();
  const double* ev = eta.values.data();

  GridFunction out = GridFunction::zeros(u.grid, false);
  parallel_for(grid.node_count(), [&](std::size_t node) {
    const int i1 = static_cast<int>(node % n);
    const int i2 = static_cast<int>(node / n);
    double cross = 0.0;
    double mass = 0.0;
    for (const Run& run : runs) {
      const double* w = st->centered_row(std::abs(run.row - i2)) + (run.begin - i1);
      const std::size_t start = grid.index(run.begin, run.row);
      const auto len = static_cast<std::size_t>(run.end - run.begin);
      cross += simd::weighted_cross_diff(uv[node], uv + start, ev[node], ev + start, w, len);
      mass += simd::sum(w, len);
    }
    // Beyond the box both u and eta vanish, so the double difference is u(x) eta(x).
    const double far = cross + (st->total - mass) * uv[node] * ev[node];
    double near = 0.0;
    for (int axis = 0; axis < grid.dim(); ++axis)
      near += central(grid, uv, i1, i2, axis) * central(grid, ev, i1, i2, axis);
    out.values[node] = scale * (far + 2.0 * st->kappa * near);
  });
  return out;
}

double product_rule_residual(const GridFunction& u, const GridFunction& eta, const FractionalParams& params) {
  const GridFunction prod = multiply(u, eta);
  const GridFunction a_prod = apply_fractional_laplacian(prod, params);
  const GridFunction a_u = apply_fractional_laplacian(u, params);
  const GridFunction a_eta = apply_fractional_laplacian(eta, params);
  const GridFunction is = remainder_is(u, eta, params);
  double worst = 0.0;
  for (std::size_t k = 0; k < prod.size(); ++k) {
    const double r = a_prod.values[k] - eta.values[k] * a_u.values[k] - u.values[k] * a_eta.values[k] + is.values[k];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

LocalizedRhs localized_rhs(const GridFunction& u, const GridFunction& eta, const GridFunction& f,
                           const FractionalParams& params) {
  require(u.grid == f.grid && u.grid == eta.grid, ErrorKind::InvalidArgument, "inputs live on different grids");
  const GridFunction a_eta = apply_fractional_laplacian(eta, params);
  const GridFunction is = remainder_is(u, eta, params);
  const GridFunction a_prod = apply_fractional_laplacian(multiply(u, eta), params);
  const GridFunction a_u = apply_fractional_laplacian(u, params);

  LocalizedRhs out;
  out.rhs = GridFunction::zeros(u.grid, false);
  double identity = 0.0;
  double equation = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double fk = u.grid->in_omega(k) ? f.values[k] : 0.0;
    out.rhs.values[k] = eta.values[k] * fk + u.values[k] * a_eta.values[k] - is.values[k];
    out.mismatch = std::max(out.mismatch, std::abs(a_prod.values[k] - out.rhs.values[k]));
    identity = std::max(identity, std::abs(a_prod.values[k] - eta.values[k] * a_u.values[k] -
                                           u.values[k] * a_eta.values[k] + is.values[k]));
    equation = std::max(equation, std::abs(eta.values[k] * (a_u.values[k] - fk)));
  }
  out.bound = identity + equation;
  // Allow for rounding in the two different evaluation orders.
  out.within_bound = out.mismatch <= out.bound * (1.0 + 1e-9) + 1e-12;
  return out;
}

Region midpoint_dilation(const Region& outer, const Region& omega2) {
  const double gap = separation(outer, omega2);
  require(gap > 0.0, ErrorKind::InvalidNesting, "outer region must be compactly inside omega2");
  return outer.dilated(0.5 * gap);
}

GBoundReport g_bound_monitor(const GridFunction& u, const GridFunction& eta, const CutoffSpec& spec,
                             const FractionalParams& params, const Region& omega2, double p) {
  const Grid& grid = *u.grid;
  require(separation(omega2, grid.omega()) > 0.0, ErrorKind::InvalidNesting, "omega2 must lie inside the domain");
  GBoundReport rep;
  rep.omega1 = midpoint_dilation(spec.outer, omega2);

  const GridFunction a_eta = apply_fractional_laplacian(eta, params);
  const GridFunction is = remainder_is(u, eta, params);
  GridFunction g = GridFunction::zeros(u.grid, false);
  for (std::size_t k = 0; k < g.size(); ++k) g.values[k] = u.values[k] * a_eta.values[k] - is.values[k];

  rep.g_norm = lp_norm(g, p);
  const double lp2 = std::pow(lp_norm(u, p, omega2), p);
  rep.sobolev_norm_omega2 = std::pow(lp2 + sobolev_power(u, params.s, p, omega2), 1.0 / p);
  rep.lp_norm_omega = lp_norm(u, p, grid.omega());
  const double denom = rep.sobolev_norm_omega2 + rep.lp_norm_omega;
  rep.ratio = denom > 0.0 ? rep.g_norm / denom : 0.0;
  return rep;
}

}  // namespace fraclap
