#include <cmath>
#include <random>

#include "doctest.h"
#include "fraclap/elliptic.hpp"
#include "fraclap/error.hpp"
#include "fraclap/localization.hpp"
#include "fraclap/spaces.hpp"
#include "fraclap/stencil.hpp"

using namespace fraclap;

namespace {

GridPtr line(int n) { return Grid::build(1, -2, 2, n, Region::interval(-1, 1)); }

const CutoffSpec kWindow{Region::interval(-0.2, 0.3), Region::interval(-0.5, 0.6), {}, {}, 3};

GridFunction bump(const GridPtr& g) {
  return make_profile(g, "bump", {{"center", 0.1}, {"radius", 0.6}, {"power", 5}});
}

double max_abs(const GridFunction& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("remainder with trivial factors") {
  const auto g = line(129);
  const auto params = FractionalParams::make(1, 0.4);
  const auto eta = build_cutoff(g, kWindow);
  CHECK(max_abs(remainder_is(GridFunction::zeros(g), eta, params)) == 0.0);

  SUBCASE("eta constant on the whole box") {
    // differences vanish inside the box; only the pairs beyond it remain,
    // where eta is zero, giving c * u(x) * C h^{-2s} (T - box mass)
    const double c = 0.7;
    const auto u = bump(g);
    const auto is = remainder_is(u, GridFunction::everywhere(g, [c](const Point&) { return c; }), params);
    const auto st = stencil_for(*g, params.s);
    const double scale = params.constant * std::pow(g->h(), -2.0 * params.s);
    for (int i = 0; i < g->n(); ++i) {
      double mass = 0.0;
      for (int j = 0; j < g->n(); ++j)
        if (j != i) mass += st->weight(j - i);
      const double expected = scale * (st->total - mass) * u[g->index(i)] * c;
      CHECK(is[g->index(i)] == doctest::Approx(expected).epsilon(1e-9).scale(1e-12));
      if (u[g->index(i)] == 0.0) CHECK(std::abs(is[g->index(i)]) <= 1e-12 * max_abs(is) + 1e-300);
    }
  }
}

TEST_CASE("remainder is symmetric and bilinear") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int dim : {1, 2}) {
    const auto g = dim == 1 ? line(65) : Grid::build(2, -2, 2, 25, Region::ball(2, {0, 0}, 1));
    const auto params = FractionalParams::make(dim, 0.55);
    auto rnd = [&] { return GridFunction::on_omega(g, [&](const Point&) { return d(rng); }); };
    for (int trial = 0; trial < 5; ++trial) {
      const auto u = rnd(), v = rnd(), e = rnd(), f = rnd();
      const auto ue = remainder_is(u, e, params);
      const auto eu = remainder_is(e, u, params);
      const double sc = max_abs(ue);
      for (std::size_t k = 0; k < ue.size(); ++k) CHECK(std::abs(ue[k] - eu[k]) <= 1e-12 * sc);

      const auto lin_u = remainder_is(combine(2.0, u, -3.0, v), e, params);
      const auto ve = remainder_is(v, e, params);
      const auto lin_e = remainder_is(u, combine(0.5, e, 4.0, f), params);
      const auto uf = remainder_is(u, f, params);
      for (std::size_t k = 0; k < ue.size(); ++k) {
        CHECK(std::abs(lin_u[k] - (2.0 * ue[k] - 3.0 * ve[k])) <= 1e-12 * 5 * sc);
        CHECK(std::abs(lin_e[k] - (0.5 * ue[k] + 4.0 * uf[k])) <= 1e-12 * 5 * sc);
      }
    }
  }
}

TEST_CASE("remainder decays like the kernel away from the supports") {
  // for x outside supp u and outside omega, I_s(x) = C sum u(y) eta(y) |x-y|^{-N-2s},
  // bounded by C ||u eta||_1 dist^{-N-2s}
  const auto params = FractionalParams::make(1, 0.35);
  const auto g = Grid::build(1, -3, 3, 601, Region::interval(-1.5, 1.5));
  const auto u = make_profile(g, "bump", {{"center", -0.2}, {"radius", 0.3}});
  const auto eta = build_cutoff(g, kWindow);
  const auto is = remainder_is(u, eta, params);
  const double l1 = lp_norm(multiply(u, eta), 1);
  const double bound = params.constant * l1;
  int checked = 0;
  for (std::size_t node = 0; node < g->node_count(); ++node) {
    const double x = g->coord(node)[0];
    const double dist = std::max(-0.5 - x, x - 0.6);  // distance to supp u ∪ omega-window
    if (dist < 0.2) continue;
    CHECK(std::abs(is[node]) * std::pow(dist, 1 + 2 * params.s) <= bound * (1 + 1e-6));
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("product rule residual") {
  const auto params = FractionalParams::make(1, 0.5);
  const auto g0 = line(65);
  CHECK(product_rule_residual(GridFunction::zeros(g0), build_cutoff(g0, kWindow), params) == 0.0);

  SUBCASE("C4 bump: order at least 1.5") {
    for (double s : {0.3, 0.5, 0.7}) {
      const auto ps = FractionalParams::make(1, s);
      std::vector<double> res;
      for (int n : {129, 257, 513}) {
        const auto g = line(n);
        res.push_back(product_rule_residual(bump(g), build_cutoff(g, kWindow), ps));
      }
      CAPTURE(s);
      CHECK(std::log2(res[0] / res[1]) >= 1.5);
      CHECK(std::log2(res[1] / res[2]) >= 1.5);
    }
  }
  SUBCASE("elliptic solution for f = 1") {
    std::vector<double> res;
    for (int n : {257, 513}) {
      const auto g = line(n);
      const auto u = solve_dirichlet(make_profile(g, "constant"), params);
      res.push_back(product_rule_residual(u, build_cutoff(g, kWindow), params));
    }
    CHECK(res[0] / res[1] >= 2.0);
  }
  SUBCASE("2D bump") {
    const auto ps = FractionalParams::make(2, 0.4);
    const CutoffSpec w{Region::ball(2, {0, 0}, 0.2), Region::ball(2, {0, 0}, 0.5), {}, {}, 3};
    std::vector<double> res;
    for (int n : {33, 65, 129}) {
      const auto g = Grid::build(2, -2, 2, n, Region::ball(2, {0, 0}, 1));
      res.push_back(product_rule_residual(bump(g), build_cutoff(g, w), ps));
    }
    CHECK(res[0] / res[1] >= 2.0);
    CHECK(res[1] / res[2] >= 2.0);
  }
}

TEST_CASE("localized right-hand side") {
  const auto params = FractionalParams::make(1, 0.5);
  SUBCASE("zero state") {
    const auto g = line(129);
    const auto r = localized_rhs(GridFunction::zeros(g), build_cutoff(g, kWindow), GridFunction::zeros(g), params);
    CHECK(max_abs(r.rhs) == 0.0);
  }
  SUBCASE("eta = 1 everywhere reduces to f") {
    const auto g = line(129);
    const auto f = make_profile(g, "jump", {{"at", 0.2}});
    const auto u = solve_dirichlet(f, params);
    const auto one = GridFunction::everywhere(g, [](const Point&) { return 1.0; });
    const auto r = localized_rhs(u, one, f, params);
    for (std::size_t node : g->omega_nodes()) CHECK(r.rhs[node] == doctest::Approx(f[node]).scale(1).epsilon(1e-10));
  }
  SUBCASE("f = 1: F stable under refinement and within the bound") {
    std::vector<double> norms;
    for (int n : {129, 257, 513}) {
      const auto g = line(n);
      const auto f = make_profile(g, "constant");
      const auto u = solve_dirichlet(f, params);
      const auto r = localized_rhs(u, build_cutoff(g, kWindow), f, params);
      CHECK(r.within_bound);
      CHECK(r.mismatch <= r.bound);
      norms.push_back(lp_norm(r.rhs, 2));
    }
    for (double v : norms) CHECK(std::isfinite(v));
    CHECK(norms[2] / norms[1] == doctest::Approx(1.0).epsilon(0.05));
    CHECK(norms[1] / norms[0] == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("g-bound monitor") {
  const auto params = FractionalParams::make(1, 0.5);
  const CutoffSpec spec{Region::interval(-0.3, 0.3), Region::interval(-0.5, 0.5), {}, {}, 3};
  const Region omega2 = Region::interval(-0.8, 0.8);
  const auto g0 = line(129);
  const auto zero = g_bound_monitor(GridFunction::zeros(g0), build_cutoff(g0, spec), spec, params, omega2, 2);
  CHECK(zero.ratio == 0.0);
  CHECK(zero.g_norm == 0.0);

  std::vector<double> ratios;
  for (int n : {129, 257, 513}) {
    const auto g = line(n);
    const auto u = solve_dirichlet(make_profile(g, "constant"), params);
    const auto eta = build_cutoff(g, spec);
    const auto rep = g_bound_monitor(u, eta, spec, params, omega2, 2);
    const auto rep2 = g_bound_monitor(combine(2.0, u, 0.0, u), eta, spec, params, omega2, 2);
    CHECK(rep2.ratio == doctest::Approx(rep.ratio).epsilon(1e-12));
    CHECK(rep.omega1.describe() == Region::interval(-0.65, 0.65).describe());
    ratios.push_back(rep.ratio);
  }
  for (std::size_t l = 1; l < ratios.size(); ++l) CHECK(std::abs(ratios[l] / ratios[l - 1] - 1.0) <= 0.25);
  CHECK_THROWS_AS(g_bound_monitor(solve_dirichlet(make_profile(g0, "constant"), params), build_cutoff(g0, spec), spec,
                                  params, Region::interval(-1.2, 1.2), 2),
                  Error);
}

TEST_CASE("midpoint dilation") {
  const Region m = midpoint_dilation(Region::ball(2, {0.1, 0}, 0.3), Region::ball(2, {0.1, 0}, 0.7));
  CHECK(m.kind == Region::Kind::Ball);
  CHECK(m.radius == doctest::Approx(0.5));
  CHECK(separation(Region::ball(2, {0.1, 0}, 0.3), m) > 0);
  CHECK(separation(m, Region::ball(2, {0.1, 0}, 0.7)) > 0);
}
