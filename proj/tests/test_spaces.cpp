#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fraclap/elliptic.hpp"
#include "fraclap/spaces.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/special.hpp"

using namespace fraclap;

namespace {

GridPtr line(int n) { return Grid::build(1, -2, 2, n, Region::interval(-1, 1)); }

GridFunction bump(const GridPtr& g, double radius = 0.5, double power = 5) {
  return make_profile(g, "bump", {{"radius", radius}, {"power", power}, {"center", 0.05}, {"center_y", -0.05}});
}

GridFunction random_fn(const GridPtr& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1, 1);
  return GridFunction::on_omega(g, [&](const Point&) { return d(rng); });
}

}  // namespace

TEST_CASE("lp_norm") {
  const auto g = line(401);
  CHECK(lp_norm(GridFunction::zeros(g), 2) == 0.0);
  SUBCASE("ones on (-1,1)") {
    double prev_err = INFINITY;
    for (int n : {101, 201, 401, 801}) {
      const auto gn = line(n);
      const double err = std::abs(lp_norm(make_profile(gn, "constant"), 2, gn->omega()) - std::sqrt(2.0));
      CHECK(err < 0.02);
      CHECK(err < prev_err);
      prev_err = err;
    }
  }
  SUBCASE("sup of a peak") {
    auto u = GridFunction::zeros(g);
    u.values[g->index(200)] = 3.0;
    u.values[g->index(150)] = -1.0;
    CHECK(lp_norm(u, kInf) == 3.0);
  }
}

TEST_CASE("gagliardo seminorm") {
  const auto g = line(201);
  CHECK(gagliardo_seminorm(GridFunction::zeros(g), 0.5, 2) == 0.0);
  SUBCASE("constant on the region") {
    const auto u = make_profile(g, "constant", {{"value", 2.5}});
    CHECK(gagliardo_seminorm(u, 0.4, 2, Region::interval(-0.9, 0.9)) == 0.0);
  }
  SUBCASE("indicator of (0,1): growth above the threshold, stability below") {
    // the p-th power behaves like h^{1 - sigma p}, so for sigma p = 1.8 each
    // halving multiplies the seminorm by 2^{0.4}
    std::vector<double> div, conv, div3;
    for (int n : {257, 513, 1025, 2049}) {
      const auto gn = line(n);
      const auto u = make_profile(gn, "jump", {{"at", 0.0}});
      div.push_back(gagliardo_seminorm(u, 0.9, 2));
      div3.push_back(gagliardo_seminorm(u, 0.7, 3));
      conv.push_back(gagliardo_seminorm(u, 0.3, 2));
    }
    for (std::size_t l = 1; l < div.size(); ++l) {
      CHECK(div[l] / div[l - 1] >= 1.2);
      CHECK(div3[l] / div3[l - 1] >= 1.2);
      CHECK(conv[l] / conv[l - 1] == doctest::Approx(1.0).epsilon(0.02));
    }
  }
}

TEST_CASE("besov seminorm") {
  const auto g = Grid::build(1, -2, 2, 257, Region::interval(-1, 1));
  CHECK(besov_seminorm(GridFunction::zeros(g), 0.5, 2, 2) == 0.0);
  CHECK(besov_seminorm(GridFunction::zeros(g), 1.5, 2, kInf) == 0.0);

  SUBCASE("q = p agrees with the gagliardo seminorm") {
    // The Besov sum runs over all of R^N, the Gagliardo sum over the box, so the
    // pairs with one point beyond the box are added here:
    //   2 h^N sum_x |u(x)|^p int_{y outside box} |x-y|^{-N-a} dy,  a = sigma p,
    // the inner integral in polar form int r_b(theta)^{-a} / a dtheta.
    auto exterior = [](const GridFunction& u, double a, double p) {
      const auto& g = *u.grid;
      double total = 0.0;
      for (std::size_t node = 0; node < g.node_count(); ++node) {
        if (u[node] == 0.0) continue;
        const Point x = g.coord(node);
        double inner;
        if (g.dim() == 1) {
          inner = (std::pow(g.box_hi() - x[0], -a) + std::pow(x[0] - g.box_lo(), -a)) / a;
        } else {
          inner = integrate_composite(
              [&](double th) {
                const double c = std::cos(th), s = std::sin(th);
                double r = INFINITY;
                if (c > 0) r = std::min(r, (g.box_hi() - x[0]) / c);
                if (c < 0) r = std::min(r, (g.box_lo() - x[0]) / c);
                if (s > 0) r = std::min(r, (g.box_hi() - x[1]) / s);
                if (s < 0) r = std::min(r, (g.box_lo() - x[1]) / s);
                return std::pow(r, -a) / a;
              },
              0.0, 2 * std::numbers::pi, 256, 8);
        }
        total += std::pow(std::abs(u[node]), p) * inner;
      }
      return 2.0 * g.cell_volume() * total;
    };
    for (int dim : {1, 2}) {
      const auto gd = dim == 1 ? g : Grid::build(2, -2, 2, 65, Region::ball(2, {0, 0}, 1));
      const auto u = bump(gd);
      for (double sigma : {0.3, 0.5, 0.8}) {
        for (double p : {1.5, 2.0, 3.0}) {
          CAPTURE(dim);
          CAPTURE(sigma);
          CAPTURE(p);
          const double b = besov_seminorm(u, sigma, p, p);
          const double w = std::pow(std::pow(gagliardo_seminorm(u, sigma, p), p) + exterior(u, sigma * p, p), 1.0 / p);
          CHECK(std::abs(b - w) <= 0.05 * w);
        }
      }
    }
  }
  SUBCASE("smooth bump is stable under refinement") {
    const double cases[][3] = {{0.5, 2, 2}, {0.3, 1.5, 3}, {0.7, 2, kInf}, {1.5, 2, 2}, {1.2, 3, 1.5}, {1.7, 1.5, kInf}};
    for (const auto& c : cases) {
      CAPTURE(c[0]);
      CAPTURE(c[1]);
      CAPTURE(c[2]);
      double prev = NAN;
      for (int n : {129, 257, 513}) {
        const double v = besov_seminorm(bump(Grid::build(1, -2, 2, n, Region::interval(-1, 1))), c[0], c[1], c[2]);
        CHECK(std::isfinite(v));
        CHECK(v > 0.0);
        if (!std::isnan(prev)) {
          CHECK(v / prev >= 0.8);
          CHECK(v / prev <= 1.2);
        }
        prev = v;
      }
    }
  }
}

TEST_CASE("potential norm") {
  const auto params = FractionalParams::make(1, 0.5);
  CHECK(potential_norm(GridFunction::zeros(line(65)), params, 2) == 0.0);
  SUBCASE("getoor profile: image norm on omega tends to sqrt 2") {
    double prev = INFINITY;
    for (int n : {257, 513, 1025}) {
      const auto g = line(n);
      const auto u = GridFunction::on_omega(g, [](const Point& x) { return std::sqrt(std::max(0.0, 1 - x[0] * x[0])); });
      const auto lu = apply_fractional_laplacian(u, params);
      const double on_omega = lp_norm(lu, 2, g->omega());
      const double err = std::abs(on_omega - std::sqrt(2.0));
      CHECK(err < 0.03);
      CHECK(err < prev);
      prev = err;
      // the box version also sees the exterior part of the image
      const double total = potential_norm(u, params, 2);
      CHECK(total == doctest::Approx(lp_norm(u, 2) + lp_norm(lu, 2)).epsilon(1e-14));
      CHECK(lp_norm(lu, 2) >= on_omega);
    }
  }
  SUBCASE("homogeneous") {
    const auto g = line(129);
    const auto u = bump(g);
    CHECK(potential_norm(combine(2.0, u, 0.0, u), params, 2) ==
          doctest::Approx(2 * potential_norm(u, params, 2)).epsilon(1e-13));
  }
}

TEST_CASE("homogeneity, triangle inequality, region monotonicity") {
  std::mt19937_64 rng(5);
  const auto g = Grid::build(2, -2, 2, 25, Region::ball(2, {0, 0}, 1));
  const auto params = FractionalParams::make(2, 0.4);
  const auto small = Region::box(2, {-0.4, -0.4}, {0.4, 0.4});
  const auto large = Region::box(2, {-0.8, -0.8}, {0.8, 0.8});
  for (int trial = 0; trial < 5; ++trial) {
    const auto u = random_fn(g, rng);
    const auto w = random_fn(g, rng);
    const auto sum = combine(1.0, u, 1.0, w);
    const auto neg = combine(-3.0, u, 0.0, u);
    using Est = std::function<double(const GridFunction&)>;
    const Est ests[] = {
        [](const GridFunction& f) { return lp_norm(f, 1.5); },
        [](const GridFunction& f) { return lp_norm(f, kInf); },
        [](const GridFunction& f) { return gagliardo_seminorm(f, 0.6, 2); },
        [](const GridFunction& f) { return sobolev_seminorm(f, 1.4, 2); },
        [](const GridFunction& f) { return besov_seminorm(f, 0.5, 2, 3); },
        [](const GridFunction& f) { return besov_seminorm(f, 1.5, 1.5, kInf); },
        [&](const GridFunction& f) { return potential_norm(f, params, 2); },
    };
    for (const auto& est : ests) {
      const double eu = est(u), ew = est(w);
      CHECK(est(neg) == doctest::Approx(3 * eu).epsilon(1e-12));
      CHECK(est(sum) <= eu + ew + 1e-10);
    }
    CHECK(gagliardo_seminorm(u, 0.5, 2, small) <= gagliardo_seminorm(u, 0.5, 2, large));
    CHECK(gagliardo_seminorm(u, 0.5, 2, large) <= gagliardo_seminorm(u, 0.5, 2));
  }
}

TEST_CASE("sobolev estimator across sigma = 1") {
  const auto g = line(257);
  const auto u = bump(g);
  CHECK(sobolev_seminorm(u, 0.5, 2) == doctest::Approx(gagliardo_seminorm(u, 0.5, 2)).epsilon(1e-14));
  // sigma = 1: discrete W^{1,2} seminorm of the bump, compared with the integral of u'^2
  const double exact_sq = integrate_composite(
      [](double x) {
        const double t = (x - 0.05) / 0.5;
        if (std::abs(t) >= 1) return 0.0;
        const double d = 5 * std::pow(1 - t * t, 4) * (-2 * t / 0.5);
        return d * d;
      },
      -0.45, 0.55, 16, 16);
  CHECK(sobolev_seminorm(u, 1.0, 2) == doctest::Approx(std::sqrt(exact_sq)).epsilon(0.01));
  CHECK(sobolev_power(u, 1.5, 2) > sobolev_power(u, 1.0, 2));
}

TEST_CASE("norm reports") {
  const auto g = line(129);
  const auto u = bump(g);
  const auto r = sobolev_report(u, 0.5, 2, g->omega());
  CHECK(r.h == g->h());
  CHECK(r.norm >= r.seminorm);
  CHECK(r.seminorm >= 0);
  CHECK(NormReport::csv_header() == "region,sigma,p,q,h,seminorm,norm");
  const std::string row = r.csv_row();
  CHECK(std::count(row.begin(), row.end(), ',') == 6);
  CHECK(row.rfind(g->omega().describe() + ",0.5,2,", 0) == 0);
}
