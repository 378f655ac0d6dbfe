#include <cmath>
#include <vector>

#include "doctest.h"
#include "fraclap/error.hpp"
#include "fraclap/grid.hpp"

using namespace fraclap;

TEST_CASE("build_grid geometry") {
  SUBCASE("h = 1 puts a single node in (-1,1)") {
    const auto g = Grid::build(1, -4, 4, 9, Region::interval(-1, 1));
    CHECK(g->h() == 1.0);
    REQUIRE(g->omega_count() == 1);
    CHECK(g->coord(g->omega_nodes()[0])[0] == 0.0);
    for (std::size_t node = 0; node < g->node_count(); ++node) CHECK(g->in_omega(node) == (node == 4));
  }
  SUBCASE("omega larger than the box") {
    CHECK_THROWS_AS(Grid::build(1, -4, 4, 9, Region::interval(-5, 5)), Error);
    try {
      Grid::build(1, -4, 4, 9, Region::interval(-5, 5));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::CollarTooThin);
    }
  }
  SUBCASE("collar must be a quarter of the diameter") {
    // diameter 2, so the collar has to be >= 0.5 per side
    CHECK_NOTHROW(Grid::build(1, -1.5, 1.5, 9, Region::interval(-1, 1)));
    CHECK_THROWS_AS(Grid::build(1, -1.4, 1.4, 9, Region::interval(-1, 1)), Error);
  }
  SUBCASE("too few nodes") {
    try {
      Grid::build(1, -4, 4, 7, Region::interval(-1, 1));
      FAIL("expected GridTooSmall");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::GridTooSmall);
    }
  }
  SUBCASE("rho at x = 0.5 is 0.5") {
    const auto g = Grid::build(1, -2, 2, 17, Region::interval(-1, 1));
    const auto node = g->index(10);
    REQUIRE(g->coord(node)[0] == doctest::Approx(0.5));
    CHECK(g->rho()[node] == doctest::Approx(0.5).epsilon(1e-15));
  }
}

TEST_CASE("rho is nonnegative and 1-Lipschitz") {
  for (const Region& omega : {Region::ball(2, {0.1, -0.2}, 0.8), Region::box(2, {-1, -0.5}, {0.7, 0.9})}) {
    const auto g = Grid::build(2, -2, 2, 41, omega);
    const auto& rho = g->rho();
    for (int j = 0; j < g->n(); ++j)
      for (int i = 0; i < g->n(); ++i) {
        const auto a = g->index(i, j);
        CHECK(rho[a] >= 0.0);
        if (i + 1 < g->n()) CHECK(std::abs(rho[a] - rho[g->index(i + 1, j)]) <= g->h() + 1e-14);
        if (j + 1 < g->n()) CHECK(std::abs(rho[a] - rho[g->index(i, j + 1)]) <= g->h() + 1e-14);
      }
  }
}

TEST_CASE("omega runs cover exactly the mask") {
  const auto g = Grid::build(2, -2, 2, 33, Region::ball(2, {0.0, 0.0}, 1.0));
  std::vector<int> hit(g->node_count(), 0);
  for (const auto& r : g->omega_runs())
    for (int i = r.begin; i < r.end; ++i) ++hit[g->index(i, r.row)];
  for (std::size_t node = 0; node < g->node_count(); ++node) CHECK(hit[node] == (g->in_omega(node) ? 1 : 0));
}

TEST_CASE("extend_by_zero and restriction") {
  const auto g = Grid::build(1, -2, 2, 33, Region::interval(-1, 1));
  SUBCASE("all ones") {
    const std::vector<double> ones(g->omega_count(), 1.0);
    const auto u = extend_by_zero(ones, g);
    CHECK(u.dirichlet);
    for (std::size_t node = 0; node < g->node_count(); ++node) CHECK(u[node] == (g->in_omega(node) ? 1.0 : 0.0));
  }
  SUBCASE("empty input") {
    try {
      extend_by_zero(std::vector<double>{}, g);
      FAIL("expected LengthMismatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::LengthMismatch);
    }
  }
  SUBCASE("zero vector") {
    const auto u = extend_by_zero(std::vector<double>(g->omega_count(), 0.0), g);
    for (double v : u.values) CHECK(v == 0.0);
  }
  SUBCASE("restrict then extend is the identity") {
    const auto u = GridFunction::on_omega(g, [](const Point& x) { return std::cos(3 * x[0]) + x[0]; });
    const auto back = extend_by_zero(restrict_to_omega(u), g);
    CHECK(back.values == u.values);
  }
}

TEST_CASE("cut-off clauses hold node by node") {
  const auto g = Grid::build(2, -2, 2, 65, Region::ball(2, {0.0, 0.0}, 1.0));
  const CutoffSpec specs[] = {
      {Region::box(2, {-0.2, -0.2}, {0.2, 0.3}), Region::box(2, {-0.5, -0.5}, {0.5, 0.6}), {}, {}, 3},
      {Region::ball(2, {0.1, 0.0}, 0.2), Region::ball(2, {0.1, 0.0}, 0.5), {}, {}, 2},
      {Region::ball(2, {0.0, 0.0}, 0.3), Region::box(2, {-0.6, -0.6}, {0.6, 0.6}), {}, {}, 5},
  };
  for (const auto& spec : specs) {
    const auto eta = build_cutoff(g, spec);
    CHECK(eta.dirichlet);
    for (std::size_t node = 0; node < g->node_count(); ++node) {
      const Point x = g->coord(node);
      if (spec.inner.contains(x)) CHECK(eta[node] == 1.0);
      if (!spec.outer.contains(x)) CHECK(eta[node] == 0.0);
      CHECK(eta[node] >= 0.0);
      CHECK(eta[node] <= 1.0);
    }
  }
}

TEST_CASE("cut-off nesting errors") {
  const auto g = Grid::build(1, -2, 2, 65, Region::interval(-1, 1));
  auto kind_of = [&](const CutoffSpec& spec) {
    try {
      build_cutoff(g, spec);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  CHECK(kind_of({Region::interval(-0.5, 0.5), Region::interval(-0.5, 0.6), {}, {}, 3}) == ErrorKind::InvalidNesting);
  CHECK(kind_of({Region::interval(-0.2, 0.2), Region::interval(-0.5, 1.0), {}, {}, 3}) == ErrorKind::InvalidNesting);
  CHECK(kind_of({Region::interval(-0.2, 0.2), Region::interval(-0.5, 0.5), Region::interval(-0.4, 0.9), {}, 3}) ==
        ErrorKind::InvalidNesting);
  CHECK(kind_of({Region::interval(-0.2, 0.2), Region::interval(-0.5, 0.5), {}, {}, 1}) == ErrorKind::InvalidArgument);
  CHECK_NOTHROW(build_cutoff(g, {Region::interval(-0.2, 0.2), Region::interval(-0.5, 0.5),
                                 Region::interval(-0.6, 0.6), Region::interval(-0.8, 0.8), 3}));
}

TEST_CASE("smoothstep has the requested flatness") {
  for (int m : {2, 3, 4}) {
    CHECK(smoothstep(0.0, m) == 0.0);
    CHECK(smoothstep(1.0, m) == 1.0);
    CHECK(smoothstep(0.5, m) == doctest::Approx(0.5));
    const double e = 1e-3;
    // vanishing derivatives up to order m: S(e) = O(e^{m+1})
    CHECK(smoothstep(e, m) < 10 * std::pow(e, m + 1) * 1e3);
    CHECK(1.0 - smoothstep(1.0 - e, m) < 10 * std::pow(e, m + 1) * 1e3);
    double prev = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double v = smoothstep(k / 100.0, m);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("region config round trip") {
  for (const Region& r : {Region::ball(2, {0.25, -0.5}, 0.75), Region::box(2, {-1, -0.5}, {0.5, 2}),
                          Region::interval(-0.3, 0.7), Region::ball(1, {0.1, 0.0}, 0.4)}) {
    const Region back = Region::from_config(r.to_config(), r.dim);
    CHECK(back.describe() == r.describe());
    CHECK(back.diameter() == r.diameter());
  }
  CHECK_THROWS_AS(Region::from_config({{"kind", "triangle"}}, 1), Error);
}

TEST_CASE("separation") {
  CHECK(separation(Region::interval(-0.2, 0.3), Region::interval(-0.5, 0.6)) == doctest::Approx(0.3));
  CHECK(separation(Region::ball(2, {0, 0}, 0.3), Region::ball(2, {0.1, 0}, 1.0)) == doctest::Approx(0.6));
  CHECK(separation(Region::ball(2, {0, 0}, 0.3), Region::box(2, {-1, -1}, {0.5, 1})) == doctest::Approx(0.2));
  CHECK(separation(Region::interval(-0.2, 0.3), Region::interval(0.0, 0.6)) <= 0.0);
}
