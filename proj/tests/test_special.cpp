// Reference values computed with 30-digit arbitrary-precision arithmetic.
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fraclap/error.hpp"
#include "fraclap/operator.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/special.hpp"

using namespace fraclap;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("gamma matches high-precision values") {
  const struct { double x, g; } cases[] = {
      {0.1, 9.5135076986687312858},   {0.5, 1.7724538509055160273},   {1.5, 0.88622692545275801365},
      {5.0, 24.0},                    {7.3, 1271.4236336639088399},   {0.01, 99.432585119150601632},
      {-0.5, -3.5449077018110320546}, {-2.5, -0.94530872048294188123},
  };
  for (const auto& c : cases) {
    CAPTURE(c.x);
    CHECK(rel(gamma_fn(c.x), c.g) < 1e-13);
  }
}

TEST_CASE("normalization constant") {
  SUBCASE("N=1, s=1/2 is 1/pi") { CHECK(rel(normalization_constant(1, 0.5), 1.0 / std::numbers::pi) < 1e-12); }
  SUBCASE("N=2, s=0.75") {
    CHECK(rel(normalization_constant(2, 0.75), 0.17116712969055234293) < 1e-12);
    CHECK(normalization_constant(2, 0.75) == doctest::Approx(0.1712).epsilon(1e-3));
  }
  SUBCASE("more pairs") {
    CHECK(rel(normalization_constant(1, 0.3), 0.23009638168163209817) < 1e-12);
    CHECK(rel(normalization_constant(2, 0.3), 0.10007289206487783267) < 1e-12);
    CHECK(rel(normalization_constant(1, 0.7), 0.31988109866734785404) < 1e-12);
    CHECK(rel(normalization_constant(2, 0.5), 0.15915494309189533577) < 1e-12);
  }
  SUBCASE("vanishes as s -> 0") { CHECK(normalization_constant(1, 1e-6) < 1e-5); }
  SUBCASE("domain errors") {
    for (double s : {0.0, 1.0, -0.2, 1.5}) {
      CAPTURE(s);
      CHECK_THROWS_AS(normalization_constant(1, s), Error);
      CHECK_THROWS_AS(FractionalParams::make(1, s), Error);
    }
    CHECK_THROWS_AS(normalization_constant(0, 0.5), Error);
  }
  SUBCASE("params cache the constant") {
    const auto p = FractionalParams::make(2, 0.3);
    CHECK(p.constant == normalization_constant(2, 0.3));
  }
}

TEST_CASE("getoor constant") {
  CHECK(rel(getoor_constant(1, 0.5), 1.0) < 1e-13);
  CHECK(rel(getoor_constant(2, 0.75), 2.3891043071046817413) < 1e-12);
  CHECK(rel(getoor_constant(1, 0.3), 0.89351534928769025894) < 1e-12);
  CHECK(rel(getoor_constant(2, 0.5), std::numbers::pi / 2) < 1e-12);
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  for (int order : {4, 8, 12, 24}) {
    const auto& r = gauss_legendre(order);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(order));
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    const int deg = 2 * order - 1;
    const double got = integrate([deg](double x) { return std::pow(x, deg - 1); }, 0.0, 1.0, order);
    CHECK(rel(got, 1.0 / deg) < 1e-13);
  }
  CHECK(rel(integrate_composite([](double x) { return std::exp(x); }, 0.0, 2.0, 8, 8), std::exp(2.0) - 1.0) < 1e-14);
}
