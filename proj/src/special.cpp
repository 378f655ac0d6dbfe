#include "fraclap/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fraclap/error.hpp"

namespace fraclap {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,      -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7,
};

}  // namespace

double gamma_fn(double x) {
  using std::numbers::pi;
  if (x < 0.5) {
    const double sine = std::sin(pi * x);
    require(sine != 0.0, ErrorKind::Domain, "gamma pole at x = " + std::to_string(x));
    return pi / (sine * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) series += kLanczos[k] / (z + static_cast<double>(k));
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * series;
}

double normalization_constant(int dim, double s) {
  require(dim >= 1, ErrorKind::Domain, "dimension must be >= 1");
  require(s > 0.0 && s < 1.0, ErrorKind::Domain, "exponent s must lie in (0,1), got " + std::to_string(s));
  const double n = static_cast<double>(dim);
  return s * std::pow(2.0, 2.0 * s) * gamma_fn(0.5 * (2.0 * s + n)) /
         (std::pow(std::numbers::pi, 0.5 * n) * gamma_fn(1.0 - s));
}

double getoor_constant(int dim, double s) {
  require(dim >= 1, ErrorKind::Domain, "dimension must be >= 1");
  require(s > 0.0 && s < 1.0, ErrorKind::Domain, "exponent s must lie in (0,1)");
  const double half_n = 0.5 * static_cast<double>(dim);
  return std::pow(4.0, s) * gamma_fn(1.0 + s) * gamma_fn(half_n + s) / gamma_fn(half_n);
}

}  // namespace fraclap
