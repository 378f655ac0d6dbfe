#pragma once

#include <functional>
#include <vector>

namespace fraclap {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached per order; safe to call from several threads.
const GaussRule& gauss_legendre(int order);

/// Integral of f over [a, b] with one Gauss-Legendre panel.
double integrate(const std::function<double(double)>& f, double a, double b, int order);

/// Composite version: `panels` equal panels of the given order.
double integrate_composite(const std::function<double(double)>& f, double a, double b, int panels, int order);

}  // namespace fraclap
