#include <cmath>

#include "fraclap/simd/kernels.hpp"

namespace fraclap::simd {
namespace detail {
namespace {

inline double pow_abs(double x, double p) {
  const double a = std::abs(x);
  if (p == 2.0) return a * a;
  if (p == 1.0) return a;
  return std::pow(a, p);
}

}  // namespace

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t t = 0; t < n; ++t) acc += a[t] * b[t];
  return acc;
}

double sum_scalar(const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t t = 0; t < n; ++t) acc += w[t];
  return acc;
}

double weighted_diff_pow_scalar(double center, const double* u, const double* w, std::size_t n, double p) {
  double acc = 0.0;
  for (std::size_t t = 0; t < n; ++t) acc += w[t] * pow_abs(center - u[t], p);
  return acc;
}

double weighted_cross_diff_scalar(double cu, const double* u, double ce, const double* e, const double* w,
                                  std::size_t n) {
  double acc = 0.0;
  for (std::size_t t = 0; t < n; ++t) acc += w[t] * ((cu - u[t]) * (ce - e[t]));
  return acc;
}

double diff_pow_scalar(const double* a, const double* b, std::size_t n, double p) {
  double acc = 0.0;
  for (std::size_t t = 0; t < n; ++t) acc += pow_abs(a[t] - b[t], p);
  return acc;
}

double second_diff_pow_scalar(const double* a, const double* b, const double* c, std::size_t n, double p) {
  double acc = 0.0;
  for (std::size_t t = 0; t < n; ++t) acc += pow_abs(a[t] - 2.0 * b[t] + c[t], p);
  return acc;
}

}  // namespace detail

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      "scalar",
      detail::dot_scalar,
      detail::sum_scalar,
      detail::weighted_diff_pow_scalar,
      detail::weighted_cross_diff_scalar,
      detail::diff_pow_scalar,
      detail::second_diff_pow_scalar,
  };
  return table;
}

}  // namespace fraclap::simd
