#pragma once

// Inner-loop kernels shared by operator application, matrix products and the
// double-sum norm estimators. Every kernel has a scalar reference version; an
// AVX2+FMA version is selected at runtime when the CPU supports it. Both use a
// fixed accumulation order, so results are reproducible for a given backend.

#include <cstddef>
#include <string_view>

namespace fraclap::simd {

struct KernelTable {
  std::string_view name;
  /// sum a[t] * b[t]
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// sum w[t]
  double (*sum)(const double* w, std::size_t n);
  /// sum w[t] * |center - u[t]|^p
  double (*weighted_diff_pow)(double center, const double* u, const double* w, std::size_t n, double p);
  /// sum w[t] * (cu - u[t]) * (ce - e[t])
  double (*weighted_cross_diff)(double cu, const double* u, double ce, const double* e, const double* w,
                                std::size_t n);
  /// sum |a[t] - b[t]|^p
  double (*diff_pow)(const double* a, const double* b, std::size_t n, double p);
  /// sum |a[t] - 2 b[t] + c[t]|^p
  double (*second_diff_pow)(const double* a, const double* b, const double* c, std::size_t n, double p);
};

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend backend);

const KernelTable& scalar_kernels();
/// nullptr when the AVX2 translation unit was not compiled in.
const KernelTable* avx2_kernels();

bool cpu_supports(Backend backend);

/// Best supported backend, unless FRACLAP_SIMD=scalar|avx2 overrides it.
Backend default_backend();
void select_backend(Backend backend);
Backend active_backend();
const KernelTable& active();

inline double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
inline double sum(const double* w, std::size_t n) { return active().sum(w, n); }
inline double weighted_diff_pow(double center, const double* u, const double* w, std::size_t n, double p) {
  return active().weighted_diff_pow(center, u, w, n, p);
}
inline double weighted_cross_diff(double cu, const double* u, double ce, const double* e, const double* w,
                                  std::size_t n) {
  return active().weighted_cross_diff(cu, u, ce, e, w, n);
}
inline double diff_pow(const double* a, const double* b, std::size_t n, double p) {
  return active().diff_pow(a, b, n, p);
}
inline double second_diff_pow(const double* a, const double* b, const double* c, std::size_t n, double p) {
  return active().second_diff_pow(a, b, c, n, p);
}

namespace detail {
// Reference implementations, also the fallback for exponents the AVX2 path
// does not specialise.
double dot_scalar(const double* a, const double* b, std::size_t n);
double sum_scalar(const double* w, std::size_t n);
double weighted_diff_pow_scalar(double center, const double* u, const double* w, std::size_t n, double p);
double weighted_cross_diff_scalar(double cu, const double* u, double ce, const double* e, const double* w,
                                  std::size_t n);
double diff_pow_scalar(const double* a, const double* b, std::size_t n, double p);
double second_diff_pow_scalar(const double* a, const double* b, const double* c, std::size_t n, double p);
}  // namespace detail

}  // namespace fraclap::simd
