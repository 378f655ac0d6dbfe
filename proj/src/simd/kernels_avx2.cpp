// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "fraclap/simd/kernels.hpp"

namespace fraclap::simd {
namespace {

inline double hsum(__m256d a, __m256d b) {
  const __m256d v = _mm256_add_pd(a, b);
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d vabs(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t t = 0;
  for (; t + 8 <= n; t += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + t), _mm256_loadu_pd(b + t), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + t + 4), _mm256_loadu_pd(b + t + 4), acc1);
  }
  double acc = hsum(acc0, acc1);
  for (; t < n; ++t) acc += a[t] * b[t];
  return acc;
}

double sum_avx2(const double* w, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t t = 0;
  for (; t + 8 <= n; t += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(w + t));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(w + t + 4));
  }
  double acc = hsum(acc0, acc1);
  for (; t < n; ++t) acc += w[t];
  return acc;
}

double weighted_diff_pow_avx2(double center, const double* u, const double* w, std::size_t n, double p) {
  if (p != 2.0 && p != 1.0) return detail::weighted_diff_pow_scalar(center, u, w, n, p);
  const __m256d c = _mm256_set1_pd(center);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t t = 0;
  if (p == 2.0) {
    for (; t + 8 <= n; t += 8) {
      const __m256d d0 = _mm256_sub_pd(c, _mm256_loadu_pd(u + t));
      const __m256d d1 = _mm256_sub_pd(c, _mm256_loadu_pd(u + t + 4));
      acc0 = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + t), d0), d0, acc0);
      acc1 = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + t + 4), d1), d1, acc1);
    }
  } else {
    for (; t + 8 <= n; t += 8) {
      const __m256d d0 = vabs(_mm256_sub_pd(c, _mm256_loadu_pd(u + t)));
      const __m256d d1 = vabs(_mm256_sub_pd(c, _mm256_loadu_pd(u + t + 4)));
      acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + t), d0, acc0);
      acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + t + 4), d1, acc1);
    }
  }
  double acc = hsum(acc0, acc1);
  return acc + detail::weighted_diff_pow_scalar(center, u + t, w + t, n - t, p);
}

double weighted_cross_diff_avx2(double cu, const double* u, double ce, const double* e, const double* w,
                                std::size_t n) {
  const __m256d vu = _mm256_set1_pd(cu);
  const __m256d ve = _mm256_set1_pd(ce);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t t = 0;
  for (; t + 8 <= n; t += 8) {
    const __m256d p0 = _mm256_mul_pd(_mm256_sub_pd(vu, _mm256_loadu_pd(u + t)),
                                     _mm256_sub_pd(ve, _mm256_loadu_pd(e + t)));
    const __m256d p1 = _mm256_mul_pd(_mm256_sub_pd(vu, _mm256_loadu_pd(u + t + 4)),
                                     _mm256_sub_pd(ve, _mm256_loadu_pd(e + t + 4)));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + t), p0, acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + t + 4), p1, acc1);
  }
  double acc = hsum(acc0, acc1);
  return acc + detail::weighted_cross_diff_scalar(cu, u + t, ce, e + t, w + t, n - t);
}

double diff_pow_avx2(const double* a, const double* b, std::size_t n, double p) {
  if (p != 2.0 && p != 1.0) return detail::diff_pow_scalar(a, b, n, p);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t t = 0;
  for (; t + 8 <= n; t += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + t), _mm256_loadu_pd(b + t));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + t + 4), _mm256_loadu_pd(b + t + 4));
    if (p == 2.0) {
      acc0 = _mm256_fmadd_pd(d0, d0, acc0);
      acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    } else {
      acc0 = _mm256_add_pd(acc0, vabs(d0));
      acc1 = _mm256_add_pd(acc1, vabs(d1));
    }
  }
  double acc = hsum(acc0, acc1);
  return acc + detail::diff_pow_scalar(a + t, b + t, n - t, p);
}

double second_diff_pow_avx2(const double* a, const double* b, const double* c, std::size_t n, double p) {
  if (p != 2.0 && p != 1.0) return detail::second_diff_pow_scalar(a, b, c, n, p);
  const __m256d two = _mm256_set1_pd(2.0);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t t = 0;
  for (; t + 8 <= n; t += 8) {
    const __m256d d0 = _mm256_add_pd(_mm256_sub_pd(_mm256_loadu_pd(a + t), _mm256_mul_pd(two, _mm256_loadu_pd(b + t))),
                                     _mm256_loadu_pd(c + t));
    const __m256d d1 =
        _mm256_add_pd(_mm256_sub_pd(_mm256_loadu_pd(a + t + 4), _mm256_mul_pd(two, _mm256_loadu_pd(b + t + 4))),
                      _mm256_loadu_pd(c + t + 4));
    if (p == 2.0) {
      acc0 = _mm256_fmadd_pd(d0, d0, acc0);
      acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    } else {
      acc0 = _mm256_add_pd(acc0, vabs(d0));
      acc1 = _mm256_add_pd(acc1, vabs(d1));
    }
  }
  double acc = hsum(acc0, acc1);
  return acc + detail::second_diff_pow_scalar(a + t, b + t, c + t, n - t, p);
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{
      "avx2", dot_avx2, sum_avx2, weighted_diff_pow_avx2, weighted_cross_diff_avx2, diff_pow_avx2,
      second_diff_pow_avx2,
  };
  return &table;
}

}  // namespace fraclap::simd
