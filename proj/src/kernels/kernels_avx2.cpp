// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

// AVX2 kernel variants. This translation unit is compiled with -mavx2; it is
// only entered after a runtime CPU check.

#if defined(__x86_64__)

#include <immintrin.h>

#include "hxmax/kernels.hpp"

namespace hxmax::kernels::detail {

bool avx2_available() { return __builtin_cpu_supports("avx2") != 0; }

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

}  // namespace

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void xpay_avx2(const double* x, double a, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(av, yv, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] = x[i] + a * y[i];
}

void csr_spmv_avx2(const std::int64_t* row_ptr, const std::int32_t* cols,
                   const double* vals, const double* x, double* y,
                   std::size_t nrows) {
  for (std::size_t r = 0; r < nrows; ++r) {
    const std::int64_t b = row_ptr[r], e = row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    std::int64_t k = b;
    for (; k + 4 <= e; k += 4) {
      __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(cols + k));
      __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(vals + k), xv, acc);
    }
    double s = hsum(acc);
    for (; k < e; ++k) s += vals[k] * x[cols[k]];
    y[r] = s;
  }
}

}  // namespace hxmax::kernels::detail

#endif  // __x86_64__
