// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hxmax/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace hxmax::kernels {

namespace detail {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpay_scalar(const double* x, double a, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + a * y[i];
}

void csr_spmv_scalar(const std::int64_t* row_ptr, const std::int32_t* cols,
                     const double* vals, const double* x, double* y,
                     std::size_t nrows) {
  for (std::size_t r = 0; r < nrows; ++r) {
    double s = 0.0;
    for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
      s += vals[k] * x[cols[k]];
    y[r] = s;
  }
}

}  // namespace detail

namespace {

struct Dispatch {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*xpay)(const double*, double, double*, std::size_t);
  void (*spmv)(const std::int64_t*, const std::int32_t*, const double*,
               const double*, double*, std::size_t);
  std::string_view name;
};

Dispatch select() {
  const char* force = std::getenv("HXMAX_KERNELS");
  bool want_scalar = force != nullptr && std::strcmp(force, "scalar") == 0;
#if defined(HXMAX_HAVE_AVX2)
  if (!want_scalar && detail::avx2_available()) {
    return {detail::dot_avx2, detail::axpy_avx2, detail::xpay_avx2,
            detail::csr_spmv_avx2, "avx2"};
  }
#else
  (void)want_scalar;
#endif
  return {detail::dot_scalar, detail::axpy_scalar, detail::xpay_scalar,
          detail::csr_spmv_scalar, "scalar"};
}

const Dispatch& table() {
  static const Dispatch d = select();
  return d;
}

}  // namespace

double dot(const double* x, const double* y, std::size_t n) {
  return table().dot(x, y, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  table().axpy(a, x, y, n);
}

void xpay(const double* x, double a, double* y, std::size_t n) {
  table().xpay(x, a, y, n);
}

void csr_spmv(const std::int64_t* row_ptr, const std::int32_t* cols,
              const double* vals, const double* x, double* y,
              std::size_t nrows) {
  table().spmv(row_ptr, cols, vals, x, y, nrows);
}

std::string_view active_variant() { return table().name; }

}  // namespace hxmax::kernels
