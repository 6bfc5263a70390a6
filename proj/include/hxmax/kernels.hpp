// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HXMAX_KERNELS_HPP
#define HXMAX_KERNELS_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>

// Dense vector and CSR kernels used by the iterative solvers. Scalar
// reference implementations always exist; on x86-64 an AVX2 variant is
// selected once at startup when the CPU supports it. Set HXMAX_KERNELS=scalar
// in the environment to force the reference path.
namespace hxmax::kernels {

double dot(const double* x, const double* y, std::size_t n);

// y += a * x
void axpy(double a, const double* x, double* y, std::size_t n);

// y = x + a * y  (classic CG update for the search direction)
void xpay(const double* x, double a, double* y, std::size_t n);

// y = A x for a CSR matrix with the given row offsets / columns / values.
void csr_spmv(const std::int64_t* row_ptr, const std::int32_t* cols,
              const double* vals, const double* x, double* y,
              std::size_t nrows);

// Name of the active variant ("scalar" or "avx2").
std::string_view active_variant();

namespace detail {
// Reference implementations, kept callable for equivalence tests.
double dot_scalar(const double* x, const double* y, std::size_t n);
void axpy_scalar(double a, const double* x, double* y, std::size_t n);
void xpay_scalar(const double* x, double a, double* y, std::size_t n);
void csr_spmv_scalar(const std::int64_t* row_ptr, const std::int32_t* cols,
                     const double* vals, const double* x, double* y,
                     std::size_t nrows);

#if defined(__x86_64__)
bool avx2_available();
double dot_avx2(const double* x, const double* y, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void xpay_avx2(const double* x, double a, double* y, std::size_t n);
void csr_spmv_avx2(const std::int64_t* row_ptr, const std::int32_t* cols,
                   const double* vals, const double* x, double* y,
                   std::size_t nrows);
#endif
}  // namespace detail

}  // namespace hxmax::kernels

#endif  // HXMAX_KERNELS_HPP
