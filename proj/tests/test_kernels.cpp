// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hxmax/kernels.hpp"
#include "hxmax/sparse.hpp"

using namespace hxmax;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("dot matches scalar reference on awkward lengths") {
  // Lengths straddle the SIMD width so remainder handling is exercised.
  for (std::size_t n : {0ul, 1ul, 3ul, 4ul, 7ul, 8ul, 17ul, 1031ul}) {
    auto x = random_vec(n, 10 + n);
    auto y = random_vec(n, 20 + n);
    double ref = kernels::detail::dot_scalar(x.data(), y.data(), n);
    double got = kernels::dot(x.data(), y.data(), n);
    CHECK(std::abs(got - ref) <= 1e-13 * (1.0 + std::abs(ref)) + 1e-12 * n);
  }
}

TEST_CASE("axpy and xpay match scalar reference") {
  for (std::size_t n : {1ul, 5ul, 16ul, 33ul, 257ul}) {
    auto x = random_vec(n, 3 + n);
    auto y0 = random_vec(n, 4 + n);
    double a = 0.37;

    auto y1 = y0, y2 = y0;
    kernels::detail::axpy_scalar(a, x.data(), y1.data(), n);
    kernels::axpy(a, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y2[i] == doctest::Approx(y1[i]).epsilon(1e-14));

    y1 = y0;
    y2 = y0;
    kernels::detail::xpay_scalar(x.data(), a, y1.data(), n);
    kernels::xpay(x.data(), a, y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y2[i] == doctest::Approx(y1[i]).epsilon(1e-14));
  }
}

TEST_CASE("csr_spmv matches scalar reference on a random sparse matrix") {
  const int n = 123;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Triplet> trips;
  for (int i = 0; i < n; ++i) {
    trips.push_back({i, i, 2.0 + u(rng)});
    for (int k = 0; k < 5; ++k) {
      int j = static_cast<int>(rng() % n);
      trips.push_back({i, j, u(rng)});
    }
  }
  SparseMatrix m(n, n, trips);
  auto x = random_vec(n, 99);
  std::vector<double> y_ref(n), y_got(n);
  kernels::detail::csr_spmv_scalar(m.row_ptr().data(), m.col_idx().data(),
                                   m.values().data(), x.data(), y_ref.data(),
                                   n);
  kernels::csr_spmv(m.row_ptr().data(), m.col_idx().data(), m.values().data(),
                    x.data(), y_got.data(), n);
  for (int i = 0; i < n; ++i)
    CHECK(std::abs(y_got[i] - y_ref[i]) <= 1e-13 * (1.0 + std::abs(y_ref[i])));
}

TEST_CASE("active variant is reported") {
  auto v = kernels::active_variant();
  CHECK((v == "scalar" || v == "avx2"));
  MESSAGE("active kernel variant: ", std::string(v));
}

TEST_CASE("dot oracle: ones vector") {
  std::vector<double> x(1000, 1.0);
  CHECK(kernels::dot(x.data(), x.data(), x.size()) == doctest::Approx(1000.0));
}
