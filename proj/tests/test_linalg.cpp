// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hxmax/linalg.hpp"

using namespace hxmax;

namespace {

SparseMatrix diag_matrix(const VecD& d) {
  std::vector<Triplet> t;
  for (int i = 0; i < static_cast<int>(d.size()); ++i)
    t.push_back({i, i, d[i]});
  int n = static_cast<int>(d.size());
  return SparseMatrix(n, n, std::move(t), true);
}

SparseMatrix random_spd(int n, std::uint64_t seed) {
  // M = R^T R + n I assembled from a sparse random R.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rng() % 4 == 0) r[i][j] = u(rng);
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = i == j ? static_cast<double>(n) : 0.0;
      for (int k = 0; k < n; ++k) s += r[k][i] * r[k][j];
      if (s != 0.0) t.push_back({i, j, s});
    }
  return SparseMatrix(n, n, std::move(t), true);
}

VecD random_vec(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  VecD v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

LinOp op_of(const SparseMatrix& m) {
  return [&m](const VecD& x) { return m.apply(x); };
}

LinOp identity_op() {
  return [](const VecD& x) { return x; };
}

}  // namespace

TEST_CASE("Cholesky solves a diagonal system exactly") {
  SparseMatrix d = diag_matrix({4.0, 9.0, 16.0});
  CholeskyFactor f(d);
  VecD x = f.solve({4.0, 18.0, 48.0});
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(x[2] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("Cholesky rejects indefinite matrices with the offending index") {
  SparseMatrix d = diag_matrix({1.0, 2.0, -3.0, 4.0});
  try {
    CholeskyFactor f(d);
    FAIL("expected NotSpdError");
  } catch (const NotSpdError& e) {
    CHECK(e.index == 2);
  }
}

TEST_CASE("PCG solves a random SPD system to small residual") {
  SparseMatrix m = random_spd(50, 3);
  VecD b = random_vec(50, 4);
  auto r = pcg(op_of(m), identity_op(), b, 1e-12, 500);
  CHECK(r.converged);
  VecD ax = m.apply(r.x);
  double rn = 0.0, bn = 0.0;
  for (int i = 0; i < 50; ++i) {
    rn += (b[i] - ax[i]) * (b[i] - ax[i]);
    bn += b[i] * b[i];
  }
  CHECK(std::sqrt(rn / bn) <= 1e-10);
}

TEST_CASE("PCG with B = A^-1 converges in one iteration") {
  SparseMatrix m = random_spd(30, 5);
  CholeskyFactor f(m);
  VecD b = random_vec(30, 6);
  auto r = pcg(op_of(m), [&f](const VecD& v) { return f.solve(v); }, b,
               1e-10, 100);
  CHECK(r.converged);
  CHECK(r.iterations <= 2);
}

TEST_CASE("zero right-hand side converges instantly") {
  SparseMatrix m = random_spd(10, 7);
  auto r = pcg(op_of(m), identity_op(), VecD(10, 0.0), 1e-10, 10);
  CHECK(r.converged);
  CHECK(r.iterations == 0);
  for (double x : r.x) CHECK(x == 0.0);
}

TEST_CASE("PCG breakdown on an indefinite operator throws") {
  SparseMatrix d = diag_matrix({1.0, -1.0, 2.0});
  CHECK_THROWS_AS(pcg(op_of(d), identity_op(), {1.0, 1.0, 1.0}, 1e-10, 10),
                  NotSpdError);
}

TEST_CASE("Ritz values approximate the spectrum of a known diagonal") {
  // diag(1..20): after 20 unpreconditioned iterations the extreme Ritz
  // values are within 1% of the true extremes.
  VecD d(20);
  for (int i = 0; i < 20; ++i) d[i] = i + 1.0;
  SparseMatrix m = diag_matrix(d);
  VecD b = random_vec(20, 11);
  auto r = pcg(op_of(m), identity_op(), b, 1e-14, 20);
  auto ritz = ritz_values(r);
  REQUIRE(!ritz.empty());
  CHECK(ritz.front() == doctest::Approx(1.0).epsilon(0.01));
  CHECK(ritz.back() == doctest::Approx(20.0).epsilon(0.01));
  CHECK(std::is_sorted(ritz.begin(), ritz.end()));
}

TEST_CASE("dense generalized spectrum with identity preconditioner") {
  VecD d{1.0, 2.0, 5.0, 10.0};
  SparseMatrix m = diag_matrix(d);
  auto s = dense_generalized_spectrum(m, identity_op());
  REQUIRE(s.eigenvalues.size() == 4);
  for (int i = 0; i < 4; ++i)
    CHECK(s.eigenvalues[i] == doctest::Approx(d[i]).epsilon(1e-12));
  CHECK(s.lambda_min == doctest::Approx(1.0));
  CHECK(s.lambda_max == doctest::Approx(10.0));
  CHECK(s.cond == doctest::Approx(10.0));
  CHECK(s.method == "dense");
}

TEST_CASE("dense generalized spectrum of B A with diagonal B") {
  // B = diag(1/d) makes B A similar to the identity.
  VecD d{1.0, 3.0, 7.0};
  SparseMatrix m = diag_matrix(d);
  auto s = dense_generalized_spectrum(m, [&d](const VecD& x) {
    VecD y(x);
    for (int i = 0; i < 3; ++i) y[i] /= d[i];
    return y;
  });
  for (double ev : s.eigenvalues) CHECK(ev == doctest::Approx(1.0));
  CHECK(s.cond == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reduced condition skips the lowest ns eigenvalues") {
  SpectrumReport s;
  s.eigenvalues = {1e-6, 0.5, 0.8, 2.0};
  s.lambda_min = 1e-6;
  s.lambda_max = 2.0;
  s.cond = 2e6;
  CHECK(reduced_condition(s, 0) == doctest::Approx(2e6));
  CHECK(reduced_condition(s, 1) == doctest::Approx(4.0));
  CHECK(reduced_condition(s, 2) == doctest::Approx(2.5));
}

TEST_CASE("lanczos spectrum report from a PCG run") {
  VecD d(30);
  for (int i = 0; i < 30; ++i) d[i] = 1.0 + i * 0.5;
  SparseMatrix m = diag_matrix(d);
  auto r = pcg(op_of(m), identity_op(), random_vec(30, 13), 1e-14, 60);
  auto s = spectrum_from_ritz(r);
  CHECK(s.method == "lanczos");
  CHECK(s.lambda_min == doctest::Approx(1.0).epsilon(0.01));
  CHECK(s.lambda_max == doctest::Approx(15.5).epsilon(0.01));
  CHECK(s.cond == doctest::Approx(15.5).epsilon(0.02));
}

TEST_CASE("PCG is deterministic") {
  SparseMatrix m = random_spd(40, 17);
  VecD b = random_vec(40, 18);
  auto r1 = pcg(op_of(m), identity_op(), b, 1e-10, 200);
  auto r2 = pcg(op_of(m), identity_op(), b, 1e-10, 200);
  CHECK(r1.iterations == r2.iterations);
  CHECK(r1.x == r2.x);
  CHECK(r1.residuals == r2.residuals);
}

TEST_CASE("monotone decrease of the preconditioned residual history") {
  SparseMatrix m = random_spd(40, 19);
  auto r = pcg(op_of(m), identity_op(), random_vec(40, 20), 1e-10, 200);
  REQUIRE(!r.residuals.empty());
  // CG residual norms need not be monotone, but the B-norm history must
  // end below the tolerance.
  CHECK(r.residuals.back() <= 1e-10);
}

TEST_CASE("dense_symmetric_eigenvalues oracle on a 2x2 matrix") {
  // [[2,1],[1,2]] has eigenvalues 1 and 3.
  SparseMatrix m(2, 2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 2.0}},
                 true);
  auto ev = dense_symmetric_eigenvalues(m);
  REQUIRE(ev.size() == 2);
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-13));
}
