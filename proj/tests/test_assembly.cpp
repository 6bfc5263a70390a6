// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "hxmax/assembly.hpp"
#include "hxmax/linalg.hpp"

using namespace hxmax;

namespace {

using Mat4 = std::array<std::array<double, 4>, 4>;

// Barycentric gradients of a tet, via Gaussian elimination on the vertex
// matrix (independent of the production code path).
std::array<Point, 4> bary_gradients(const Mesh& mesh, int t) {
  // Solve M c = e_i with rows [1, x, y, z]; the last three entries of c are
  // the gradient of lambda_i.
  double m[4][8] = {};
  for (int r = 0; r < 4; ++r) {
    const Point& p = mesh.vertices[mesh.tets[t][r]];
    m[r][0] = 1.0;
    for (int d = 0; d < 3; ++d) m[r][1 + d] = p[d];
    m[r][4 + r] = 1.0;
  }
  for (int k = 0; k < 4; ++k) {
    int piv = k;
    for (int r = k + 1; r < 4; ++r)
      if (std::abs(m[r][k]) > std::abs(m[piv][k])) piv = r;
    for (int c = 0; c < 8; ++c) std::swap(m[k][c], m[piv][c]);
    for (int r = 0; r < 4; ++r) {
      if (r == k) continue;
      double f = m[r][k] / m[k][k];
      for (int c = 0; c < 8; ++c) m[r][c] -= f * m[k][c];
    }
  }
  std::array<Point, 4> g;
  for (int i = 0; i < 4; ++i)
    for (int d = 0; d < 3; ++d) g[i][d] = m[1 + d][4 + i] / m[1 + d][1 + d];
  return g;
}

Point cross(const Point& a, const Point& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

double dot(const Point& a, const Point& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Quadrature oracle for the edge-element system, degree-2 exact (the
// shape-function products are quadratic in the barycentric coordinates).
std::vector<std::vector<double>> oracle_edge_system(const Mesh& mesh,
                                                    double alpha,
                                                    double beta) {
  const double qa = 0.5854101966249685, qb = 0.1381966011250105;
  double qp[4][4] = {{qa, qb, qb, qb},
                     {qb, qa, qb, qb},
                     {qb, qb, qa, qb},
                     {qb, qb, qb, qa}};
  std::vector<std::vector<double>> A(
      mesh.num_edges(), std::vector<double>(mesh.num_edges(), 0.0));
  for (int t = 0; t < mesh.num_tets(); ++t) {
    auto g = bary_gradients(mesh, t);
    double vol = mesh.tet_volume(t);
    const auto& tt = mesh.tets[t];
    int li[6], lj[6], ge[6];
    double sg[6];
    int m = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        li[m] = i;
        lj[m] = j;
        sg[m] = tt[i] < tt[j] ? 1.0 : -1.0;
        ge[m] = mesh.edge_index(tt[i], tt[j]);
        ++m;
      }
    for (int e1 = 0; e1 < 6; ++e1)
      for (int e2 = 0; e2 < 6; ++e2) {
        Point c1 = cross(g[li[e1]], g[lj[e1]]);
        Point c2 = cross(g[li[e2]], g[lj[e2]]);
        double curl = 4.0 * vol * dot(c1, c2);
        double mass = 0.0;
        for (int q = 0; q < 4; ++q) {
          Point w1, w2;
          for (int d = 0; d < 3; ++d) {
            w1[d] = qp[q][li[e1]] * g[lj[e1]][d] - qp[q][lj[e1]] * g[li[e1]][d];
            w2[d] = qp[q][li[e2]] * g[lj[e2]][d] - qp[q][lj[e2]] * g[li[e2]][d];
          }
          mass += 0.25 * vol * dot(w1, w2);
        }
        A[ge[e1]][ge[e2]] +=
            sg[e1] * sg[e2] * (alpha * curl + beta * mass);
      }
  }
  return A;
}

VecD interpolate_field(const Mesh& mesh, Point (*f)(const Point&)) {
  // Trapezoid edge moments, exact for linear fields.
  VecD v(mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Point& a = mesh.vertices[mesh.edges[e][0]];
    const Point& b = mesh.vertices[mesh.edges[e][1]];
    Point fa = f(a), fb = f(b);
    double s = 0.0;
    for (int d = 0; d < 3; ++d) s += 0.5 * (fa[d] + fb[d]) * (b[d] - a[d]);
    v[e] = s;
  }
  return v;
}

double quad_form(const SparseMatrix& a, const VecD& x) {
  VecD ax = a.apply(x);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * ax[i];
  return s;
}

}  // namespace

TEST_CASE("edge system matches the quadrature oracle") {
  for (int n : {1, 2}) {
    Mesh mesh = build_structured_cube(n);
    auto part = assign_subdomains(mesh, GeometryConfig::single(n));
    CoefficientField c;
    c.alpha = {1.3};
    c.beta = {0.7};
    SparseMatrix A = assemble_edge_system(mesh, part, c, /*bc=*/false);
    auto oracle = oracle_edge_system(mesh, 1.3, 0.7);
    double scale = A.max_abs();
    for (int i = 0; i < mesh.num_edges(); ++i)
      for (int j = 0; j < mesh.num_edges(); ++j)
        CHECK(std::abs(A.coeff(i, j) - oracle[i][j]) <= 1e-12 * scale);
  }
}

TEST_CASE("constant-field energy equals beta |c|^2") {
  Mesh mesh = build_structured_cube(3);
  auto part = assign_subdomains(mesh, GeometryConfig::single(3));
  CoefficientField c;
  c.alpha = {2.0};
  c.beta = {3.5};
  SparseMatrix A = assemble_edge_system(mesh, part, c, /*bc=*/false);
  VecD v = interpolate_field(
      mesh, +[](const Point&) -> Point { return {1.0, -2.0, 0.5}; });
  // Constant fields are curl-free and |c|^2 = 1 + 4 + .25.
  CHECK(quad_form(A, v) == doctest::Approx(3.5 * 5.25).epsilon(1e-12));
}

TEST_CASE("lowest-order-space field: curl and mass energies are exact") {
  // v = (1 + y, -x, 0) = (1,0,0) + b x x with b = (0,0,-1) lies in the
  // lowest-order edge space, so its interpolant is exact:
  // curl v = (0,0,-2) gives energy 4; int |v|^2 = int (1+y)^2 + x^2 = 8/3.
  Mesh mesh = build_structured_cube(2);
  auto part = assign_subdomains(mesh, GeometryConfig::single(2));
  VecD v = interpolate_field(
      mesh, +[](const Point& p) -> Point { return {1.0 + p[1], -p[0], 0.0}; });
  CoefficientField c;
  c.alpha = {1.0};
  c.beta = {1.0};
  SparseMatrix A = assemble_edge_system(mesh, part, c, false);
  SparseMatrix M = assemble_edge_mass(mesh, part, {1.0}, false);
  double mass = quad_form(M, v);
  CHECK(mass == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
  CHECK(quad_form(A, v) - mass == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("gradients lie in the curl kernel: K_curl G = 0") {
  Mesh mesh = build_structured_cube(2);
  auto part = assign_subdomains(mesh, GeometryConfig::half_cube(2));
  // A (G p) = M_beta (G p): the curl part annihilates gradients.
  CoefficientField c;
  c.alpha = {1.0, 1e6};
  c.beta = {2.0, 0.5};
  SparseMatrix A = assemble_edge_system(mesh, part, c, false);
  SparseMatrix M = assemble_edge_mass(mesh, part, c.beta, false);
  SparseMatrix G = discrete_gradient(mesh, false);
  double scale = A.max_abs();
  VecD p(mesh.num_vertices());
  for (int i = 0; i < mesh.num_vertices(); ++i) p[i] = std::sin(1.0 + i);
  VecD gp = G.apply(p);
  VecD agp = A.apply(gp), mgp = M.apply(gp);
  for (std::size_t i = 0; i < agp.size(); ++i)
    CHECK(std::abs(agp[i] - mgp[i]) <= 1e-12 * scale);
}

TEST_CASE("G^T A G equals the beta-weighted scalar Laplacian") {
  for (bool bc : {false, true}) {
    Mesh mesh = build_structured_cube(2);
    auto part = assign_subdomains(mesh, GeometryConfig::half_cube(2));
    CoefficientField c;
    c.alpha = {1.0, 1e4};
    c.beta = {2.0, 1e-3};
    SparseMatrix A = assemble_edge_system(mesh, part, c, bc);
    SparseMatrix G = discrete_gradient(mesh, bc);
    SparseMatrix L = assemble_scalar_beta(mesh, part, c, bc);
    double scale = A.max_abs();
    // Compare G^T A G column by column against L.
    for (int j = 0; j < G.cols(); ++j) {
      VecD ej(G.cols(), 0.0);
      ej[j] = 1.0;
      VecD lhs = G.transpose().apply(A.apply(G.apply(ej)));
      VecD rhs = L.apply(ej);
      for (int i = 0; i < G.cols(); ++i)
        CHECK(std::abs(lhs[i] - rhs[i]) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("Pi reproduces edge moments of nodal fields") {
  Mesh mesh = build_structured_cube(2);
  SparseMatrix P = nodal_to_edge_interpolation(mesh, false);
  const int nn = mesh.num_vertices();
  // w = (y, 0, 0) stored component-major.
  VecD w(3 * nn, 0.0);
  for (int i = 0; i < nn; ++i) w[i] = mesh.vertices[i][1];
  VecD pw = P.apply(w);
  VecD expect = interpolate_field(
      mesh, +[](const Point& p) -> Point { return {p[1], 0.0, 0.0}; });
  for (int e = 0; e < mesh.num_edges(); ++e)
    CHECK(pw[e] == doctest::Approx(expect[e]).epsilon(1e-13));
}

TEST_CASE("G rows sum to zero and have entries +1/-1") {
  Mesh mesh = build_structured_cube(2);
  SparseMatrix G = discrete_gradient(mesh, false);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    CHECK(G.coeff(e, mesh.edges[e][1]) == 1.0);
    CHECK(G.coeff(e, mesh.edges[e][0]) == -1.0);
  }
  VecD ones(mesh.num_vertices(), 1.0);
  for (double x : G.apply(ones)) CHECK(x == 0.0);
}

TEST_CASE("reduced systems are SPD") {
  Mesh mesh = build_structured_cube(2);
  auto part = assign_subdomains(mesh, GeometryConfig::checkerboard(2));
  CoefficientField c;
  c.alpha = {1.0, 1.0, 1e-4, 1e-4};
  c.beta = {1e-4, 1e-4, 1e-4, 1e-4};
  for (const SparseMatrix& m :
       {assemble_edge_system(mesh, part, c, true),
        assemble_vector_nodal(mesh, part, c, true),
        assemble_scalar_beta(mesh, part, c, true)}) {
    CHECK(m.symmetry_defect() <= 1e-14 * m.max_abs());
    auto ev = dense_symmetric_eigenvalues(m);
    CHECK(ev.front() > 0.0);
  }
}

TEST_CASE("assembly is linear in the coefficients") {
  Mesh mesh = build_structured_cube(2);
  auto part = assign_subdomains(mesh, GeometryConfig::half_cube(2));
  CoefficientField c1, c2;
  c1.alpha = {1.0, 3.0};
  c1.beta = {2.0, 0.5};
  c2 = c1;
  for (auto& x : c2.alpha) x *= 2.0;
  for (auto& x : c2.beta) x *= 2.0;
  SparseMatrix A1 = assemble_edge_system(mesh, part, c1, false);
  SparseMatrix A2 = assemble_edge_system(mesh, part, c2, false);
  double scale = A2.max_abs();
  for (int i = 0; i < A1.rows(); ++i)
    for (int j = 0; j < A1.cols(); ++j)
      CHECK(std::abs(A2.coeff(i, j) - 2.0 * A1.coeff(i, j)) <= 1e-13 * scale);
}

TEST_CASE("dof maps eliminate exactly the boundary entities") {
  Mesh mesh = build_structured_cube(2);
  auto em = edge_dof_map(mesh, true);
  int free_edges = 0;
  for (char b : mesh.edge_boundary) free_edges += b == 0;
  CHECK(em.n_red == free_edges);
  for (int e = 0; e < mesh.num_edges(); ++e)
    CHECK((em.full_to_red[e] >= 0) == (mesh.edge_boundary[e] == 0));
  auto sm = scalar_dof_map(mesh, true);
  CHECK(sm.n_red == 1);  // only the center vertex is interior at n=2
  auto vm = vector_dof_map(mesh, true);
  CHECK(vm.n_red == 3);
}

TEST_CASE("vector nodal operator is three decoupled scalar copies") {
  Mesh mesh = build_structured_cube(2);
  auto part = assign_subdomains(mesh, GeometryConfig::half_cube(2));
  CoefficientField c;
  c.alpha = {1.0, 5.0};
  c.beta = {0.3, 0.7};
  SparseMatrix D = assemble_vector_nodal(mesh, part, c, false);
  SparseMatrix S = assemble_scalar(mesh, part, c.alpha, c.beta, false);
  const int nn = mesh.num_vertices();
  double scale = S.max_abs();
  for (int comp = 0; comp < 3; ++comp)
    for (int i = 0; i < nn; ++i)
      for (int j = 0; j < nn; ++j) {
        CHECK(std::abs(D.coeff(comp * nn + i, comp * nn + j) - S.coeff(i, j)) <=
              1e-14 * scale);
        if (comp > 0)
          CHECK(D.coeff(i, comp * nn + j) == 0.0);
      }
}
