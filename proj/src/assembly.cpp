// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hxmax/assembly.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hxmax {

namespace {

struct TetGeom {
  double vol;
  Point grad[4];  // gradients of the barycentric coordinates
};

TetGeom tet_geom(const Mesh& mesh, int t) {
  const auto& tt = mesh.tets[t];
  TetGeom g;
  g.vol = mesh.tet_volume(t);
  if (!(g.vol > 0.0)) throw std::runtime_error("degenerate tet");
  // grad(lambda_i) = (opposite-face normal) scaled so lambda_i(p_i) = 1.
  for (int i = 0; i < 4; ++i) {
    int a = tt[(i + 1) % 4], b = tt[(i + 2) % 4], c = tt[(i + 3) % 4];
    const Point& pa = mesh.vertices[a];
    const Point& pb = mesh.vertices[b];
    const Point& pc = mesh.vertices[c];
    Point u{pb[0] - pa[0], pb[1] - pa[1], pb[2] - pa[2]};
    Point v{pc[0] - pa[0], pc[1] - pa[1], pc[2] - pa[2]};
    Point nrm{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
              u[0] * v[1] - u[1] * v[0]};
    const Point& pi = mesh.vertices[tt[i]];
    double s = nrm[0] * (pi[0] - pa[0]) + nrm[1] * (pi[1] - pa[1]) +
               nrm[2] * (pi[2] - pa[2]);
    for (int d = 0; d < 3; ++d) g.grad[i][d] = nrm[d] / s;
  }
  return g;
}

double dot3(const Point& a, const Point& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Point cross3(const Point& a, const Point& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

// int_K lambda_i lambda_j = vol (1 + delta_ij) / 20.
double bary_mass(double vol, int i, int j) {
  return vol * (i == j ? 2.0 : 1.0) / 20.0;
}

SparseMatrix reduce(SparseMatrix m, const DofMap& rows, const DofMap& cols) {
  return m.restricted(rows.full_to_red, rows.n_red, cols.full_to_red,
                      cols.n_red);
}

}  // namespace

DofMap DofMap::all_free(int n) {
  DofMap d;
  d.n_full = d.n_red = n;
  d.full_to_red.resize(n);
  d.red_to_full.resize(n);
  std::iota(d.full_to_red.begin(), d.full_to_red.end(), 0);
  std::iota(d.red_to_full.begin(), d.red_to_full.end(), 0);
  return d;
}

namespace {

DofMap from_constrained(const std::vector<char>& constrained) {
  DofMap d;
  d.n_full = static_cast<int>(constrained.size());
  d.full_to_red.assign(d.n_full, -1);
  for (int i = 0; i < d.n_full; ++i)
    if (!constrained[i]) {
      d.full_to_red[i] = static_cast<int>(d.red_to_full.size());
      d.red_to_full.push_back(i);
    }
  d.n_red = static_cast<int>(d.red_to_full.size());
  return d;
}

}  // namespace

DofMap edge_dof_map(const Mesh& mesh, bool bc) {
  if (!bc) return DofMap::all_free(mesh.num_edges());
  return from_constrained(mesh.edge_boundary);
}

DofMap scalar_dof_map(const Mesh& mesh, bool bc) {
  if (!bc) return DofMap::all_free(mesh.num_vertices());
  return from_constrained(mesh.vertex_boundary);
}

DofMap vector_dof_map(const Mesh& mesh, bool bc) {
  const int nn = mesh.num_vertices();
  if (!bc) return DofMap::all_free(3 * nn);
  std::vector<char> constrained(3 * nn, 0);
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < nn; ++i)
      constrained[c * nn + i] = mesh.vertex_boundary[i];
  return from_constrained(constrained);
}

SparseMatrix assemble_edge_system(const Mesh& mesh,
                                  const SubdomainPartition& part,
                                  const CoefficientField& coeffs, bool bc) {
  coeffs.validate(part.count);
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(mesh.num_tets()) * 36);
  for (int t = 0; t < mesh.num_tets(); ++t) {
    TetGeom g = tet_geom(mesh, t);
    int k = part.tet_subdomain[t];
    double a = coeffs.alpha[k], b = coeffs.beta[k];
    const auto& tt = mesh.tets[t];
    // Local edges: the 6 vertex pairs, globally oriented tail < head.
    int la[6], lb[6], ge[6];
    double sign[6];
    int m = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        int vi = tt[i], vj = tt[j];
        la[m] = i;
        lb[m] = j;
        sign[m] = vi < vj ? 1.0 : -1.0;
        ge[m] = mesh.edge_index(vi, vj);
        ++m;
      }
    for (int e1 = 0; e1 < 6; ++e1)
      for (int e2 = 0; e2 < 6; ++e2) {
        int i = la[e1], j = lb[e1], p = la[e2], q = lb[e2];
        Point ci = cross3(g.grad[i], g.grad[j]);
        Point cj = cross3(g.grad[p], g.grad[q]);
        double curl = 4.0 * g.vol * dot3(ci, cj);
        double mass = dot3(g.grad[j], g.grad[q]) * bary_mass(g.vol, i, p) -
                      dot3(g.grad[j], g.grad[p]) * bary_mass(g.vol, i, q) -
                      dot3(g.grad[i], g.grad[q]) * bary_mass(g.vol, j, p) +
                      dot3(g.grad[i], g.grad[p]) * bary_mass(g.vol, j, q);
        double v = sign[e1] * sign[e2] * (a * curl + b * mass);
        trip.push_back({ge[e1], ge[e2], v});
      }
  }
  SparseMatrix A(mesh.num_edges(), mesh.num_edges(), std::move(trip), true);
  if (!bc) return A;
  DofMap d = edge_dof_map(mesh, true);
  return reduce(std::move(A), d, d);
}

SparseMatrix assemble_scalar(const Mesh& mesh, const SubdomainPartition& part,
                             const std::vector<double>& alpha,
                             const std::vector<double>& beta, bool bc) {
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(mesh.num_tets()) * 16);
  for (int t = 0; t < mesh.num_tets(); ++t) {
    TetGeom g = tet_geom(mesh, t);
    int k = part.tet_subdomain[t];
    double a = alpha[k], b = beta[k];
    const auto& tt = mesh.tets[t];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double v = a * g.vol * dot3(g.grad[i], g.grad[j]) +
                   b * bary_mass(g.vol, i, j);
        trip.push_back({tt[i], tt[j], v});
      }
  }
  SparseMatrix M(mesh.num_vertices(), mesh.num_vertices(), std::move(trip),
                 true);
  if (!bc) return M;
  DofMap d = scalar_dof_map(mesh, true);
  return reduce(std::move(M), d, d);
}

SparseMatrix assemble_vector_nodal(const Mesh& mesh,
                                   const SubdomainPartition& part,
                                   const CoefficientField& coeffs, bool bc) {
  coeffs.validate(part.count);
  SparseMatrix s = assemble_scalar(mesh, part, coeffs.alpha, coeffs.beta,
                                   /*bc=*/false);
  const int nn = mesh.num_vertices();
  std::vector<Triplet> trip;
  trip.reserve(3 * s.nnz());
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < nn; ++r)
      for (std::int64_t i = s.row_ptr()[r]; i < s.row_ptr()[r + 1]; ++i)
        trip.push_back({c * nn + r, c * nn + s.col_idx()[i], s.values()[i]});
  SparseMatrix D(3 * nn, 3 * nn, std::move(trip), true);
  if (!bc) return D;
  DofMap d = vector_dof_map(mesh, true);
  return reduce(std::move(D), d, d);
}

SparseMatrix assemble_scalar_beta(const Mesh& mesh,
                                  const SubdomainPartition& part,
                                  const CoefficientField& coeffs, bool bc) {
  coeffs.validate(part.count);
  std::vector<double> zero(part.count, 0.0);
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(mesh.num_tets()) * 16);
  for (int t = 0; t < mesh.num_tets(); ++t) {
    TetGeom g = tet_geom(mesh, t);
    double b = coeffs.beta[part.tet_subdomain[t]];
    const auto& tt = mesh.tets[t];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        trip.push_back(
            {tt[i], tt[j], b * g.vol * dot3(g.grad[i], g.grad[j])});
  }
  SparseMatrix L(mesh.num_vertices(), mesh.num_vertices(), std::move(trip),
                 true);
  if (!bc) return L;
  DofMap d = scalar_dof_map(mesh, true);
  return reduce(std::move(L), d, d);
}

SparseMatrix assemble_edge_mass(const Mesh& mesh,
                                const SubdomainPartition& part,
                                const std::vector<double>& weight, bool bc) {
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(mesh.num_tets()) * 36);
  for (int t = 0; t < mesh.num_tets(); ++t) {
    TetGeom g = tet_geom(mesh, t);
    double w = weight[part.tet_subdomain[t]];
    const auto& tt = mesh.tets[t];
    int la[6], lb[6], ge[6];
    double sign[6];
    int m = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        la[m] = i;
        lb[m] = j;
        sign[m] = tt[i] < tt[j] ? 1.0 : -1.0;
        ge[m] = mesh.edge_index(tt[i], tt[j]);
        ++m;
      }
    for (int e1 = 0; e1 < 6; ++e1)
      for (int e2 = 0; e2 < 6; ++e2) {
        int i = la[e1], j = lb[e1], p = la[e2], q = lb[e2];
        double mass = dot3(g.grad[j], g.grad[q]) * bary_mass(g.vol, i, p) -
                      dot3(g.grad[j], g.grad[p]) * bary_mass(g.vol, i, q) -
                      dot3(g.grad[i], g.grad[q]) * bary_mass(g.vol, j, p) +
                      dot3(g.grad[i], g.grad[p]) * bary_mass(g.vol, j, q);
        trip.push_back({ge[e1], ge[e2], sign[e1] * sign[e2] * w * mass});
      }
  }
  SparseMatrix M(mesh.num_edges(), mesh.num_edges(), std::move(trip), true);
  if (!bc) return M;
  DofMap d = edge_dof_map(mesh, true);
  return reduce(std::move(M), d, d);
}

SparseMatrix discrete_gradient(const Mesh& mesh, bool bc) {
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(mesh.num_edges()) * 2);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    trip.push_back({e, mesh.edges[e][1], 1.0});
    trip.push_back({e, mesh.edges[e][0], -1.0});
  }
  SparseMatrix G(mesh.num_edges(), mesh.num_vertices(), std::move(trip),
                 false);
  if (!bc) return G;
  return reduce(std::move(G), edge_dof_map(mesh, true),
                scalar_dof_map(mesh, true));
}

SparseMatrix nodal_to_edge_interpolation(const Mesh& mesh, bool bc) {
  const int nn = mesh.num_vertices();
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(mesh.num_edges()) * 6);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    int a = mesh.edges[e][0], b = mesh.edges[e][1];
    for (int c = 0; c < 3; ++c) {
      double d = mesh.vertices[b][c] - mesh.vertices[a][c];
      if (d == 0.0) continue;
      trip.push_back({e, c * nn + a, 0.5 * d});
      trip.push_back({e, c * nn + b, 0.5 * d});
    }
  }
  SparseMatrix P(mesh.num_edges(), 3 * nn, std::move(trip), false);
  if (!bc) return P;
  return reduce(std::move(P), edge_dof_map(mesh, true),
                vector_dof_map(mesh, true));
}

}  // namespace hxmax
