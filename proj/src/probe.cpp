// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hxmax/probe.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>

#include <Eigen/Dense>

#include "hxmax/hx.hpp"
#include "hxmax/kernels.hpp"

namespace hxmax {

namespace {

double quad_form(const SparseMatrix& m, const VecD& x) {
  VecD y = m.apply(x);
  return kernels::dot(x.data(), y.data(), x.size());
}

Eigen::MatrixXd to_eigen_dense(const SparseMatrix& m) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (std::int64_t i = m.row_ptr()[r]; i < m.row_ptr()[r + 1]; ++i)
      out(r, m.col_idx()[i]) = m.values()[i];
  return out;
}

}  // namespace

ProbeContext::ProbeContext(const Mesh& mesh, const SubdomainPartition& part,
                           const CoefficientField& coeffs) {
  coeffs.validate(part.count);
  edges_ = edge_dof_map(mesh, true);
  a_ = assemble_edge_system(mesh, part, coeffs, true);
  g_ = discrete_gradient(mesh, true);
  pi_ = nodal_to_edge_interpolation(mesh, true);
  double h2 = static_cast<double>(mesh.n) * mesh.n;  // h^-2
  std::vector<double> walpha(coeffs.alpha);
  for (double& w : walpha) w *= h2;
  wmat_ = assemble_edge_mass(mesh, part, walpha, true);
  hbeta_ = assemble_scalar(mesh, part, coeffs.beta, coeffs.beta, true);
  hstar_ = assemble_vector_nodal(mesh, part, coeffs, true);
  np_ = hbeta_.rows();
  nw_ = hstar_.rows();

  // Normal equations of the elimination of R:
  // [ H_beta + G'WG   G'W Pi        ] [p]   [G'W v ]
  // [ Pi'W G          H_* + Pi'W Pi ] [w] = [Pi'W v]
  SparseMatrix gt = g_.transpose(), pit = pi_.transpose();
  SparseMatrix gwg = multiply(gt, multiply(wmat_, g_));
  SparseMatrix gwp = multiply(gt, multiply(wmat_, pi_));
  SparseMatrix pwp = multiply(pit, multiply(wmat_, pi_));
  std::vector<Triplet> trip;
  auto add_block = [&trip](const SparseMatrix& m, int r0, int c0) {
    for (int r = 0; r < m.rows(); ++r)
      for (std::int64_t i = m.row_ptr()[r]; i < m.row_ptr()[r + 1]; ++i)
        trip.push_back({r0 + r, c0 + m.col_idx()[i], m.values()[i]});
  };
  add_block(hbeta_, 0, 0);
  add_block(gwg, 0, 0);
  add_block(gwp, 0, np_);
  add_block(gwp.transpose(), np_, 0);
  add_block(hstar_, np_, np_);
  add_block(pwp, np_, np_);
  s_ = SparseMatrix(np_ + nw_, np_ + nw_, std::move(trip), true);
  s_factor_ = std::make_shared<CholeskyFactor>(s_);
}

DecompositionResult ProbeContext::decompose(const VecD& v) const {
  if (static_cast<int>(v.size()) != a_.rows())
    throw std::invalid_argument("decompose: size mismatch");
  DecompositionResult res;
  res.energy = quad_form(a_, v);
  VecD wv = wmat_.apply(v);
  VecD gtv = g_.transpose().apply(wv);
  VecD ptv = pi_.transpose().apply(wv);
  VecD rhs(np_ + nw_);
  std::copy(gtv.begin(), gtv.end(), rhs.begin());
  std::copy(ptv.begin(), ptv.end(), rhs.begin() + np_);
  VecD sol = s_factor_->solve(rhs);
  res.p.assign(sol.begin(), sol.begin() + np_);
  res.w.assign(sol.begin() + np_, sol.end());
  VecD gp = g_.apply(res.p);
  VecD pw = pi_.apply(res.w);
  res.r.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    res.r[i] = v[i] - gp[i] - pw[i];
  res.objective = quad_form(hbeta_, res.p) + quad_form(hstar_, res.w) +
                  quad_form(wmat_, res.r);
  res.defined = res.energy > 0.0;
  res.ratio = res.defined ? std::sqrt(res.objective / res.energy) : 0.0;
  return res;
}

ProbeContext::WorstCase ProbeContext::worst_case(const VecD* constraint) const {
  const int ne = a_.rows();
  if (ne > 4000) throw std::invalid_argument("probe limited to 4000 dofs");
  // With X = [G Pi] the minimized objective is the Schur form
  // J_opt(v) = v' (W - W X S^-1 X' W) v  (S already carries the H terms),
  // so ratio^2 = lambda_max of the pencil (M, A).
  Eigen::MatrixXd m(ne, ne);
  VecD e(ne, 0.0);
  for (int j = 0; j < ne; ++j) {
    e[j] = 1.0;
    VecD we = wmat_.apply(e);
    e[j] = 0.0;
    VecD gtv = g_.transpose().apply(we);
    VecD ptv = pi_.transpose().apply(we);
    VecD rhs(np_ + nw_);
    std::copy(gtv.begin(), gtv.end(), rhs.begin());
    std::copy(ptv.begin(), ptv.end(), rhs.begin() + np_);
    VecD sol = s_factor_->solve(rhs);
    VecD p(sol.begin(), sol.begin() + np_);
    VecD w(sol.begin() + np_, sol.end());
    VecD back = g_.apply(p);
    VecD back2 = pi_.apply(w);
    for (int i = 0; i < ne; ++i) back[i] += back2[i];
    VecD wb = wmat_.apply(back);
    for (int i = 0; i < ne; ++i) m(i, j) = we[i] - wb[i];
  }
  m = 0.5 * (m + m.transpose()).eval();
  Eigen::MatrixXd ad = to_eigen_dense(a_);
  ad = 0.5 * (ad + ad.transpose()).eval();

  Eigen::MatrixXd z;  // search basis (identity or kernel of the constraint)
  if (constraint) {
    Eigen::Map<const Eigen::VectorXd> f(constraint->data(),
                                        constraint->size());
    if (static_cast<int>(constraint->size()) != ne || f.norm() == 0.0)
      throw std::invalid_argument("invalid constraint vector");
    // Householder reflection mapping f to a multiple of e_0; the remaining
    // columns span ker f'.
    Eigen::VectorXd u = f;
    u(0) += (f(0) >= 0.0 ? 1.0 : -1.0) * f.norm();
    u.normalize();
    Eigen::MatrixXd h =
        Eigen::MatrixXd::Identity(ne, ne) - 2.0 * u * u.transpose();
    z = h.rightCols(ne - 1);
  } else {
    z = Eigen::MatrixXd::Identity(ne, ne);
  }
  Eigen::MatrixXd mz = z.transpose() * m * z;
  Eigen::MatrixXd az = z.transpose() * ad * z;
  mz = 0.5 * (mz + mz.transpose()).eval();
  az = 0.5 * (az + az.transpose()).eval();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(mz, az);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("generalized eigensolve failed");
  const int nz = static_cast<int>(mz.rows());
  double lmax = es.eigenvalues()(nz - 1);
  Eigen::VectorXd vec = z * es.eigenvectors().col(nz - 1);

  WorstCase out;
  out.ratio = std::sqrt(std::max(0.0, lmax));
  double an = std::sqrt(vec.dot(ad * vec));
  if (an > 0.0) vec /= an;
  out.witness.assign(vec.data(), vec.data() + ne);
  return out;
}

DecompositionResult empirical_decomposition(const VecD& v, const Mesh& mesh,
                                            const SubdomainPartition& part,
                                            const CoefficientField& coeffs) {
  return ProbeContext(mesh, part, coeffs).decompose(v);
}

std::pair<double, VecD> worst_case_ratio(const Mesh& mesh,
                                         const SubdomainPartition& part,
                                         const CoefficientField& coeffs) {
  auto wc = ProbeContext(mesh, part, coeffs).worst_case();
  return {wc.ratio, wc.witness};
}

double ConstraintFunctional::evaluate(const VecD& v_full) const {
  if (v_full.size() != f.size())
    throw std::invalid_argument("constraint: size mismatch");
  return kernels::dot(f.data(), v_full.data(), f.size());
}

VecD ConstraintFunctional::reduced(const DofMap& edges) const {
  VecD out(edges.n_red, 0.0);
  for (int i = 0; i < edges.n_red; ++i) out[i] = f[edges.red_to_full[i]];
  return out;
}

namespace {

// Signed rim path of a coarse face from the smallest admissible boundary
// vertex to the target vertex; accumulated into f with the given weight.
std::vector<int> accumulate_rim_path(const Mesh& mesh, const CoarseFace& cf,
                                     int target, double weight, VecD& f) {
  std::map<int, std::vector<std::pair<int, int>>> adj;  // v -> (next, edge)
  for (int e : cf.boundary_edges) {
    int a = mesh.edges[e][0], b = mesh.edges[e][1];
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  int start = -1;
  for (const auto& [v, nb] : adj)
    if (mesh.vertex_boundary[v]) {
      start = v;
      break;
    }
  if (start < 0) throw std::runtime_error("rim does not touch the boundary");
  // Shortest path with deterministic tie-breaking (ascending neighbor ids).
  std::map<int, int> parent;
  parent[start] = start;
  std::queue<int> q;
  q.push(start);
  while (!q.empty() && !parent.count(target)) {
    int v = q.front();
    q.pop();
    auto nb = adj[v];
    std::sort(nb.begin(), nb.end());
    for (const auto& [u, e] : nb)
      if (!parent.count(u)) {
        parent[u] = v;
        q.push(u);
      }
  }
  if (!parent.count(target))
    throw std::runtime_error("strange vertex not on the face rim");
  std::vector<int> path;
  for (int v = target; v != start; v = parent[v]) path.push_back(v);
  path.push_back(start);
  std::reverse(path.begin(), path.end());
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    int a = path[i], b = path[i + 1];
    int e = mesh.edge_index(a, b);
    f[e] += (b > a ? 1.0 : -1.0) * weight;
  }
  return path;
}

}  // namespace

ConstraintFunctional strange_vertex_functional(const TopologyContext& ctx,
                                               const StrangeVertex& sv) {
  const Mesh& mesh = *ctx.mesh;
  if (sv.boundary || sv.n_v != 2)
    throw std::runtime_error(
        "constraint functional needs an interior strange vertex with n_v = 2");
  ConstraintFunctional cf;
  cf.vertex = sv.vertex;
  cf.f.assign(mesh.num_edges(), 0.0);
  for (int i = 0; i < 2; ++i) {
    int r = sv.im_c[i];
    cf.owner[i] = r;
    const CoarseFace* chosen = nullptr;
    for (const auto& face : ctx.coarse_faces[r]) {
      if (std::find(face.fine_vertices.begin(), face.fine_vertices.end(),
                    sv.vertex) == face.fine_vertices.end())
        continue;
      bool touches_boundary = false;
      for (int e : face.boundary_edges) {
        if (mesh.vertex_boundary[mesh.edges[e][0]] ||
            mesh.vertex_boundary[mesh.edges[e][1]])
          touches_boundary = true;
      }
      if (!touches_boundary) continue;
      chosen = &face;
      break;
    }
    if (!chosen)
      throw std::runtime_error("no admissible coarse face at strange vertex");
    cf.paths.push_back(accumulate_rim_path(mesh, *chosen, sv.vertex,
                                           i == 0 ? 1.0 : -1.0, cf.f));
  }
  return cf;
}

}  // namespace hxmax
