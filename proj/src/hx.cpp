// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hxmax/hx.hpp"

#include <map>
#include <stdexcept>

namespace hxmax {

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shapes");
  std::vector<Triplet> trip;
  std::map<int, double> row;
  for (int i = 0; i < a.rows(); ++i) {
    row.clear();
    for (std::int64_t k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k) {
      int j = a.col_idx()[k];
      double av = a.values()[k];
      for (std::int64_t l = b.row_ptr()[j]; l < b.row_ptr()[j + 1]; ++l)
        row[b.col_idx()[l]] += av * b.values()[l];
    }
    for (const auto& [j, v] : row) trip.push_back({i, j, v});
  }
  return SparseMatrix(a.rows(), b.cols(), std::move(trip), false);
}

VecD HxPreconditioner::apply(const VecD& r) const {
  if (r.size() != inv_diag_.size())
    throw std::invalid_argument("hx apply: size mismatch");
  VecD out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = inv_diag_[i] * r[i];
  VecD w = pi_.apply(delta_->solve(pi_t_.apply(r)));
  VecD p = g_.apply(lbeta_->solve(g_t_.apply(r)));
  for (std::size_t i = 0; i < r.size(); ++i) out[i] += w[i] + p[i];
  return out;
}

LinOp HxPreconditioner::op() const {
  return [*this](const VecD& r) { return apply(r); };
}

HxPreconditioner build_hx(const SparseMatrix& a, const SparseMatrix& delta,
                          const SparseMatrix& lbeta, const SparseMatrix& g,
                          const SparseMatrix& pi) {
  if (pi.rows() != a.rows() || g.rows() != a.rows() ||
      pi.cols() != delta.rows() || g.cols() != lbeta.rows() ||
      a.rows() != a.cols())
    throw std::invalid_argument("build_hx: inconsistent dimensions");
  HxPreconditioner b;
  b.inv_diag_ = a.diagonal();
  for (double& d : b.inv_diag_) {
    if (!(d > 0.0)) throw NotSpdError(-1);
    d = 1.0 / d;
  }
  b.pi_ = pi;
  b.pi_t_ = pi.transpose();
  b.g_ = g;
  b.g_t_ = g.transpose();
  b.delta_ = std::make_shared<CholeskyFactor>(delta);
  b.lbeta_ = std::make_shared<CholeskyFactor>(lbeta);
  return b;
}

HxSystem build_hx_system(const Mesh& mesh, const SubdomainPartition& part,
                         const CoefficientField& coeffs) {
  HxSystem sys;
  sys.edges = edge_dof_map(mesh, true);
  sys.a = assemble_edge_system(mesh, part, coeffs, true);
  SparseMatrix delta = assemble_vector_nodal(mesh, part, coeffs, true);
  SparseMatrix g = discrete_gradient(mesh, true);
  SparseMatrix pi = nodal_to_edge_interpolation(mesh, true);
  SparseMatrix lbeta = multiply(g.transpose(), multiply(sys.a, g));
  sys.b = build_hx(sys.a, delta, lbeta, g, pi);
  return sys;
}

SpectrumReport measure_dense(const SparseMatrix& a, const LinOp& b) {
  return dense_generalized_spectrum(a, b);
}

SpectrumReport measure_lanczos(const SparseMatrix& a, const LinOp& b,
                               const VecD& rhs, double tol, int maxit) {
  auto aop = [&a](const VecD& x) { return a.apply(x); };
  PcgResult r = pcg(aop, b, rhs, tol, maxit);
  return spectrum_from_ritz(r);
}

}  // namespace hxmax
