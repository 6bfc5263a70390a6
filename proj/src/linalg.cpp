// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hxmax/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "hxmax/kernels.hpp"

namespace hxmax {

namespace {

Eigen::SparseMatrix<double> to_eigen(const SparseMatrix& m) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(m.nnz()));
  for (int r = 0; r < m.rows(); ++r)
    for (std::int64_t i = m.row_ptr()[r]; i < m.row_ptr()[r + 1]; ++i)
      trip.emplace_back(r, m.col_idx()[i], m.values()[i]);
  Eigen::SparseMatrix<double> out(m.rows(), m.cols());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

Eigen::MatrixXd to_eigen_dense(const SparseMatrix& m) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (std::int64_t i = m.row_ptr()[r]; i < m.row_ptr()[r + 1]; ++i)
      out(r, m.col_idx()[i]) = m.values()[i];
  return out;
}

// Locate the first non-positive pivot by a dense partial factorization;
// only worth the cubic cost on small systems.
int offending_pivot(const SparseMatrix& m) {
  if (m.rows() > 600) return -1;
  Eigen::MatrixXd a = to_eigen_dense(m);
  const int n = static_cast<int>(a.rows());
  for (int k = 0; k < n; ++k) {
    if (!(a(k, k) > 0.0)) return k;
    for (int i = k + 1; i < n; ++i) {
      double f = a(i, k) / a(k, k);
      a.row(i).tail(n - k) -= f * a.row(k).tail(n - k);
    }
  }
  return -1;
}

}  // namespace

struct CholeskyFactor::Impl {
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
  int n = 0;
};

CholeskyFactor::CholeskyFactor(const SparseMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("not square");
  auto impl = std::make_shared<Impl>();
  impl->n = m.rows();
  impl->llt.compute(to_eigen(m));
  if (impl->llt.info() != Eigen::Success) throw NotSpdError(offending_pivot(m));
  impl_ = std::move(impl);
}

VecD CholeskyFactor::solve(const VecD& b) const {
  if (static_cast<int>(b.size()) != impl_->n)
    throw std::invalid_argument("solve: size mismatch");
  Eigen::Map<const Eigen::VectorXd> bv(b.data(), impl_->n);
  Eigen::VectorXd x = impl_->llt.solve(bv);
  return VecD(x.data(), x.data() + impl_->n);
}

int CholeskyFactor::dim() const { return impl_->n; }

PcgResult pcg(const LinOp& A, const LinOp& B, const VecD& b, double tol,
              int maxit) {
  const std::size_t n = b.size();
  PcgResult res;
  res.x.assign(n, 0.0);
  VecD r = b;
  VecD z = B(r);
  double rz = kernels::dot(r.data(), z.data(), n);
  if (rz < 0.0) throw NotSpdError(-1);
  double rz0 = std::sqrt(rz);
  if (rz0 == 0.0) {
    res.converged = true;
    return res;
  }
  VecD p = z;
  double prev_alpha = 0.0, prev_beta = 0.0;
  for (int it = 0; it < maxit; ++it) {
    VecD q = A(p);
    double pq = kernels::dot(p.data(), q.data(), n);
    if (!(pq > 0.0)) throw NotSpdError(-1);
    double alpha = rz / pq;
    kernels::axpy(alpha, p.data(), res.x.data(), n);
    kernels::axpy(-alpha, q.data(), r.data(), n);
    z = B(r);
    double rz_new = kernels::dot(r.data(), z.data(), n);
    if (rz_new < 0.0) throw NotSpdError(-1);

    if (it == 0)
      res.lanczos_diag.push_back(1.0 / alpha);
    else
      res.lanczos_diag.push_back(1.0 / alpha + prev_beta / prev_alpha);
    double beta = rz_new / rz;
    res.lanczos_offdiag.push_back(std::sqrt(beta) / alpha);
    prev_alpha = alpha;
    prev_beta = beta;

    rz = rz_new;
    ++res.iterations;
    double rel = std::sqrt(rz) / rz0;
    res.residuals.push_back(rel);
    if (rel <= tol) {
      res.converged = true;
      break;
    }
    kernels::xpay(z.data(), beta, p.data(), n);
  }
  if (!res.lanczos_offdiag.empty()) res.lanczos_offdiag.pop_back();
  return res;
}

std::vector<double> ritz_values(const PcgResult& r) {
  const int m = static_cast<int>(r.lanczos_diag.size());
  if (m == 0) return {};
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) t(i, i) = r.lanczos_diag[i];
  for (int i = 0; i + 1 < m; ++i) {
    t(i, i + 1) = r.lanczos_offdiag[i];
    t(i + 1, i) = r.lanczos_offdiag[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  std::vector<double> out(es.eigenvalues().data(),
                          es.eigenvalues().data() + m);
  return out;
}

SpectrumReport dense_generalized_spectrum(const SparseMatrix& a,
                                          const LinOp& b) {
  const int n = a.rows();
  if (a.rows() != a.cols()) throw std::invalid_argument("not square");
  if (n > 4000) throw std::invalid_argument("dense spectrum limited to 4000");

  Eigen::MatrixXd bd(n, n);
  VecD e(n, 0.0);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    VecD col = b(e);
    e[j] = 0.0;
    for (int i = 0; i < n; ++i) bd(i, j) = col[i];
  }
  double scale = std::max(1e-300, bd.cwiseAbs().maxCoeff());
  double defect = (bd - bd.transpose()).cwiseAbs().maxCoeff();
  if (defect > 1e-10 * scale)
    throw std::runtime_error("preconditioner application is not symmetric");
  bd = 0.5 * (bd + bd.transpose()).eval();

  Eigen::LLT<Eigen::MatrixXd> llt(bd);
  if (llt.info() != Eigen::Success)
    throw NotSpdError(-1);
  Eigen::MatrixXd l = llt.matrixL();
  Eigen::MatrixXd ad = to_eigen_dense(a);
  Eigen::MatrixXd m = l.transpose() * ad * l;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (m + m.transpose()));

  SpectrumReport rep;
  rep.method = "dense";
  rep.eigenvalues.assign(es.eigenvalues().data(),
                         es.eigenvalues().data() + n);
  rep.lambda_min = rep.eigenvalues.front();
  rep.lambda_max = rep.eigenvalues.back();
  rep.cond = rep.lambda_max / rep.lambda_min;
  return rep;
}

SpectrumReport spectrum_from_ritz(const PcgResult& r) {
  SpectrumReport rep;
  rep.method = "lanczos";
  rep.eigenvalues = ritz_values(r);
  if (!rep.eigenvalues.empty()) {
    rep.lambda_min = rep.eigenvalues.front();
    rep.lambda_max = rep.eigenvalues.back();
    rep.cond = rep.lambda_max / rep.lambda_min;
  }
  rep.pcg_iterations = r.iterations;
  rep.pcg_converged = r.converged;
  return rep;
}

double reduced_condition(const SpectrumReport& s, int ns) {
  if (ns < 0 || ns >= static_cast<int>(s.eigenvalues.size()))
    throw std::out_of_range("reduced_condition: ns out of range");
  return s.lambda_max / s.eigenvalues[ns];
}

std::vector<double> dense_symmetric_eigenvalues(const SparseMatrix& a) {
  Eigen::MatrixXd ad = to_eigen_dense(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (ad + ad.transpose()));
  return std::vector<double>(es.eigenvalues().data(),
                             es.eigenvalues().data() + a.rows());
}

}  // namespace hxmax
