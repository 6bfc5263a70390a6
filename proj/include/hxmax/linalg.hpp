// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HXMAX_LINALG_HPP
#define HXMAX_LINALG_HPP

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

#include "hxmax/sparse.hpp"

namespace hxmax {

using LinOp = std::function<VecD(const VecD&)>;

struct NotSpdError : std::runtime_error {
  explicit NotSpdError(int index_)
      : std::runtime_error("matrix is not SPD (offending index " +
                           std::to_string(index_) + ")"),
        index(index_) {}
  int index;  // offending pivot, -1 when not recovered
};

// Sparse Cholesky with a deterministic fill-reducing ordering.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(const SparseMatrix& m);  // throws NotSpdError
  VecD solve(const VecD& b) const;
  int dim() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

struct PcgResult {
  VecD x;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residuals;  // relative B-norm residual per iteration
  // Lanczos tridiagonal harvested from the CG scalars.
  std::vector<double> lanczos_diag;
  std::vector<double> lanczos_offdiag;
};

// Preconditioned CG for A x = b; tolerance on the B-inner-product residual
// norm relative to the initial one. Breakdown (non-positive curvature)
// throws NotSpdError.
PcgResult pcg(const LinOp& A, const LinOp& B, const VecD& b,
              double tol = 1e-8, int maxit = 1000);

// Eigenvalues of the harvested Lanczos tridiagonal, ascending.
std::vector<double> ritz_values(const PcgResult& r);

struct SpectrumReport {
  std::string method;  // "dense" or "lanczos"
  std::vector<double> eigenvalues;  // ascending
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double cond = 0.0;
  int pcg_iterations = -1;
  bool pcg_converged = false;
};

// Spectrum of B A via the split preconditioner: materialize B on identity
// columns, factor B = L Lt, and solve the symmetric problem Lt A L.
SpectrumReport dense_generalized_spectrum(const SparseMatrix& a,
                                          const LinOp& b);

SpectrumReport spectrum_from_ritz(const PcgResult& r);

// kappa_{ns+1} = lambda_max / lambda_{ns+1} over the sorted spectrum.
double reduced_condition(const SpectrumReport& s, int ns);

// Dense eigenvalues of a symmetric sparse matrix (oracle helper).
std::vector<double> dense_symmetric_eigenvalues(const SparseMatrix& a);

}  // namespace hxmax

#endif  // HXMAX_LINALG_HPP
