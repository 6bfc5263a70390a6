// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HXMAX_HX_HPP
#define HXMAX_HX_HPP

#include <memory>

#include "hxmax/assembly.hpp"
#include "hxmax/linalg.hpp"

namespace hxmax {

// B = D^-1 + Pi Delta^-1 Pi^T + G L^-1 G^T with exact inner solves.
class HxPreconditioner {
 public:
  HxPreconditioner() = default;
  VecD apply(const VecD& r) const;
  LinOp op() const;
  int dim() const { return static_cast<int>(inv_diag_.size()); }

 private:
  VecD inv_diag_;
  SparseMatrix pi_, pi_t_, g_, g_t_;
  std::shared_ptr<CholeskyFactor> delta_, lbeta_;
  friend HxPreconditioner build_hx(const SparseMatrix&, const SparseMatrix&,
                                   const SparseMatrix&, const SparseMatrix&,
                                   const SparseMatrix&);
};

HxPreconditioner build_hx(const SparseMatrix& a, const SparseMatrix& delta,
                          const SparseMatrix& lbeta, const SparseMatrix& g,
                          const SparseMatrix& pi);

// Assembled edge system plus its preconditioner on the free dofs. The
// gradient-space operator is formed as G^T A G, which coincides with the
// beta-weighted scalar Laplacian by the curl-kernel identity.
struct HxSystem {
  SparseMatrix a;
  HxPreconditioner b;
  DofMap edges;
};

HxSystem build_hx_system(const Mesh& mesh, const SubdomainPartition& part,
                         const CoefficientField& coeffs);

// C = A * B for CSR matrices (deterministic row-wise accumulation).
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

// Condition measurement: dense spectrum of B A, or Ritz values harvested
// from a PCG run on the given right-hand side.
SpectrumReport measure_dense(const SparseMatrix& a, const LinOp& b);
SpectrumReport measure_lanczos(const SparseMatrix& a, const LinOp& b,
                               const VecD& rhs, double tol = 1e-10,
                               int maxit = 1000);

}  // namespace hxmax

#endif  // HXMAX_HX_HPP
