// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HXMAX_PROBE_HPP
#define HXMAX_PROBE_HPP

#include <memory>
#include <utility>

#include "hxmax/assembly.hpp"
#include "hxmax/linalg.hpp"
#include "hxmax/topology.hpp"

namespace hxmax {

// Optimal discrete decomposition v = G p + Pi w + R, measured in the
// weighted norms of the stability estimates. The optimal (minimum-energy)
// split lower-bounds the constants of the constructive decompositions, so
// it is valid for verifying the upper-bound claims.
struct DecompositionResult {
  VecD p;
  VecD w;
  VecD r;
  double objective = 0.0;  // |p|^2_{H1_beta} + |w|^2_{H1_*} + h^-2 |R|^2_{L2_alpha}
  double energy = 0.0;     // v^T A v
  double ratio = 0.0;      // sqrt(objective / energy)
  bool defined = false;    // false when v = 0
};

// F(v) = sum of signed edge dofs along the rim path of one coarse face
// minus the same along the other; F(G p) = 0 for p vanishing on the
// domain boundary.
struct ConstraintFunctional {
  int vertex = -1;
  int owner[2] = {-1, -1};
  VecD f;  // coefficients over the full edge space
  std::vector<std::vector<int>> paths;  // vertex sequences, start -> vertex

  double evaluate(const VecD& v_full) const;
  VecD reduced(const DofMap& edges) const;
};

// Reduced-space operators for the decomposition probe; the normal-equation
// factorization is cached across calls.
class ProbeContext {
 public:
  ProbeContext(const Mesh& mesh, const SubdomainPartition& part,
               const CoefficientField& coeffs);

  DecompositionResult decompose(const VecD& v) const;

  struct WorstCase {
    double ratio = 0.0;
    VecD witness;  // reduced edge vector, unit A-norm
  };
  // Maximal stability ratio over the free edge space; with a constraint
  // vector (reduced space) the search is projected onto its kernel.
  WorstCase worst_case(const VecD* constraint = nullptr) const;

  const SparseMatrix& a() const { return a_; }
  const DofMap& edge_map() const { return edges_; }
  int num_scalar() const { return np_; }

 private:
  DofMap edges_;
  int np_ = 0, nw_ = 0;
  SparseMatrix a_, g_, pi_, wmat_, hbeta_, hstar_, s_;
  std::shared_ptr<CholeskyFactor> s_factor_;
};

DecompositionResult empirical_decomposition(const VecD& v, const Mesh& mesh,
                                            const SubdomainPartition& part,
                                            const CoefficientField& coeffs);

std::pair<double, VecD> worst_case_ratio(const Mesh& mesh,
                                         const SubdomainPartition& part,
                                         const CoefficientField& coeffs);

// Interior strange vertex with |Im^c_v| = 2 only.
ConstraintFunctional strange_vertex_functional(const TopologyContext& ctx,
                                               const StrangeVertex& sv);

}  // namespace hxmax

#endif  // HXMAX_PROBE_HPP
