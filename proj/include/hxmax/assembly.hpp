// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HXMAX_ASSEMBLY_HPP
#define HXMAX_ASSEMBLY_HPP

#include "hxmax/geometry.hpp"
#include "hxmax/sparse.hpp"
#include "hxmax/topology.hpp"

namespace hxmax {

// Full <-> reduced index maps after eliminating Dirichlet dofs.
struct DofMap {
  int n_full = 0;
  int n_red = 0;
  std::vector<int> full_to_red;  // -1 for constrained dofs
  std::vector<int> red_to_full;

  static DofMap all_free(int n);
};

// Edge dofs constrained on boundary edges (u x n = 0 on the boundary).
DofMap edge_dof_map(const Mesh& mesh, bool bc);
// Scalar nodal dofs constrained on boundary vertices.
DofMap scalar_dof_map(const Mesh& mesh, bool bc);
// Vector nodal dofs, component-major (dof = c*nodes + i), each component
// constrained like the scalar space.
DofMap vector_dof_map(const Mesh& mesh, bool bc);

// A = K_curl(alpha) + M(beta) on the lowest-order edge space; reduced to
// free dofs when bc is set.
SparseMatrix assemble_edge_system(const Mesh& mesh,
                                  const SubdomainPartition& part,
                                  const CoefficientField& coeffs, bool bc);

// Three scalar copies of (alpha grad, grad) + (beta ., .), component-major.
SparseMatrix assemble_vector_nodal(const Mesh& mesh,
                                   const SubdomainPartition& part,
                                   const CoefficientField& coeffs, bool bc);

// L_beta = (beta grad p, grad q) on the scalar nodal space.
SparseMatrix assemble_scalar_beta(const Mesh& mesh,
                                  const SubdomainPartition& part,
                                  const CoefficientField& coeffs, bool bc);

// Generic scalar operator (alpha grad, grad) + (beta ., .), used both for
// the components of the vector solve and for oracles.
SparseMatrix assemble_scalar(const Mesh& mesh, const SubdomainPartition& part,
                             const std::vector<double>& alpha,
                             const std::vector<double>& beta, bool bc);

// Weighted edge mass matrix (w u, v) on the edge space.
SparseMatrix assemble_edge_mass(const Mesh& mesh,
                                const SubdomainPartition& part,
                                const std::vector<double>& weight, bool bc);

// G: edges x nodes, +1 at the head and -1 at the tail of each edge.
SparseMatrix discrete_gradient(const Mesh& mesh, bool bc);

// Pi: edges x 3*nodes, exact edge-moment interpolation of nodal fields,
// lambda_e(w) = (w(a)+w(b))/2 . (x_b - x_a).
SparseMatrix nodal_to_edge_interpolation(const Mesh& mesh, bool bc);

}  // namespace hxmax

#endif  // HXMAX_ASSEMBLY_HPP
