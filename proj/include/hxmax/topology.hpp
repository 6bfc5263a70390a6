// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HXMAX_TOPOLOGY_HPP
#define HXMAX_TOPOLOGY_HPP

#include <string>
#include <vector>

#include "hxmax/geometry.hpp"

namespace hxmax {

// Piecewise-constant coefficients, one pair per subdomain. tau >= 1 decides
// the comparability relations between alpha_k and beta_k.
struct CoefficientField {
  std::vector<double> alpha;
  std::vector<double> beta;
  double tau = 10.0;

  void validate(int count) const;
};

enum class CoeffClass {
  beta_below_alpha,  // beta <~ alpha only
  alpha_below_beta,  // alpha <~ beta only
  comparable         // both, i.e. alpha ~ beta
};

CoeffClass classify_pair(double alpha, double beta, double tau);
const char* to_string(CoeffClass c);

// Shared topology inputs reused by all analysis passes.
struct TopologyContext {
  const Mesh* mesh = nullptr;
  const SubdomainPartition* part = nullptr;
  SubdomainGraph graph;
  std::vector<std::vector<CoarseFace>> coarse_faces;  // per subdomain
};

TopologyContext build_topology_context(const Mesh& mesh,
                                       const SubdomainPartition& part);

// Gamma_k: union of the closed intersections with alpha-larger neighbors
// plus the contact with the domain boundary, realized on the fine mesh and
// reduced to coarse faces / extra edges / isolated vertices.
struct GammaSet {
  int k = -1;
  std::vector<int> faces;  // indices into coarse_faces[k]
  std::vector<std::vector<int>> extra_edges;  // maximal runs of fine edges
                                              // outside the listed faces
  std::vector<int> isolated_vertices;  // fine vertices outside faces/edges

  std::vector<int> fine_faces;
  std::vector<int> fine_edges;
  std::vector<int> fine_vertices;

  bool empty = true;
  bool connected = false;
  int num_components = 0;
  std::vector<char> component_lipschitz;

  bool faces_only() const {
    return extra_edges.empty() && isolated_vertices.empty();
  }
  bool faces_and_edges_only() const { return isolated_vertices.empty(); }
  // Union of connected "Lipschitz" unions of faces.
  bool lipschitz_face_union() const;
};

GammaSet gamma_set(const TopologyContext& ctx, const CoefficientField& coeffs,
                   int k);
std::vector<GammaSet> gamma_sets(const TopologyContext& ctx,
                                 const CoefficientField& coeffs);

// Quasi-monotonicity verdicts at every polyhedron vertex and along every
// fine edge of the polyhedron edge skeleton.
struct QmReport {
  struct VertexVerdict {
    int vertex;
    bool boundary;
    bool ok;
    std::vector<int> xi;  // subdomains with this polyhedron vertex
  };
  struct EdgeVerdict {
    int edge;
    bool boundary;
    bool ok;
    std::vector<int> xi;
  };
  std::vector<VertexVerdict> vertices;
  std::vector<EdgeVerdict> edges;
  bool vertices_ok = true;
  bool edges_ok = true;
  bool ok() const { return vertices_ok && edges_ok; }
};

QmReport check_quasi_monotone(const TopologyContext& ctx,
                              const CoefficientField& coeffs);

struct GeneralizedQm {
  bool ok = true;
  // (subdomain, fine vertex) witnesses: isolated vertices of Gamma_k.
  std::vector<std::pair<int, int>> witnesses;
};

GeneralizedQm check_generalized_qm(const std::vector<GammaSet>& gammas);

struct StrangeVertex {
  int vertex = -1;
  bool boundary = false;
  std::vector<int> im;       // subdomains with this polyhedron vertex
  std::vector<int> im_star;  // alpha-dominated through a face or edge at v
  std::vector<int> im_c;     // im \ im_star
  int n_v = 0;               // |im_c|
};

std::vector<StrangeVertex> detect_strange_vertices(
    const TopologyContext& ctx, const CoefficientField& coeffs);

int multiplicity_ns(const std::vector<StrangeVertex>& strange);

// Partition of the strange vertices and of Im^c_s used by the constrained
// decomposition: V^a/V^b over vertices, Im^c_{s,1/2} and Im^c_{s,a/b} over
// subdomains, Im = complement of Im^c_s.
struct StrangeClassification {
  std::vector<int> imc_s;  // union of im_c over strange vertices
  std::vector<int> im;     // complement
  std::vector<int> va_vertices;
  std::vector<int> vb_vertices;
  std::vector<int> imc_s1;
  std::vector<int> imc_s2;
  std::vector<int> imc_sa;
  std::vector<int> imc_sb;
};

StrangeClassification classify_strange(
    const TopologyContext& ctx, const CoefficientField& coeffs,
    const std::vector<StrangeVertex>& strange);

struct AssumptionReport {
  struct PairWitness {
    int i, j;
    std::string reason;
  };
  bool a31_ok = true;
  std::vector<PairWitness> a31_witnesses;
  double a31_margin = 0.0;  // max over pairs of beta_i / (tau beta_j)

  bool a32_ok = true;      // over the subdomains in Im
  bool a32_ok_all = true;  // over every subdomain
  std::vector<CoeffClass> pair_class;  // per subdomain
  std::vector<PairWitness> a32_witnesses;

  bool a33_ok = true;
  std::vector<PairWitness> a33_witnesses;
};

AssumptionReport check_assumptions(const TopologyContext& ctx,
                                   const CoefficientField& coeffs,
                                   const std::vector<GammaSet>& gammas,
                                   const StrangeClassification& cls);

// rho(h) class over the subdomains in Im: "one" when every Gamma_k there is
// a union of connected "Lipschitz" unions of faces, else "log".
std::string rho_class(const std::vector<GammaSet>& gammas,
                      const std::vector<int>& im);

std::vector<std::vector<int>> sigma_levels(const TopologyContext& ctx,
                                           const CoefficientField& coeffs);

struct AncestorReport {
  std::vector<int> depth;  // L_r(a)
  int exponent_m = 1;      // max over r of 2 L_r(a) + 1
};

AncestorReport ancestor_depths(const TopologyContext& ctx,
                               const CoefficientField& coeffs);

// Everything at once, as emitted by the analyze interface.
struct TopologyReport {
  std::vector<GammaSet> gammas;
  QmReport qm;
  GeneralizedQm gqm;
  std::vector<StrangeVertex> strange;
  int ns = 0;
  StrangeClassification cls;
  AssumptionReport assumptions;
  std::string rho;
  std::vector<std::vector<int>> sigma;
  AncestorReport ancestors;
};

TopologyReport analyze_topology(const TopologyContext& ctx,
                                const CoefficientField& coeffs);

}  // namespace hxmax

#endif  // HXMAX_TOPOLOGY_HPP
