// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hxmax/topology.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hxmax {

namespace {

// Lattice index of a mesh coordinate.
int lat(double x, int n) { return static_cast<int>(std::lround(x * n)); }

// Axis along which an edge runs, or -1 for a diagonal edge.
int edge_axis(const Mesh& mesh, int e) {
  const Point& a = mesh.vertices[mesh.edges[e][0]];
  const Point& b = mesh.vertices[mesh.edges[e][1]];
  int axis = -1;
  int ndiff = 0;
  for (int i = 0; i < 3; ++i)
    if (a[i] != b[i]) {
      axis = i;
      ++ndiff;
    }
  return ndiff == 1 ? axis : -1;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Do subdomains k and l share at least one coarse face (l == -1: does k have
// a coarse face on the domain boundary)?
bool shares_face(const SubdomainGraph& g, int k, int l) {
  if (l < 0) return g.domain_boundary[k].cls == IsectClass::face;
  return g.cls(k, l) == IsectClass::face;
}

// The closed intersection of k and l (or of k and the domain boundary for
// l == -1) is exactly the single vertex v.
bool meets_only_at(const SubdomainGraph& g, int k, int l, int v) {
  const SharedEntities& s =
      l < 0 ? g.domain_boundary[k] : g.shared(k, l);
  return s.cls == IsectClass::vertex && s.vertices.size() == 1 &&
         s.vertices[0] == v;
}

// The intersection of k and l contains a face or an edge through v.
bool meets_through_face_or_edge_at(const Mesh& mesh, const SubdomainGraph& g,
                                   int k, int l, int v) {
  const SharedEntities& s = g.shared(k, l);
  for (int f : s.faces) {
    const auto& fv = mesh.faces[f];
    if (fv[0] == v || fv[1] == v || fv[2] == v) return true;
  }
  for (int e : s.edges)
    if (mesh.edges[e][0] == v || mesh.edges[e][1] == v) return true;
  return false;
}

// Face-chain marking used by the quasi-monotonicity checks: starting from
// the seed set, repeatedly admit r when some admitted r' with
// alpha_{r'} >= alpha_r shares a coarse face with r.
std::set<int> propagate(const SubdomainGraph& g, const CoefficientField& c,
                        const std::vector<int>& xi, std::set<int> marked) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int r : xi) {
      if (marked.count(r)) continue;
      for (int rp : marked)
        if (c.alpha[rp] >= c.alpha[r] && shares_face(g, r, rp)) {
          marked.insert(r);
          changed = true;
          break;
        }
    }
  }
  return marked;
}

bool qm_at(const SubdomainGraph& g, const CoefficientField& c,
           const std::vector<int>& xi, bool boundary) {
  if (xi.size() <= 1) {
    if (!boundary) return true;
  } else {
    double amax = 0.0;
    for (int r : xi) amax = std::max(amax, c.alpha[r]);
    bool reached = false;
    for (int seed : xi) {
      if (c.alpha[seed] != amax) continue;
      auto marked = propagate(g, c, xi, {seed});
      if (static_cast<int>(marked.size()) == static_cast<int>(xi.size())) {
        reached = true;
        break;
      }
    }
    if (!reached) return false;
  }
  if (!boundary) return true;
  // Every member must additionally reach, through a non-decreasing face
  // chain, a subdomain meeting the domain boundary in a face.
  std::set<int> seeds;
  for (int r : xi)
    if (shares_face(g, r, -1)) seeds.insert(r);
  auto marked = propagate(g, c, xi, std::move(seeds));
  return static_cast<int>(marked.size()) == static_cast<int>(xi.size());
}

}  // namespace

void CoefficientField::validate(int count) const {
  if (static_cast<int>(alpha.size()) != count ||
      static_cast<int>(beta.size()) != count)
    throw std::invalid_argument("coefficient count mismatch");
  for (double a : alpha)
    if (!(a > 0.0)) throw std::invalid_argument("alpha must be positive");
  for (double b : beta)
    if (!(b > 0.0)) throw std::invalid_argument("beta must be positive");
  if (!(tau >= 1.0)) throw std::invalid_argument("tau must be >= 1");
}

CoeffClass classify_pair(double alpha, double beta, double tau) {
  bool b_le_a = beta <= tau * alpha;
  bool a_le_b = alpha <= tau * beta;
  if (b_le_a && a_le_b) return CoeffClass::comparable;
  return b_le_a ? CoeffClass::beta_below_alpha : CoeffClass::alpha_below_beta;
}

const char* to_string(CoeffClass c) {
  switch (c) {
    case CoeffClass::beta_below_alpha: return "beta<~alpha";
    case CoeffClass::alpha_below_beta: return "alpha<~beta";
    case CoeffClass::comparable: return "alpha~beta";
  }
  return "?";
}

TopologyContext build_topology_context(const Mesh& mesh,
                                       const SubdomainPartition& part) {
  TopologyContext ctx;
  ctx.mesh = &mesh;
  ctx.part = &part;
  ctx.graph = coarse_topology(mesh, part);
  ctx.coarse_faces.resize(part.count);
  for (int k = 0; k < part.count; ++k)
    ctx.coarse_faces[k] = coarse_faces_of(mesh, part, k);
  return ctx;
}

bool GammaSet::lipschitz_face_union() const {
  if (empty) return true;
  if (!faces_only()) return false;
  for (char c : component_lipschitz)
    if (!c) return false;
  return true;
}

GammaSet gamma_set(const TopologyContext& ctx, const CoefficientField& coeffs,
                   int k) {
  const Mesh& mesh = *ctx.mesh;
  if (k < 0 || k >= ctx.part->count) throw std::out_of_range("subdomain");
  GammaSet g;
  g.k = k;

  std::vector<char> in_face(mesh.num_faces(), 0);
  std::vector<char> in_edge(mesh.num_edges(), 0);
  std::vector<char> in_vert(mesh.num_vertices(), 0);

  for (int i = 0; i < static_cast<int>(ctx.coarse_faces[k].size()); ++i) {
    const CoarseFace& cf = ctx.coarse_faces[k][i];
    if (cf.neighbor >= 0 &&
        !(coeffs.alpha[cf.neighbor] >= coeffs.alpha[k]))
      continue;
    g.faces.push_back(i);
    for (int f : cf.fine_faces) in_face[f] = 1;
    for (int e : cf.fine_edges) in_edge[e] = 1;
    for (int v : cf.fine_vertices) in_vert[v] = 1;
  }
  for (int l = 0; l < ctx.part->count; ++l) {
    if (l == k || !(coeffs.alpha[l] >= coeffs.alpha[k])) continue;
    const SharedEntities& s = ctx.graph.shared(k, l);
    for (int f : s.faces) in_face[f] = 1;
    for (int e : s.edges) in_edge[e] = 1;
    for (int v : s.vertices) in_vert[v] = 1;
  }
  {
    const SharedEntities& s = ctx.graph.domain_boundary[k];
    for (int f : s.faces) in_face[f] = 1;
    for (int e : s.edges) in_edge[e] = 1;
    for (int v : s.vertices) in_vert[v] = 1;
  }

  for (int f = 0; f < mesh.num_faces(); ++f)
    if (in_face[f]) g.fine_faces.push_back(f);
  for (int e = 0; e < mesh.num_edges(); ++e)
    if (in_edge[e]) g.fine_edges.push_back(e);
  for (int v = 0; v < mesh.num_vertices(); ++v)
    if (in_vert[v]) g.fine_vertices.push_back(v);
  g.empty = g.fine_vertices.empty();

  // Fine edges outside every listed face, grouped into maximal straight runs
  // (the coarse edges of Gamma_k).
  std::vector<char> edge_in_face(mesh.num_edges(), 0);
  for (int f : g.fine_faces)
    for (int e : mesh.face_edges(f)) edge_in_face[e] = 1;
  std::map<std::array<int, 3>, std::vector<std::pair<int, int>>> lines;
  for (int e : g.fine_edges) {
    if (edge_in_face[e]) continue;
    int axis = edge_axis(mesh, e);
    const Point& a = mesh.vertices[mesh.edges[e][0]];
    const Point& b = mesh.vertices[mesh.edges[e][1]];
    if (axis < 0) {
      g.extra_edges.push_back({e});  // diagonal stray edge; keep it visible
      continue;
    }
    int p = (axis + 1) % 3, q = (axis + 2) % 3;
    std::array<int, 3> key{axis, lat(a[p], mesh.n), lat(a[q], mesh.n)};
    int pos = std::min(lat(a[axis], mesh.n), lat(b[axis], mesh.n));
    lines[key].push_back({pos, e});
  }
  for (auto& [key, run] : lines) {
    std::sort(run.begin(), run.end());
    std::vector<int> cur;
    for (std::size_t i = 0; i < run.size(); ++i) {
      if (!cur.empty() && run[i].first != run[i - 1].first + 1) {
        g.extra_edges.push_back(cur);
        cur.clear();
      }
      cur.push_back(run[i].second);
    }
    if (!cur.empty()) g.extra_edges.push_back(cur);
  }

  // Vertices covered by no edge of Gamma_k are isolated.
  std::vector<char> vert_in_edge(mesh.num_vertices(), 0);
  for (int e : g.fine_edges) {
    vert_in_edge[mesh.edges[e][0]] = 1;
    vert_in_edge[mesh.edges[e][1]] = 1;
  }
  for (int v : g.fine_vertices)
    if (!vert_in_edge[v]) g.isolated_vertices.push_back(v);

  if (g.empty) {
    g.connected = true;
    return g;
  }

  // Connected components of the closed union.
  UnionFind uf(mesh.num_vertices());
  for (int e : g.fine_edges) uf.unite(mesh.edges[e][0], mesh.edges[e][1]);
  std::map<int, int> roots;
  for (int v : g.fine_vertices) {
    int r = uf.find(v);
    if (!roots.count(r)) roots[r] = static_cast<int>(roots.size());
  }
  g.num_components = static_cast<int>(roots.size());
  g.connected = g.num_components == 1;

  // Per-component "Lipschitz union of faces" verdict: only faces, and the
  // faces incident to each vertex form one fan connected through edges at
  // that vertex (a vertex-only pinch fails this test).
  g.component_lipschitz.assign(g.num_components, 1);
  for (int v : g.isolated_vertices)
    g.component_lipschitz[roots[uf.find(v)]] = 0;
  for (const auto& run : g.extra_edges)
    g.component_lipschitz[roots[uf.find(mesh.edges[run[0]][0])]] = 0;
  std::vector<std::vector<int>> vert_faces(mesh.num_vertices());
  for (int f : g.fine_faces)
    for (int v : mesh.faces[f]) vert_faces[v].push_back(f);
  for (int v : g.fine_vertices) {
    const auto& fs = vert_faces[v];
    if (fs.size() <= 1) continue;
    // Connect faces around v through shared edges containing v.
    std::map<int, std::vector<int>> edge_to_face;
    for (int f : fs)
      for (int e : mesh.face_edges(f)) {
        if (mesh.edges[e][0] != v && mesh.edges[e][1] != v) continue;
        edge_to_face[e].push_back(f);
      }
    UnionFind fu(static_cast<int>(fs.size()));
    std::map<int, int> fidx;
    for (int i = 0; i < static_cast<int>(fs.size()); ++i) fidx[fs[i]] = i;
    for (const auto& [e, ff] : edge_to_face)
      for (std::size_t i = 1; i < ff.size(); ++i)
        fu.unite(fidx[ff[0]], fidx[ff[i]]);
    int root0 = fu.find(0);
    for (int i = 1; i < static_cast<int>(fs.size()); ++i)
      if (fu.find(i) != root0) {
        g.component_lipschitz[roots[uf.find(v)]] = 0;
        break;
      }
  }
  return g;
}

std::vector<GammaSet> gamma_sets(const TopologyContext& ctx,
                                 const CoefficientField& coeffs) {
  coeffs.validate(ctx.part->count);
  std::vector<GammaSet> out;
  out.reserve(ctx.part->count);
  for (int k = 0; k < ctx.part->count; ++k)
    out.push_back(gamma_set(ctx, coeffs, k));
  return out;
}

QmReport check_quasi_monotone(const TopologyContext& ctx,
                              const CoefficientField& coeffs) {
  coeffs.validate(ctx.part->count);
  const Mesh& mesh = *ctx.mesh;
  const SubdomainPartition& part = *ctx.part;
  QmReport rep;

  for (int v = 0; v < mesh.num_vertices(); ++v) {
    std::vector<int> xi;
    for (int k = 0; k < part.count; ++k)
      if (part.is_coarse_vertex(k, v)) xi.push_back(k);
    if (xi.empty()) continue;
    bool boundary = mesh.vertex_boundary[v] != 0;
    bool ok = qm_at(ctx.graph, coeffs, xi, boundary);
    rep.vertices.push_back({v, boundary, ok, xi});
    if (!ok) rep.vertices_ok = false;
  }

  const int n = mesh.n;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    int axis = edge_axis(mesh, e);
    if (axis < 0) continue;
    const Point& a = mesh.vertices[mesh.edges[e][0]];
    const Point& b = mesh.vertices[mesh.edges[e][1]];
    int p = (axis + 1) % 3, q = (axis + 2) % 3;
    int layer = std::min(lat(a[axis], n), lat(b[axis], n));
    int ip = lat(a[p], n), iq = lat(a[q], n);
    std::vector<std::uint8_t> occ(part.count, 0);
    for (int bit = 0; bit < 4; ++bit) {
      int cp = ip - 1 + (bit & 1);
      int cq = iq - 1 + ((bit >> 1) & 1);
      if (cp < 0 || cq < 0 || cp >= n || cq >= n) continue;
      int cell[3];
      cell[axis] = layer;
      cell[p] = cp;
      cell[q] = cq;
      int k = part.cell_subdomain[(cell[0] * n + cell[1]) * n + cell[2]];
      occ[k] |= static_cast<std::uint8_t>(1 << bit);
    }
    std::vector<int> xi;
    for (int k = 0; k < part.count; ++k) {
      std::uint8_t o = occ[k];
      if (o == 0 || o == 15) continue;
      bool inv_p = ((o >> 0) & 1) == ((o >> 1) & 1) &&
                   ((o >> 2) & 1) == ((o >> 3) & 1);
      bool inv_q = ((o >> 0) & 1) == ((o >> 2) & 1) &&
                   ((o >> 1) & 1) == ((o >> 3) & 1);
      if (!inv_p && !inv_q) xi.push_back(k);
    }
    if (xi.empty()) continue;
    bool boundary = mesh.edge_boundary[e] != 0;
    bool ok = qm_at(ctx.graph, coeffs, xi, boundary);
    rep.edges.push_back({e, boundary, ok, xi});
    if (!ok) rep.edges_ok = false;
  }
  return rep;
}

GeneralizedQm check_generalized_qm(const std::vector<GammaSet>& gammas) {
  GeneralizedQm g;
  for (const auto& gs : gammas)
    for (int v : gs.isolated_vertices) {
      g.ok = false;
      g.witnesses.push_back({gs.k, v});
    }
  return g;
}

std::vector<StrangeVertex> detect_strange_vertices(
    const TopologyContext& ctx, const CoefficientField& coeffs) {
  coeffs.validate(ctx.part->count);
  const Mesh& mesh = *ctx.mesh;
  const SubdomainPartition& part = *ctx.part;
  std::vector<StrangeVertex> out;

  for (int v = 0; v < mesh.num_vertices(); ++v) {
    std::vector<int> im;
    for (int k = 0; k < part.count; ++k)
      if (part.is_coarse_vertex(k, v)) im.push_back(k);
    if (im.empty()) continue;
    bool boundary = mesh.vertex_boundary[v] != 0;
    double amax = 0.0;
    for (int r : im) amax = std::max(amax, coeffs.alpha[r]);

    bool strange = false;
    for (int r : im) {
      if (boundary) {
        if (coeffs.alpha[r] == amax && meets_only_at(ctx.graph, r, -1, v)) {
          strange = true;
          break;
        }
      } else {
        bool has_larger = false;
        bool all_point = true;
        for (int rp : im) {
          if (rp == r || !(coeffs.alpha[rp] >= coeffs.alpha[r])) continue;
          has_larger = true;
          if (!meets_only_at(ctx.graph, r, rp, v)) all_point = false;
        }
        if (has_larger && all_point) {
          strange = true;
          break;
        }
      }
    }
    if (!strange) continue;

    StrangeVertex sv;
    sv.vertex = v;
    sv.boundary = boundary;
    sv.im = im;
    for (int r : im) {
      bool star = false;
      for (int rp : im) {
        if (rp == r || !(coeffs.alpha[rp] >= coeffs.alpha[r])) continue;
        if (meets_through_face_or_edge_at(mesh, ctx.graph, r, rp, v)) {
          star = true;
          break;
        }
      }
      (star ? sv.im_star : sv.im_c).push_back(r);
    }
    sv.n_v = static_cast<int>(sv.im_c.size());
    out.push_back(std::move(sv));
  }
  return out;
}

int multiplicity_ns(const std::vector<StrangeVertex>& strange) {
  int ns = 0;
  for (const auto& sv : strange) ns += sv.boundary ? sv.n_v : sv.n_v - 1;
  return ns;
}

namespace {

// Search over unions of coarse faces of Omega_k for a connected Gamma
// (not all of the boundary) whose rim passes through every strange vertex
// of Omega_k and which stays connected to Gamma*_k.
bool has_rim_face_union(const TopologyContext& ctx, int k,
                        const std::vector<int>& strange_on_k,
                        const std::vector<char>& boundary_strange_vertex) {
  const Mesh& mesh = *ctx.mesh;
  const auto& cfs = ctx.coarse_faces[k];
  const int F = static_cast<int>(cfs.size());
  if (F == 0 || F > 20) return false;

  // Gamma*_k: the contact with the domain boundary minus strange vertices.
  const SharedEntities& db = ctx.graph.domain_boundary[k];
  std::vector<int> gstar_verts;
  for (int v : db.vertices)
    if (!boundary_strange_vertex[v]) gstar_verts.push_back(v);

  // The full set is excluded: Gamma must differ from the whole boundary.
  for (int mask = 1; mask < (1 << F) - 1; ++mask) {
    std::vector<int> faces;
    for (int i = 0; i < F; ++i)
      if (mask & (1 << i)) faces.push_back(i);

    // Edge-connectivity of the selected coarse faces.
    UnionFind uf(F);
    std::map<int, std::vector<int>> edge_owner;
    for (int i : faces)
      for (int e : cfs[i].fine_edges) edge_owner[e].push_back(i);
    for (const auto& [e, owners] : edge_owner)
      for (std::size_t j = 1; j < owners.size(); ++j)
        uf.unite(owners[0], owners[j]);
    bool conn = true;
    for (int i : faces)
      if (uf.find(i) != uf.find(faces[0])) conn = false;
    if (!conn) continue;

    // Rim of the union and the strange vertices on it.
    std::map<int, int> edge_count;
    std::set<int> fine_faces;
    for (int i : faces) fine_faces.insert(cfs[i].fine_faces.begin(),
                                          cfs[i].fine_faces.end());
    for (int f : fine_faces)
      for (int e : mesh.face_edges(f)) ++edge_count[e];
    std::set<int> rim_verts;
    for (const auto& [e, cnt] : edge_count)
      if (cnt == 1) {
        rim_verts.insert(mesh.edges[e][0]);
        rim_verts.insert(mesh.edges[e][1]);
      }
    bool all_on_rim = true;
    for (int v : strange_on_k)
      if (!rim_verts.count(v)) all_on_rim = false;
    if (!all_on_rim) continue;

    // Gamma*_k union Gamma must be connected.
    if (!gstar_verts.empty()) {
      UnionFind vu(mesh.num_vertices());
      std::set<int> verts(gstar_verts.begin(), gstar_verts.end());
      for (int e : db.edges) {
        vu.unite(mesh.edges[e][0], mesh.edges[e][1]);
        verts.insert(mesh.edges[e][0]);
        verts.insert(mesh.edges[e][1]);
      }
      for (int i : faces)
        for (int e : cfs[i].fine_edges) {
          vu.unite(mesh.edges[e][0], mesh.edges[e][1]);
          verts.insert(mesh.edges[e][0]);
          verts.insert(mesh.edges[e][1]);
        }
      int root = vu.find(*verts.begin());
      bool united = true;
      for (int v : verts)
        if (vu.find(v) != root) united = false;
      if (!united) continue;
    }
    return true;
  }
  return false;
}

}  // namespace

StrangeClassification classify_strange(
    const TopologyContext& ctx, const CoefficientField& coeffs,
    const std::vector<StrangeVertex>& strange) {
  StrangeClassification out;
  std::set<int> imc_set;
  for (const auto& sv : strange) imc_set.insert(sv.im_c.begin(), sv.im_c.end());
  out.imc_s.assign(imc_set.begin(), imc_set.end());
  for (int k = 0; k < ctx.part->count; ++k)
    if (!imc_set.count(k)) out.im.push_back(k);

  std::set<int> im_set(out.im.begin(), out.im.end());
  std::set<int> va;
  for (const auto& sv : strange) {
    bool a = true;
    for (int r : sv.im_c)
      for (int l : out.im)
        if (ctx.graph.intersects(r, l) && coeffs.alpha[r] < coeffs.alpha[l])
          a = false;
    (a ? out.va_vertices : out.vb_vertices).push_back(sv.vertex);
    if (a) va.insert(sv.vertex);
  }

  std::vector<char> boundary_strange(ctx.mesh->num_vertices(), 0);
  for (const auto& sv : strange)
    if (sv.boundary) boundary_strange[sv.vertex] = 1;

  for (int r : out.imc_s) {
    bool all_va = true;
    std::vector<int> strange_on_r;
    for (const auto& sv : strange)
      if (std::find(sv.im.begin(), sv.im.end(), r) != sv.im.end()) {
        strange_on_r.push_back(sv.vertex);
        if (!va.count(sv.vertex)) all_va = false;
      }
    if (all_va) {
      out.imc_s1.push_back(r);
      if (has_rim_face_union(ctx, r, strange_on_r, boundary_strange))
        out.imc_sa.push_back(r);
      else
        out.imc_sb.push_back(r);
    } else {
      out.imc_s2.push_back(r);
      out.imc_sb.push_back(r);
    }
  }
  return out;
}

AssumptionReport check_assumptions(const TopologyContext& ctx,
                                   const CoefficientField& coeffs,
                                   const std::vector<GammaSet>& gammas,
                                   const StrangeClassification& cls) {
  coeffs.validate(ctx.part->count);
  AssumptionReport rep;
  const int N = ctx.part->count;

  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j || !ctx.graph.intersects(i, j)) continue;
      if (!(coeffs.alpha[i] <= coeffs.alpha[j])) continue;
      double ratio = coeffs.beta[i] / (coeffs.tau * coeffs.beta[j]);
      rep.a31_margin = std::max(rep.a31_margin, ratio);
      if (ratio > 1.0) {
        rep.a31_ok = false;
        rep.a31_witnesses.push_back(
            {i, j, "alpha_i <= alpha_j but beta_i > tau*beta_j"});
      }
    }

  std::set<int> im_set(cls.im.begin(), cls.im.end());
  rep.pair_class.resize(N);
  for (int k = 0; k < N; ++k) {
    CoeffClass c = classify_pair(coeffs.alpha[k], coeffs.beta[k], coeffs.tau);
    rep.pair_class[k] = c;
    const GammaSet& g = gammas[k];
    bool ok = true;
    std::string reason;
    if (g.empty) {
      ok = true;
    } else if (c == CoeffClass::beta_below_alpha) {
      if (!g.connected) {
        ok = false;
        reason = "beta<~alpha but Gamma_k disconnected";
      } else if (!g.faces_and_edges_only()) {
        ok = false;
        reason = "beta<~alpha but Gamma_k has an isolated vertex";
      }
    } else if (c == CoeffClass::alpha_below_beta) {
      if (!g.faces_only()) {
        ok = false;
        reason = "alpha<~beta but Gamma_k is not a union of faces";
      }
    } else {
      if (!g.faces_and_edges_only()) {
        ok = false;
        reason = "alpha~beta but Gamma_k has an isolated vertex";
      }
    }
    if (!ok) {
      rep.a32_ok_all = false;
      if (im_set.count(k)) rep.a32_ok = false;
      rep.a32_witnesses.push_back({k, -1, reason});
    }
  }

  for (int r : cls.imc_sa)
    if (!(coeffs.beta[r] <= coeffs.tau * coeffs.alpha[r])) {
      rep.a33_ok = false;
      rep.a33_witnesses.push_back({r, -1, "Im^c_{s,a} needs beta<~alpha"});
    }
  for (int r : cls.imc_sb)
    if (classify_pair(coeffs.alpha[r], coeffs.beta[r], coeffs.tau) !=
        CoeffClass::comparable) {
      rep.a33_ok = false;
      rep.a33_witnesses.push_back({r, -1, "Im^c_{s,b} needs alpha~beta"});
    }
  return rep;
}

std::string rho_class(const std::vector<GammaSet>& gammas,
                      const std::vector<int>& im) {
  for (int k : im)
    if (!gammas[k].lipschitz_face_union()) return "log";
  return "one";
}

std::vector<std::vector<int>> sigma_levels(const TopologyContext& ctx,
                                           const CoefficientField& coeffs) {
  coeffs.validate(ctx.part->count);
  std::vector<int> order(ctx.part->count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return coeffs.alpha[a] > coeffs.alpha[b];
  });
  std::vector<std::vector<int>> levels;
  for (int k : order) {
    std::size_t lev = 0;
    for (; lev < levels.size(); ++lev) {
      bool clash = false;
      for (int m : levels[lev])
        if (ctx.graph.intersects(k, m)) clash = true;
      if (!clash) break;
    }
    if (lev == levels.size()) levels.push_back({});
    levels[lev].push_back(k);
  }
  return levels;
}

AncestorReport ancestor_depths(const TopologyContext& ctx,
                               const CoefficientField& coeffs) {
  coeffs.validate(ctx.part->count);
  const int N = ctx.part->count;
  // Equal-coefficient intersecting subdomains form depth-neutral groups.
  UnionFind uf(N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if (ctx.graph.intersects(i, j) && coeffs.alpha[i] == coeffs.alpha[j])
        uf.unite(i, j);
  std::vector<int> depth(N, -1);
  std::function<int(int)> depth_of = [&](int r) -> int {
    int root = uf.find(r);
    if (depth[root] >= 0) return depth[root];
    depth[root] = 0;  // break ties on (impossible) equal-alpha cycles
    int d = 0;
    for (int i = 0; i < N; ++i) {
      if (uf.find(i) != root) continue;
      for (int j = 0; j < N; ++j)
        if (j != i && ctx.graph.intersects(i, j) &&
            coeffs.alpha[j] > coeffs.alpha[i])
          d = std::max(d, 1 + depth_of(j));
    }
    depth[root] = d;
    return d;
  };
  AncestorReport rep;
  rep.depth.resize(N);
  rep.exponent_m = 1;
  for (int r = 0; r < N; ++r) {
    rep.depth[r] = depth_of(r);
    rep.exponent_m = std::max(rep.exponent_m, 2 * rep.depth[r] + 1);
  }
  return rep;
}

TopologyReport analyze_topology(const TopologyContext& ctx,
                                const CoefficientField& coeffs) {
  TopologyReport rep;
  rep.gammas = gamma_sets(ctx, coeffs);
  rep.qm = check_quasi_monotone(ctx, coeffs);
  rep.gqm = check_generalized_qm(rep.gammas);
  rep.strange = detect_strange_vertices(ctx, coeffs);
  rep.ns = multiplicity_ns(rep.strange);
  rep.cls = classify_strange(ctx, coeffs, rep.strange);
  rep.assumptions = check_assumptions(ctx, coeffs, rep.gammas, rep.cls);
  rep.rho = rho_class(rep.gammas, rep.cls.im);
  rep.sigma = sigma_levels(ctx, coeffs);
  rep.ancestors = ancestor_depths(ctx, coeffs);
  return rep;
}

}  // namespace hxmax
