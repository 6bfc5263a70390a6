// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hxmax/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>

#include <json.hpp>

namespace hxmax {

namespace {

bool on_lattice(double x, int n) {
  double s = x * n;
  return std::abs(s - std::round(s)) < 1e-9;
}

}  // namespace

GeometryConfig GeometryConfig::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  GeometryConfig g;
  g.n = j.at("n").get<int>();
  for (const auto& jr : j.at("regions")) {
    Region r;
    r.name = jr.at("name").get<std::string>();
    for (const auto& jb : jr.at("boxes")) {
      if (jb.size() != 6)
        throw std::invalid_argument("box must have 6 coordinates");
      Box b{{jb[0].get<double>(), jb[1].get<double>(), jb[2].get<double>()},
            {jb[3].get<double>(), jb[4].get<double>(), jb[5].get<double>()}};
      r.boxes.push_back(b);
    }
    g.regions.push_back(std::move(r));
  }
  return g;
}

std::string GeometryConfig::to_json_text() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["regions"] = nlohmann::ordered_json::array();
  for (const auto& r : regions) {
    nlohmann::ordered_json jr;
    jr["name"] = r.name;
    jr["boxes"] = nlohmann::ordered_json::array();
    for (const auto& b : r.boxes)
      jr["boxes"].push_back({b.lo[0], b.lo[1], b.lo[2], b.hi[0], b.hi[1], b.hi[2]});
    j["regions"].push_back(jr);
  }
  return j.dump(2);
}

GeometryConfig GeometryConfig::single(int n) {
  return {n, {{"omega", {{{0, 0, 0}, {1, 1, 1}}}}}};
}

GeometryConfig GeometryConfig::half_cube(int n) {
  return {n,
          {{"d1", {{{0, 0, 0}, {1, 1, 0.5}}}},
           {"d2", {{{0, 0, 0.5}, {1, 1, 1}}}}}};
}

GeometryConfig GeometryConfig::interlock(int n) {
  return {n,
          {{"d1", {{{0, 0, 0}, {0.5, 1, 0.5}}, {{0.5, 0, 0.5}, {1, 1, 1}}}},
           {"d2", {{{0.5, 0, 0}, {1, 1, 0.5}}, {{0, 0, 0.5}, {0.5, 1, 1}}}}}};
}

GeometryConfig GeometryConfig::checkerboard(int n) {
  return {n,
          {{"omega1", {{{0, 0, 0}, {0.5, 0.5, 0.5}}}},
           {"omega2", {{{0.5, 0.5, 0.5}, {1, 1, 1}}}},
           {"omega3",
            {{{0.5, 0, 0}, {1, 1, 0.5}}, {{0, 0.5, 0}, {0.5, 1, 0.5}}}},
           {"omega4",
            {{{0, 0, 0.5}, {0.5, 1, 1}}, {{0.5, 0, 0.5}, {1, 0.5, 1}}}}}};
}

GeometryConfig GeometryConfig::blocks2x2x2(int n) {
  GeometryConfig g;
  g.n = n;
  for (int ix = 0; ix < 2; ++ix)
    for (int iy = 0; iy < 2; ++iy)
      for (int iz = 0; iz < 2; ++iz) {
        Region r;
        r.name = "b" + std::to_string(ix) + std::to_string(iy) +
                 std::to_string(iz);
        r.boxes.push_back({{0.5 * ix, 0.5 * iy, 0.5 * iz},
                           {0.5 * (ix + 1), 0.5 * (iy + 1), 0.5 * (iz + 1)}});
        g.regions.push_back(std::move(r));
      }
  return g;
}

bool SubdomainPartition::is_coarse_vertex(int k, int v) const {
  std::uint8_t occ = vertex_octants[k][v];
  if (occ == 0 || occ == 255) return false;
  for (int axis = 0; axis < 3; ++axis) {
    int mask = 1 << axis;
    bool invariant = true;
    for (int b = 0; b < 8 && invariant; ++b) {
      if (b & mask) continue;
      if (((occ >> b) & 1) != ((occ >> (b | mask)) & 1)) invariant = false;
    }
    if (invariant) return false;
  }
  return true;
}

std::vector<int> SubdomainPartition::tets_of(int k) const {
  std::vector<int> out;
  for (int t = 0; t < static_cast<int>(tet_subdomain.size()); ++t)
    if (tet_subdomain[t] == k) out.push_back(t);
  return out;
}

SubdomainPartition assign_subdomains(const Mesh& mesh,
                                     const GeometryConfig& geometry) {
  const int n = mesh.n;
  if (geometry.n != n)
    throw std::invalid_argument("geometry resolution does not match mesh");
  for (const auto& r : geometry.regions)
    for (const auto& b : r.boxes)
      for (int i = 0; i < 3; ++i)
        if (!on_lattice(b.lo[i], n) || !on_lattice(b.hi[i], n))
          throw std::invalid_argument("region boundary not mesh-aligned: " +
                                      r.name);

  SubdomainPartition part;
  part.count = static_cast<int>(geometry.regions.size());
  for (const auto& r : geometry.regions) part.names.push_back(r.name);

  part.tet_subdomain.assign(mesh.num_tets(), -1);
  for (int t = 0; t < mesh.num_tets(); ++t) {
    Point c = mesh.tet_centroid(t);
    int hit = -1;
    for (int k = 0; k < part.count; ++k) {
      if (!geometry.regions[k].contains(c)) continue;
      if (hit >= 0)
        throw std::invalid_argument("tet covered by two regions: " +
                                    geometry.regions[hit].name + ", " +
                                    geometry.regions[k].name);
      hit = k;
    }
    if (hit < 0) throw std::invalid_argument("tet not covered by any region");
    part.tet_subdomain[t] = hit;
  }

  part.cell_subdomain.assign(static_cast<std::size_t>(n) * n * n, -1);
  for (int t = 0; t < mesh.num_tets(); ++t) {
    auto c = mesh.tet_cell(t);
    int idx = (c[0] * n + c[1]) * n + c[2];
    int k = part.tet_subdomain[t];
    if (part.cell_subdomain[idx] >= 0 && part.cell_subdomain[idx] != k)
      throw std::invalid_argument("region boundary cuts a lattice cell");
    part.cell_subdomain[idx] = k;
  }

  part.closure_vertex.assign(part.count,
                             std::vector<char>(mesh.num_vertices(), 0));
  part.closure_edge.assign(part.count, std::vector<char>(mesh.num_edges(), 0));
  part.closure_face.assign(part.count, std::vector<char>(mesh.num_faces(), 0));
  for (int t = 0; t < mesh.num_tets(); ++t) {
    int k = part.tet_subdomain[t];
    for (int v : mesh.tets[t]) part.closure_vertex[k][v] = 1;
    for (int e : mesh.tet_edges(t)) part.closure_edge[k][e] = 1;
    for (int f : mesh.tet_faces(t)) part.closure_face[k][f] = 1;
  }

  // Connectivity of the closure of each subdomain.
  {
    std::vector<std::vector<int>> vert_tets(mesh.num_vertices());
    for (int t = 0; t < mesh.num_tets(); ++t)
      for (int v : mesh.tets[t]) vert_tets[v].push_back(t);
    for (int k = 0; k < part.count; ++k) {
      auto tets = part.tets_of(k);
      if (tets.empty())
        throw std::invalid_argument("empty subdomain: " + part.names[k]);
      std::vector<char> seen(mesh.num_tets(), 0);
      std::queue<int> q;
      q.push(tets[0]);
      seen[tets[0]] = 1;
      int cnt = 0;
      while (!q.empty()) {
        int t = q.front();
        q.pop();
        ++cnt;
        for (int v : mesh.tets[t])
          for (int t2 : vert_tets[v])
            if (!seen[t2] && part.tet_subdomain[t2] == k) {
              seen[t2] = 1;
              q.push(t2);
            }
      }
      if (cnt != static_cast<int>(tets.size()))
        throw std::invalid_argument("disconnected subdomain: " + part.names[k]);
    }
  }

  // Boundary faces with the neighbor on the far side.
  std::vector<std::array<int, 2>> face_tets(mesh.num_faces(),
                                            std::array<int, 2>{-1, -1});
  for (int t = 0; t < mesh.num_tets(); ++t)
    for (int f : mesh.tet_faces(t)) {
      if (face_tets[f][0] < 0)
        face_tets[f][0] = t;
      else
        face_tets[f][1] = t;
    }
  part.boundary_faces.assign(part.count, {});
  for (int f = 0; f < mesh.num_faces(); ++f) {
    int t0 = face_tets[f][0], t1 = face_tets[f][1];
    int k0 = part.tet_subdomain[t0];
    int k1 = t1 < 0 ? -1 : part.tet_subdomain[t1];
    if (k0 == k1) continue;
    part.boundary_faces[k0].push_back({f, k1});
    if (k1 >= 0) part.boundary_faces[k1].push_back({f, k0});
  }

  part.vertex_octants.assign(
      part.count, std::vector<std::uint8_t>(mesh.num_vertices(), 0));
  const int np = n + 1;
  for (int ix = 0; ix < np; ++ix)
    for (int iy = 0; iy < np; ++iy)
      for (int iz = 0; iz < np; ++iz) {
        int v = mesh.vertex_index(ix, iy, iz);
        for (int bit = 0; bit < 8; ++bit) {
          int cx = ix - 1 + (bit & 1);
          int cy = iy - 1 + ((bit >> 1) & 1);
          int cz = iz - 1 + ((bit >> 2) & 1);
          if (cx < 0 || cy < 0 || cz < 0 || cx >= n || cy >= n || cz >= n)
            continue;
          int k = part.cell_subdomain[(cx * n + cy) * n + cz];
          part.vertex_octants[k][v] |= static_cast<std::uint8_t>(1 << bit);
        }
      }
  return part;
}

std::vector<CoarseFace> coarse_faces_of(const Mesh& mesh,
                                        const SubdomainPartition& part,
                                        int k) {
  if (k < 0 || k >= part.count) throw std::out_of_range("subdomain index");
  struct Key {
    int axis;
    double coord;
    int neighbor;
    bool operator<(const Key& o) const {
      if (axis != o.axis) return axis < o.axis;
      if (coord != o.coord) return coord < o.coord;
      return neighbor < o.neighbor;
    }
  };
  std::map<Key, std::vector<int>> groups;
  for (const auto& bf : part.boundary_faces[k]) {
    const auto& fv = mesh.faces[bf.face];
    int axis = -1;
    double coord = 0.0;
    for (int a = 0; a < 3; ++a) {
      double c0 = mesh.vertices[fv[0]][a];
      if (mesh.vertices[fv[1]][a] == c0 && mesh.vertices[fv[2]][a] == c0) {
        axis = a;
        coord = c0;
        break;
      }
    }
    groups[{axis, coord, bf.neighbor}].push_back(bf.face);
  }

  std::vector<CoarseFace> out;
  for (auto& [key, faces] : groups) {
    std::sort(faces.begin(), faces.end());
    // Edge-connected components within the coplanar group.
    std::map<int, std::vector<int>> edge_faces;
    for (int f : faces)
      for (int e : mesh.face_edges(f)) edge_faces[e].push_back(f);
    std::map<int, int> comp;
    for (int f : faces) comp[f] = -1;
    int ncomp = 0;
    for (int f : faces) {
      if (comp[f] >= 0) continue;
      std::queue<int> q;
      q.push(f);
      comp[f] = ncomp;
      while (!q.empty()) {
        int g = q.front();
        q.pop();
        for (int e : mesh.face_edges(g))
          for (int g2 : edge_faces[e])
            if (comp[g2] < 0) {
              comp[g2] = ncomp;
              q.push(g2);
            }
      }
      ++ncomp;
    }
    for (int c = 0; c < ncomp; ++c) {
      CoarseFace cf;
      cf.owner = k;
      cf.neighbor = key.neighbor;
      cf.axis = key.axis;
      cf.coord = key.coord;
      std::map<int, int> edge_count;
      std::vector<char> vseen(mesh.num_vertices(), 0);
      for (int f : faces) {
        if (comp[f] != c) continue;
        cf.fine_faces.push_back(f);
        for (int e : mesh.face_edges(f)) ++edge_count[e];
        for (int v : mesh.faces[f])
          if (!vseen[v]) {
            vseen[v] = 1;
            cf.fine_vertices.push_back(v);
          }
      }
      for (const auto& [e, cnt] : edge_count) {
        cf.fine_edges.push_back(e);
        if (cnt == 1) cf.boundary_edges.push_back(e);
      }
      std::sort(cf.fine_vertices.begin(), cf.fine_vertices.end());
      out.push_back(std::move(cf));
    }
  }
  return out;
}

const char* to_string(IsectClass c) {
  switch (c) {
    case IsectClass::empty: return "empty";
    case IsectClass::vertex: return "vertex";
    case IsectClass::edge: return "edge";
    case IsectClass::face: return "face";
  }
  return "?";
}

int SubdomainGraph::pair_index(int k, int l) const {
  if (k == l || k < 0 || l < 0 || k >= count || l >= count)
    throw std::out_of_range("pair index");
  if (k > l) std::swap(k, l);
  return k * count - k * (k + 1) / 2 + (l - k - 1);
}

const SharedEntities& SubdomainGraph::shared(int k, int l) const {
  return pair[pair_index(k, l)];
}

SubdomainGraph coarse_topology(const Mesh& mesh,
                               const SubdomainPartition& part) {
  SubdomainGraph g;
  g.count = part.count;
  g.pair.resize(static_cast<std::size_t>(part.count) * (part.count - 1) / 2);
  for (int k = 0; k < part.count; ++k)
    for (int l = k + 1; l < part.count; ++l) {
      SharedEntities s;
      for (int f = 0; f < mesh.num_faces(); ++f)
        if (part.closure_face[k][f] && part.closure_face[l][f])
          s.faces.push_back(f);
      for (int e = 0; e < mesh.num_edges(); ++e)
        if (part.closure_edge[k][e] && part.closure_edge[l][e])
          s.edges.push_back(e);
      for (int v = 0; v < mesh.num_vertices(); ++v)
        if (part.closure_vertex[k][v] && part.closure_vertex[l][v])
          s.vertices.push_back(v);
      if (!s.faces.empty())
        s.cls = IsectClass::face;
      else if (!s.edges.empty())
        s.cls = IsectClass::edge;
      else if (!s.vertices.empty())
        s.cls = IsectClass::vertex;
      g.pair[g.pair_index(k, l)] = std::move(s);
    }
  g.domain_boundary.resize(part.count);
  for (int k = 0; k < part.count; ++k) {
    SharedEntities s;
    for (int f = 0; f < mesh.num_faces(); ++f)
      if (mesh.face_boundary[f] && part.closure_face[k][f])
        s.faces.push_back(f);
    for (int e = 0; e < mesh.num_edges(); ++e)
      if (mesh.edge_boundary[e] && part.closure_edge[k][e])
        s.edges.push_back(e);
    for (int v = 0; v < mesh.num_vertices(); ++v)
      if (mesh.vertex_boundary[v] && part.closure_vertex[k][v])
        s.vertices.push_back(v);
    if (!s.faces.empty())
      s.cls = IsectClass::face;
    else if (!s.edges.empty())
      s.cls = IsectClass::edge;
    else if (!s.vertices.empty())
      s.cls = IsectClass::vertex;
    g.domain_boundary[k] = std::move(s);
  }
  return g;
}

}  // namespace hxmax
