// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hxmax/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hxmax {

namespace {

std::uint64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

std::uint64_t triple_key(int a, int b, int c) {
  int v[3] = {a, b, c};
  std::sort(v, v + 3);
  return (static_cast<std::uint64_t>(v[0]) << 42) |
         (static_cast<std::uint64_t>(v[1]) << 21) |
         static_cast<std::uint64_t>(v[2]);
}

}  // namespace

int Mesh::vertex_index(int ix, int iy, int iz) const {
  return (ix * (n + 1) + iy) * (n + 1) + iz;
}

int Mesh::edge_index(int a, int b) const {
  auto it = edge_lookup_.find(pair_key(a, b));
  return it == edge_lookup_.end() ? -1 : it->second;
}

int Mesh::face_index(int a, int b, int c) const {
  auto it = face_lookup_.find(triple_key(a, b, c));
  return it == face_lookup_.end() ? -1 : it->second;
}

double Mesh::tet_volume(int t) const {
  const auto& tt = tets[t];
  const Point& p0 = vertices[tt[0]];
  double m[3][3];
  for (int i = 0; i < 3; ++i)
    for (int c = 0; c < 3; ++c) m[i][c] = vertices[tt[i + 1]][c] - p0[c];
  double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return det / 6.0;
}

Point Mesh::tet_centroid(int t) const {
  Point c{0, 0, 0};
  for (int v : tets[t])
    for (int i = 0; i < 3; ++i) c[i] += vertices[v][i] / 4.0;
  return c;
}

std::array<int, 3> Mesh::tet_cell(int t) const {
  Point c = tet_centroid(t);
  std::array<int, 3> cell;
  for (int i = 0; i < 3; ++i)
    cell[i] = std::min(n - 1, static_cast<int>(std::floor(c[i] * n)));
  return cell;
}

std::array<int, 4> Mesh::tet_faces(int t) const {
  const auto& v = tets[t];
  return {face_index(v[1], v[2], v[3]), face_index(v[0], v[2], v[3]),
          face_index(v[0], v[1], v[3]), face_index(v[0], v[1], v[2])};
}

std::array<int, 6> Mesh::tet_edges(int t) const {
  const auto& v = tets[t];
  return {edge_index(v[0], v[1]), edge_index(v[0], v[2]),
          edge_index(v[0], v[3]), edge_index(v[1], v[2]),
          edge_index(v[1], v[3]), edge_index(v[2], v[3])};
}

std::array<int, 3> Mesh::face_edges(int f) const {
  const auto& v = faces[f];
  return {edge_index(v[0], v[1]), edge_index(v[0], v[2]),
          edge_index(v[1], v[2])};
}

Mesh build_structured_cube(int n) {
  if (n < 1) throw std::invalid_argument("mesh resolution must be positive");
  Mesh m;
  m.n = n;

  const int np = n + 1;
  m.vertices.resize(static_cast<std::size_t>(np) * np * np);
  for (int ix = 0; ix < np; ++ix)
    for (int iy = 0; iy < np; ++iy)
      for (int iz = 0; iz < np; ++iz)
        m.vertices[m.vertex_index(ix, iy, iz)] = {
            static_cast<double>(ix) / n, static_cast<double>(iy) / n,
            static_cast<double>(iz) / n};

  // The 6 permutations of the axes; each gives one tet of the Kuhn split.
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<std::array<int, 4>> tets;
  tets.reserve(static_cast<std::size_t>(6) * n * n * n);
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz)
        for (const auto& p : perms) {
          int c[3] = {ix, iy, iz};
          std::array<int, 4> tet;
          tet[0] = m.vertex_index(c[0], c[1], c[2]);
          int q[3] = {c[0], c[1], c[2]};
          for (int s = 0; s < 3; ++s) {
            ++q[p[s]];
            tet[s + 1] = m.vertex_index(q[0], q[1], q[2]);
          }
          m.tets.push_back(tet);
          if (m.tet_volume(static_cast<int>(m.tets.size()) - 1) < 0)
            std::swap(m.tets.back()[2], m.tets.back()[3]);
        }

  std::sort(m.tets.begin(), m.tets.end(),
            [](const std::array<int, 4>& a, const std::array<int, 4>& b) {
              auto sa = a, sb = b;
              std::sort(sa.begin(), sa.end());
              std::sort(sb.begin(), sb.end());
              return sa < sb;
            });

  // Collect edges and faces from the tets; sorted maps give the numbering.
  std::map<std::array<int, 2>, int> edge_map;
  std::map<std::array<int, 3>, int> face_map;
  std::vector<int> face_tet_count;
  for (const auto& tet : m.tets) {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        std::array<int, 2> e{std::min(tet[i], tet[j]),
                             std::max(tet[i], tet[j])};
        edge_map.emplace(e, 0);
      }
    for (int skip = 0; skip < 4; ++skip) {
      std::array<int, 3> f;
      int k = 0;
      for (int i = 0; i < 4; ++i)
        if (i != skip) f[k++] = tet[i];
      std::sort(f.begin(), f.end());
      face_map.emplace(f, 0);
    }
  }
  int idx = 0;
  for (auto& [e, i] : edge_map) {
    i = idx++;
    m.edges.push_back(e);
    m.edge_lookup_[pair_key(e[0], e[1])] = i;
  }
  idx = 0;
  for (auto& [f, i] : face_map) {
    i = idx++;
    m.faces.push_back(f);
    m.face_lookup_[triple_key(f[0], f[1], f[2])] = i;
  }

  face_tet_count.assign(m.faces.size(), 0);
  for (int t = 0; t < m.num_tets(); ++t)
    for (int f : m.tet_faces(t)) ++face_tet_count[f];

  m.face_boundary.assign(m.faces.size(), 0);
  m.edge_boundary.assign(m.edges.size(), 0);
  m.vertex_boundary.assign(m.vertices.size(), 0);
  for (int f = 0; f < m.num_faces(); ++f) {
    if (face_tet_count[f] != 1) continue;
    m.face_boundary[f] = 1;
    for (int e : m.face_edges(f)) m.edge_boundary[e] = 1;
    for (int v : m.faces[f]) m.vertex_boundary[v] = 1;
  }
  return m;
}

}  // namespace hxmax
