// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HXMAX_MESH_HPP
#define HXMAX_MESH_HPP

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace hxmax {

using Point = std::array<double, 3>;

// Structured tetrahedral triangulation of the unit cube: each of the n^3
// lattice cells is split into 6 tetrahedra around the main diagonal.
// Entity numbering is deterministic: vertices lexicographic by (x, y, z),
// edges/faces/tets sorted by their sorted vertex tuples. Edges are oriented
// tail -> head with tail < head by global vertex index.
struct Mesh {
  int n = 0;
  std::vector<Point> vertices;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> faces;   // sorted vertex triples
  std::vector<std::array<int, 4>> tets;    // positively oriented
  std::vector<char> vertex_boundary;
  std::vector<char> edge_boundary;
  std::vector<char> face_boundary;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_faces() const { return static_cast<int>(faces.size()); }
  int num_tets() const { return static_cast<int>(tets.size()); }

  double h() const { return 1.0 / n; }

  int edge_index(int a, int b) const;      // unordered pair, -1 if absent
  int face_index(int a, int b, int c) const;
  int vertex_index(int ix, int iy, int iz) const;

  double tet_volume(int t) const;
  Point tet_centroid(int t) const;

  // Lattice cell (i,j,k) of a tet, recovered from its centroid.
  std::array<int, 3> tet_cell(int t) const;

  // Face ids of tet t (4 of them) and edge ids of tet t (6 of them).
  std::array<int, 4> tet_faces(int t) const;
  std::array<int, 6> tet_edges(int t) const;

  // Edges/vertices contained in face f.
  std::array<int, 3> face_edges(int f) const;

 private:
  std::unordered_map<std::uint64_t, int> edge_lookup_;
  std::unordered_map<std::uint64_t, int> face_lookup_;
  friend Mesh build_structured_cube(int n);
};

// Kuhn subdivision; throws std::invalid_argument for n == 0.
Mesh build_structured_cube(int n);

}  // namespace hxmax

#endif  // HXMAX_MESH_HPP
