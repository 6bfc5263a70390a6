// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HXMAX_GEOMETRY_HPP
#define HXMAX_GEOMETRY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hxmax/mesh.hpp"

namespace hxmax {

struct Box {
  double lo[3];
  double hi[3];
  bool contains(const Point& p) const {
    for (int i = 0; i < 3; ++i)
      if (p[i] < lo[i] || p[i] > hi[i]) return false;
    return true;
  }
};

struct Region {
  std::string name;
  std::vector<Box> boxes;
  bool contains(const Point& p) const {
    for (const auto& b : boxes)
      if (b.contains(p)) return true;
    return false;
  }
};

// Subdomain geometry: unions of axis-aligned boxes with corners on the mesh
// lattice. Regions must cover the unit cube and be pairwise disjoint.
struct GeometryConfig {
  int n = 0;
  std::vector<Region> regions;

  static GeometryConfig from_json_text(const std::string& text);
  std::string to_json_text() const;

  // Built-in geometries used by the experiment harness.
  static GeometryConfig single(int n);
  static GeometryConfig half_cube(int n);
  static GeometryConfig interlock(int n);
  static GeometryConfig checkerboard(int n);
  static GeometryConfig blocks2x2x2(int n);  // eight lattice octants
};

struct SubdomainPartition {
  int count = 0;
  std::vector<int> tet_subdomain;
  std::vector<int> cell_subdomain;  // cell (i,j,k) -> subdomain, k-major
  std::vector<std::string> names;

  struct BoundaryFace {
    int face;
    int neighbor;  // other subdomain, or -1 for the domain boundary
  };
  std::vector<std::vector<BoundaryFace>> boundary_faces;  // per subdomain

  // Closure bitmaps: entity lies in the closed subdomain.
  std::vector<std::vector<char>> closure_vertex;
  std::vector<std::vector<char>> closure_edge;
  std::vector<std::vector<char>> closure_face;

  // Octant occupancy of each subdomain around each mesh vertex: bit
  // (dx + 2*dy + 4*dz) is set when the adjacent cell in that octant belongs
  // to the subdomain. Drives the polyhedron-vertex test.
  std::vector<std::vector<std::uint8_t>> vertex_octants;

  // v is a corner of the polyhedron: occupancy is non-constant and not
  // invariant under translation along any axis.
  bool is_coarse_vertex(int k, int v) const;

  std::vector<int> tets_of(int k) const;
};

SubdomainPartition assign_subdomains(const Mesh& mesh,
                                     const GeometryConfig& geometry);

// A maximal coplanar, edge-connected patch of boundary faces of one
// subdomain with a uniform neighbor on the other side.
struct CoarseFace {
  int owner = -1;
  int neighbor = -1;  // -1: domain boundary
  int axis = -1;      // normal axis
  double coord = 0.0;
  std::vector<int> fine_faces;
  std::vector<int> fine_edges;      // all edges of the patch closure
  std::vector<int> fine_vertices;   // all vertices of the patch closure
  std::vector<int> boundary_edges;  // edges on the rim of the patch
};

std::vector<CoarseFace> coarse_faces_of(const Mesh& mesh,
                                        const SubdomainPartition& part, int k);

enum class IsectClass { empty, vertex, edge, face };

const char* to_string(IsectClass c);

struct SharedEntities {
  IsectClass cls = IsectClass::empty;
  std::vector<int> faces;
  std::vector<int> edges;     // includes edges of shared faces
  std::vector<int> vertices;  // includes vertices of shared faces/edges
};

// Pairwise intersection structure of the subdomain closures plus the
// contact of each subdomain with the domain boundary.
struct SubdomainGraph {
  int count = 0;
  std::vector<SharedEntities> pair;  // index upper-triangular (k < l)
  std::vector<SharedEntities> domain_boundary;  // per subdomain

  const SharedEntities& shared(int k, int l) const;
  IsectClass cls(int k, int l) const { return shared(k, l).cls; }
  bool intersects(int k, int l) const {
    return cls(k, l) != IsectClass::empty;
  }

  int pair_index(int k, int l) const;
};

SubdomainGraph coarse_topology(const Mesh& mesh,
                               const SubdomainPartition& part);

}  // namespace hxmax

#endif  // HXMAX_GEOMETRY_HPP
