#pragma once

#include <array>
#include <vector>

#include "vorsym/linalg.hpp"

namespace vorsym {

/// Exact combinatorics of a bounded polytope conv(vertices) of any affine
/// dimension inside V.  "Ridges" are the codimension-one faces of the
/// polytope itself (for a facet F of the Voronoi polyhedron these are the
/// ridges of Pi).  Each ridge carries an ambient supporting functional:
/// <x, normal> == offset on the ridge and > offset on the other vertices,
/// where <,> is the plain coordinate dot product.
struct FacetCombinatorics {
  std::vector<QVector> vertices;
  int affine_dim{0};

  struct Ridge {
    std::vector<int> verts;  // sorted vertex indices
    QVector normal;          // primitive integral
    Rat offset;
  };
  std::vector<Ridge> ridges;
  std::vector<std::array<int, 2>> edges;  // sorted pairs, sorted list

  bool vertex_on_ridge(int ridge, int v) const;
};

/// Dual-description face enumeration with exact pivots: ridges, edges and
/// per-ridge inward functionals of conv(points).  Points must affinely span
/// their hull; duplicates are removed.  Throws DegenerateInput if all points
/// coincide.
FacetCombinatorics face_enumeration(const std::vector<QVector>& points);

/// Shortest path from vertex a to vertex b along polytope edges; ties broken
/// by lexicographic vertex order.  a and b are vertex indices.
std::vector<int> edge_path(const FacetCombinatorics& comb, int a, int b);

/// The vertex cycles of the polygonal 2-faces.  For a polygon (affine_dim 2)
/// this is the single boundary cycle; for a 3-polytope, one cycle per ridge,
/// aligned with comb.ridges.  Cycles start at their smallest vertex index and
/// step first to the smaller of its two neighbors.
std::vector<std::vector<int>> polygon_cycles(const FacetCombinatorics& comb);

}  // namespace vorsym
