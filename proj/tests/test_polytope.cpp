#include "doctest.h"

#include <queue>
#include <set>

#include "vorsym/errors.hpp"
#include "vorsym/polytope.hpp"

using namespace vorsym;

namespace {
Rat q(long n, long d = 1) { return Rat(n, d); }

// Spec'd invariants: exact supporting functionals, vertex/ridge incidence,
// connected edge graph.
void check_combinatorics(const FacetCombinatorics& c) {
  std::size_t k = static_cast<std::size_t>(c.affine_dim);
  for (std::size_t r = 0; r < c.ridges.size(); ++r) {
    const auto& ridge = c.ridges[r];
    for (std::size_t v = 0; v < c.vertices.size(); ++v) {
      Rat h = ridge.normal.dot(c.vertices[v]) - ridge.offset;
      if (c.vertex_on_ridge(static_cast<int>(r), static_cast<int>(v)))
        CHECK(h == 0);
      else
        CHECK(h > 0);
    }
  }
  // every vertex lies on at least k ridges whose normals span rank k
  for (std::size_t v = 0; v < c.vertices.size(); ++v) {
    std::vector<QVector> normals;
    for (std::size_t r = 0; r < c.ridges.size(); ++r)
      if (c.vertex_on_ridge(static_cast<int>(r), static_cast<int>(v)))
        normals.push_back(c.ridges[r].normal);
    CHECK(normals.size() >= k);
    CHECK(rank(QMatrix::from_rows(normals)) >= k);
  }
  // edge graph connected
  if (!c.vertices.empty()) {
    std::vector<std::vector<int>> adj(c.vertices.size());
    for (const auto& e : c.edges) {
      adj[e[0]].push_back(e[1]);
      adj[e[1]].push_back(e[0]);
    }
    std::vector<bool> seen(c.vertices.size(), false);
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = true;
    std::size_t cnt = 1;
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          ++cnt;
          bfs.push(w);
        }
    }
    CHECK(cnt == c.vertices.size());
  }
}
}  // namespace

TEST_CASE("triangle has three ridges equal to its edges") {
  std::vector<QVector> pts = {QVector{q(0), q(0)}, QVector{q(1), q(0)}, QVector{q(0), q(1)}};
  auto c = face_enumeration(pts);
  CHECK(c.affine_dim == 2);
  CHECK(c.vertices.size() == 3);
  CHECK(c.ridges.size() == 3);
  CHECK(c.edges.size() == 3);
  check_combinatorics(c);
}

TEST_CASE("octahedron f-vector (6,12,8)") {
  std::vector<QVector> pts;
  for (int i = 0; i < 3; ++i)
    for (int s : {1, -1}) {
      QVector p(3);
      p[i] = q(s);
      pts.push_back(p);
    }
  auto c = face_enumeration(pts);
  CHECK(c.vertices.size() == 6);
  CHECK(c.edges.size() == 12);
  CHECK(c.ridges.size() == 8);
  check_combinatorics(c);

  SUBCASE("edge paths") {
    CHECK(edge_path(c, 2, 2) == std::vector<int>{2});
    auto e = c.edges[0];
    CHECK(edge_path(c, e[0], e[1]) == std::vector<int>{e[0], e[1]});
    // antipodal vertices are two steps apart
    for (std::size_t v = 0; v < 6; ++v) {
      QVector anti = -c.vertices[v];
      std::size_t w = 0;
      while (!(c.vertices[w] == anti)) ++w;
      auto path = edge_path(c, static_cast<int>(v), static_cast<int>(w));
      CHECK(path.size() == 3);
    }
  }

  SUBCASE("each triangular face is a 3-cycle") {
    auto cycles = polygon_cycles(c);
    CHECK(cycles.size() == 8);
    for (const auto& cyc : cycles) CHECK(cyc.size() == 3);
  }
}

TEST_CASE("4-dimensional cross polytope") {
  std::vector<QVector> pts;
  for (int i = 0; i < 4; ++i)
    for (int s : {1, -1}) {
      QVector p(4);
      p[i] = q(s);
      pts.push_back(p);
    }
  auto c = face_enumeration(pts);
  CHECK(c.vertices.size() == 8);
  CHECK(c.edges.size() == 24);
  CHECK(c.ridges.size() == 16);
  check_combinatorics(c);
}

TEST_CASE("cube in R^3") {
  std::vector<QVector> pts;
  for (int a : {0, 1})
    for (int b : {0, 1})
      for (int cc : {0, 1}) pts.push_back(QVector{q(a), q(b), q(cc)});
  auto c = face_enumeration(pts);
  CHECK(c.vertices.size() == 8);
  CHECK(c.edges.size() == 12);
  CHECK(c.ridges.size() == 6);
  for (const auto& r : c.ridges) CHECK(r.verts.size() == 4);
  check_combinatorics(c);
  auto cycles = polygon_cycles(c);
  CHECK(cycles.size() == 6);
  for (const auto& cyc : cycles) CHECK(cyc.size() == 4);
}

TEST_CASE("simplex in dimension 5") {
  std::vector<QVector> pts;
  pts.push_back(QVector(5));
  for (int i = 0; i < 5; ++i) {
    QVector p(5);
    p[i] = q(1);
    pts.push_back(p);
  }
  auto c = face_enumeration(pts);
  CHECK(c.vertices.size() == 6);
  CHECK(c.ridges.size() == 6);
  CHECK(c.edges.size() == 15);
  check_combinatorics(c);
}

TEST_CASE("polytope living in a lower-dimensional affine subspace") {
  // square embedded in the hyperplane x+y+z = 1 of R^3
  std::vector<QVector> pts = {QVector{q(1), q(0), q(0)}, QVector{q(0), q(1), q(0)},
                              QVector{q(0), q(0), q(1)}, QVector{q(1), q(-1), q(1)}};
  auto c = face_enumeration(pts);
  CHECK(c.affine_dim == 2);
  CHECK(c.vertices.size() == 4);
  CHECK(c.ridges.size() == 4);
  CHECK(c.edges.size() == 4);
  check_combinatorics(c);
}

TEST_CASE("segment and degenerate input") {
  std::vector<QVector> seg = {QVector{q(1), q(2)}, QVector{q(3), q(4)}};
  auto c = face_enumeration(seg);
  CHECK(c.affine_dim == 1);
  CHECK(c.ridges.size() == 2);
  CHECK(c.edges.size() == 1);
  check_combinatorics(c);

  std::vector<QVector> same = {QVector{q(1), q(1)}, QVector{q(1), q(1)}};
  CHECK_THROWS_AS(face_enumeration(same), DegenerateInput);
}

TEST_CASE("duplicate points are merged") {
  std::vector<QVector> pts = {QVector{q(0), q(0)}, QVector{q(1), q(0)}, QVector{q(0), q(1)},
                              QVector{q(1), q(0)}};
  auto c = face_enumeration(pts);
  CHECK(c.vertices.size() == 3);
  CHECK(c.ridges.size() == 3);
}
