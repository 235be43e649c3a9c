#include "vorsym/polytope.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>

#include "vorsym/errors.hpp"

namespace vorsym {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits bits_make(std::size_t n) { return Bits((n + 63) / 64, 0); }
void bits_set(Bits& b, std::size_t i) { b[i / 64] |= (std::uint64_t{1} << (i % 64)); }
bool bits_test(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; }
Bits bits_and(const Bits& a, const Bits& b) {
  Bits r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
  return r;
}
bool bits_subset(const Bits& a, const Bits& b) {  // a subseteq b
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

struct Ray {
  QVector u;    // homogeneous (w_1..w_k, t), primitive
  Bits active;  // constraints tight at this ray
};

}  // namespace

bool FacetCombinatorics::vertex_on_ridge(int ridge, int v) const {
  const auto& r = ridges[ridge].verts;
  return std::binary_search(r.begin(), r.end(), v);
}

FacetCombinatorics face_enumeration(const std::vector<QVector>& points) {
  if (points.empty()) throw DegenerateInput("no points");
  std::set<QVector> uniq(points.begin(), points.end());
  FacetCombinatorics comb;
  comb.vertices.assign(uniq.begin(), uniq.end());
  std::size_t nv = comb.vertices.size();
  if (nv < 2) throw DegenerateInput("all points coincide");
  std::size_t dim = comb.vertices[0].size();
  const QVector& p0 = comb.vertices[0];

  // Affine basis of the hull from the difference vectors.
  std::vector<QVector> basis;
  {
    std::vector<QVector> rows;
    for (std::size_t i = 1; i < nv; ++i) {
      rows.push_back(comb.vertices[i] - p0);
      if (rank(QMatrix::from_rows(rows)) == rows.size())
        basis.push_back(rows.back());
      else
        rows.pop_back();
    }
  }
  std::size_t k = basis.size();
  comb.affine_dim = static_cast<int>(k);

  // Affine coordinates: solve U c = p - p0 via the normal equations.
  QMatrix ut = QMatrix::from_rows(basis);  // k x dim
  QMatrix utu_inv = inverse(ut * ut.transposed());
  QMatrix a_mat = utu_inv * ut;  // coords(p) = a_mat (p - p0)
  std::vector<QVector> xs(nv);
  for (std::size_t i = 0; i < nv; ++i) xs[i] = a_mat * (comb.vertices[i] - p0);

  auto orient_off_ridge = [&](FacetCombinatorics::Ridge& r) {
    for (std::size_t i = 0; i < nv; ++i) {
      if (std::binary_search(r.verts.begin(), r.verts.end(), static_cast<int>(i))) continue;
      Rat h = r.normal.dot(comb.vertices[i]) - r.offset;
      if (h < 0) {
        r.normal = -r.normal;
        r.offset = -r.offset;
      }
      break;
    }
  };

  if (k == 1) {
    // Segment: two extreme points, each its own ridge.
    if (nv != 2) throw DegenerateInput("collinear input points are not all extreme");
    QVector n = (comb.vertices[1] - p0).primitive();
    FacetCombinatorics::Ridge r0, r1;
    r0.verts = {0};
    r0.normal = n;
    r0.offset = n.dot(comb.vertices[0]);
    r1.verts = {1};
    r1.normal = n;
    r1.offset = n.dot(comb.vertices[1]);
    orient_off_ridge(r0);
    orient_off_ridge(r1);
    comb.ridges = {r0, r1};
    comb.edges = {{0, 1}};
    return comb;
  }

  QVector bary(k);
  for (const auto& x : xs) bary = bary + x;
  bary = bary * Rat(1, static_cast<long>(nv));

  // Centered points; homogeneous constraints (z_i, -1).(w, t) <= 0.
  std::vector<QVector> cons(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    QVector c(k + 1);
    for (std::size_t j = 0; j < k; ++j) c[j] = xs[i][j] - bary[j];
    c[k] = -1;
    cons[i] = c;
  }

  // Initial simplicial cone from k+1 linearly independent constraints.
  std::vector<std::size_t> init;
  {
    std::vector<QVector> rows;
    for (std::size_t i = 0; i < nv && init.size() < k + 1; ++i) {
      rows.push_back(cons[i]);
      if (rank(QMatrix::from_rows(rows)) == rows.size())
        init.push_back(i);
      else
        rows.pop_back();
    }
    if (init.size() != k + 1) throw DegenerateInput("points do not affinely span their hull");
  }

  std::vector<Ray> rays;
  {
    QMatrix cs(k + 1, k + 1);
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t j = 0; j <= k; ++j) cs(i, j) = cons[init[i]][j];
    QMatrix csi = inverse(cs);
    for (std::size_t j = 0; j <= k; ++j) {
      Ray r;
      r.u = (-csi.col(j)).positive_primitive();
      rays.push_back(std::move(r));
    }
  }

  std::vector<bool> processed(nv, false);
  auto recompute_active = [&](Ray& r) {
    r.active = bits_make(nv);
    for (std::size_t i = 0; i < nv; ++i)
      if (processed[i] && cons[i].dot(r.u) == 0) bits_set(r.active, i);
  };
  for (auto i : init) processed[i] = true;
  for (auto& r : rays) recompute_active(r);

  for (std::size_t ci = 0; ci < nv; ++ci) {
    if (processed[ci]) continue;
    processed[ci] = true;
    const QVector& c = cons[ci];
    std::vector<Rat> vals(rays.size());
    std::vector<std::size_t> neg, zero, pos;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      vals[r] = c.dot(rays[r].u);
      if (vals[r] < 0)
        neg.push_back(r);
      else if (vals[r] == 0)
        zero.push_back(r);
      else
        pos.push_back(r);
    }
    if (pos.empty()) {
      for (auto r : zero) bits_set(rays[r].active, ci);
      continue;
    }
    std::vector<Ray> next;
    for (auto r : neg) next.push_back(rays[r]);
    for (auto r : zero) {
      next.push_back(rays[r]);
      bits_set(next.back().active, ci);
    }
    for (auto p : pos)
      for (auto n : neg) {
        Bits common = bits_and(rays[p].active, rays[n].active);
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (bits_subset(common, rays[r].active)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr;
        nr.u = (rays[n].u * vals[p] - rays[p].u * vals[n]).positive_primitive();
        next.push_back(std::move(nr));
      }
    rays.swap(next);
    for (auto& r : rays) recompute_active(r);
  }

  // Each extreme ray is a vertex of the polar dual <-> one ridge of the hull.
  for (const auto& r : rays) {
    if (r.u[k] <= 0) throw DegenerateInput("unbounded dual ray; degenerate hull");
    std::vector<int> verts;
    for (std::size_t i = 0; i < nv; ++i)
      if (bits_test(r.active, i)) verts.push_back(static_cast<int>(i));
    QVector w(k);
    for (std::size_t j = 0; j < k; ++j) w[j] = r.u[j] / r.u[k];
    // Ambient functional: h(p) = 1 + w.bary + nu.p0 - nu.p with nu = A^T w.
    QVector nu = a_mat.transposed() * w;
    Rat c0 = Rat(1) + w.dot(bary) + nu.dot(p0);
    QVector packed(dim + 1);
    for (std::size_t j = 0; j < dim; ++j) packed[j] = -nu[j];
    packed[dim] = -c0;
    packed = packed.primitive();
    FacetCombinatorics::Ridge ridge;
    ridge.verts = std::move(verts);
    ridge.normal = QVector(dim);
    for (std::size_t j = 0; j < dim; ++j) ridge.normal[j] = packed[j];
    ridge.offset = packed[dim];
    orient_off_ridge(ridge);
    comb.ridges.push_back(std::move(ridge));
  }
  std::sort(comb.ridges.begin(), comb.ridges.end(),
            [](const auto& x, const auto& y) { return x.verts < y.verts; });

  // Edges: the smallest face containing {a,b} must be exactly {a,b}.
  std::vector<Bits> ridge_verts(comb.ridges.size());
  for (std::size_t r = 0; r < comb.ridges.size(); ++r) {
    ridge_verts[r] = bits_make(nv);
    for (int v : comb.ridges[r].verts) bits_set(ridge_verts[r], v);
  }
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = a + 1; b < nv; ++b) {
      Bits closure = bits_make(nv);
      for (auto& word : closure) word = ~std::uint64_t{0};
      bool any = false;
      for (std::size_t r = 0; r < comb.ridges.size(); ++r)
        if (bits_test(ridge_verts[r], a) && bits_test(ridge_verts[r], b)) {
          closure = bits_and(closure, ridge_verts[r]);
          any = true;
        }
      if (!any) continue;
      std::size_t count = 0;
      for (std::size_t i = 0; i < nv; ++i)
        if (bits_test(closure, i)) ++count;
      if (count == 2 && bits_test(closure, a) && bits_test(closure, b))
        comb.edges.push_back({static_cast<int>(a), static_cast<int>(b)});
    }
  std::sort(comb.edges.begin(), comb.edges.end());
  return comb;
}

std::vector<int> edge_path(const FacetCombinatorics& comb, int a, int b) {
  if (a == b) return {a};
  std::size_t nv = comb.vertices.size();
  std::vector<std::vector<int>> adj(nv);
  for (const auto& e : comb.edges) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (auto& l : adj) std::sort(l.begin(), l.end());

  std::vector<int> dist(nv, -1);
  std::queue<int> q;
  dist[b] = 0;
  q.push(b);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  // Greedy descent over the BFS levels: lexicographically least shortest path.
  std::vector<int> path = {a};
  int cur = a;
  while (cur != b) {
    for (int w : adj[cur])
      if (dist[w] == dist[cur] - 1) {
        path.push_back(w);
        cur = w;
        break;
      }
  }
  return path;
}

std::vector<std::vector<int>> polygon_cycles(const FacetCombinatorics& comb) {
  auto walk_cycle = [&](const std::vector<int>& verts) {
    std::set<int> inset(verts.begin(), verts.end());
    std::map<int, std::vector<int>> adj;
    for (const auto& e : comb.edges)
      if (inset.count(e[0]) && inset.count(e[1])) {
        adj[e[0]].push_back(e[1]);
        adj[e[1]].push_back(e[0]);
      }
    for (auto& [v, l] : adj) std::sort(l.begin(), l.end());
    int start = *inset.begin();
    std::vector<int> cycle = {start};
    int prev = -1, cur = start;
    do {
      const auto& nb = adj.at(cur);
      int nxt = (nb[0] != prev) ? nb[0] : nb[1];
      prev = cur;
      cur = nxt;
      if (cur != start) cycle.push_back(cur);
    } while (cur != start);
    return cycle;
  };

  std::vector<std::vector<int>> out;
  if (comb.affine_dim == 2) {
    std::vector<int> all(comb.vertices.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    out.push_back(walk_cycle(all));
  } else if (comb.affine_dim == 3) {
    for (const auto& r : comb.ridges) out.push_back(walk_cycle(r.verts));
  } else {
    throw InvalidParameter("polygon_cycles needs a polygon or a 3-polytope");
  }
  return out;
}

}  // namespace vorsym
