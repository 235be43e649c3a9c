#include "vorsym/voronoi.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "vorsym/errors.hpp"

namespace vorsym {

namespace {

// K-rational arithmetic (x + y*omega with rational components), for pairing
// values and change-of-basis matrices during equivalence search.
struct KRat {
  Rat x, y;
  bool operator==(const KRat& o) const { return x == o.x && y == o.y; }
};

struct KOps {
  Rat t, n;  // omega^2 = t*omega - n
  KRat add(const KRat& a, const KRat& b) const { return {a.x + b.x, a.y + b.y}; }
  KRat sub(const KRat& a, const KRat& b) const { return {a.x - b.x, a.y - b.y}; }
  KRat mul(const KRat& a, const KRat& b) const {
    return {a.x * b.x - n * a.y * b.y, a.x * b.y + a.y * b.x + t * a.y * b.y};
  }
  KRat conj(const KRat& a) const { return {a.x + t * a.y, -a.y}; }
  Rat norm(const KRat& a) const { return a.x * a.x + t * a.x * a.y + n * a.y * a.y; }
  KRat inv(const KRat& a) const {
    Rat nm = norm(a);
    KRat c = conj(a);
    return {c.x / nm, c.y / nm};
  }
  static KRat from_ring(const RingElem& e) { return {Rat(e.x), Rat(e.y)}; }
  bool is_zero(const KRat& a) const { return a.x == 0 && a.y == 0; }
};

KOps kops(const ConeSpace& s) { return KOps{Rat(s.omega_trace()), Rat(s.omega_norm())}; }

// Form matrix of y as a k x k matrix over K (k = space.mat_size()).
std::vector<KRat> form_matrix(const ConeSpace& s, const QVector& y) {
  int k = s.mat_size();
  std::vector<KRat> m(static_cast<std::size_t>(k) * k, KRat{Rat(0), Rat(0)});
  if (s.kind() == SpaceKind::symmetric) {
    int n = k;
    for (int i = 0; i < n; ++i) m[i * n + i] = {y[i], Rat(0)};
    int idx = n;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        m[i * n + j] = {y[idx], Rat(0)};
        m[j * n + i] = {y[idx], Rat(0)};
        ++idx;
      }
  } else {
    KOps o = kops(s);
    m[0] = {y[0], Rat(0)};
    m[3] = {y[1], Rat(0)};
    m[1] = {y[2], y[3]};
    m[2] = o.conj(m[1]);
  }
  return m;
}

// u^dag Y v over K.
KRat pair_value(const ConeSpace& s, const std::vector<KRat>& ym, const std::vector<RingElem>& u,
                const std::vector<RingElem>& v) {
  KOps o = kops(s);
  int k = s.mat_size();
  KRat acc{Rat(0), Rat(0)};
  for (int i = 0; i < k; ++i) {
    KRat ui = o.conj(KOps::from_ring(u[i]));
    for (int j = 0; j < k; ++j)
      acc = o.add(acc, o.mul(ui, o.mul(ym[i * k + j], KOps::from_ring(v[j]))));
  }
  return acc;
}

std::optional<std::vector<KRat>> k_inverse(const ConeSpace& s, std::vector<KRat> m, int k) {
  KOps o = kops(s);
  std::vector<KRat> inv(static_cast<std::size_t>(k) * k, KRat{Rat(0), Rat(0)});
  for (int i = 0; i < k; ++i) inv[i * k + i] = {Rat(1), Rat(0)};
  for (int c = 0; c < k; ++c) {
    int p = c;
    while (p < k && o.is_zero(m[p * k + c])) ++p;
    if (p == k) return std::nullopt;
    if (p != c)
      for (int j = 0; j < k; ++j) {
        std::swap(m[p * k + j], m[c * k + j]);
        std::swap(inv[p * k + j], inv[c * k + j]);
      }
    KRat piv = o.inv(m[c * k + c]);
    for (int j = 0; j < k; ++j) {
      m[c * k + j] = o.mul(piv, m[c * k + j]);
      inv[c * k + j] = o.mul(piv, inv[c * k + j]);
    }
    for (int i = 0; i < k; ++i) {
      if (i == c || o.is_zero(m[i * k + c])) continue;
      KRat f = m[i * k + c];
      for (int j = 0; j < k; ++j) {
        m[i * k + j] = o.sub(m[i * k + j], o.mul(f, m[c * k + j]));
        inv[i * k + j] = o.sub(inv[i * k + j], o.mul(f, inv[c * k + j]));
      }
    }
  }
  return inv;
}

std::vector<KRat> k_mul(const ConeSpace& s, const std::vector<KRat>& a, const std::vector<KRat>& b,
                        int k) {
  KOps o = kops(s);
  std::vector<KRat> r(static_cast<std::size_t>(k) * k, KRat{Rat(0), Rat(0)});
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < k; ++l)
      for (int j = 0; j < k; ++j)
        r[i * k + j] = o.add(r[i * k + j], o.mul(a[i * k + l], b[l * k + j]));
  return r;
}

std::size_t k_row_rank(const ConeSpace& s, std::vector<std::vector<KRat>> rows, int width) {
  KOps o = kops(s);
  std::size_t rk = 0;
  for (int c = 0; c < width && rk < rows.size(); ++c) {
    std::size_t p = rk;
    while (p < rows.size() && o.is_zero(rows[p][c])) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rk]);
    KRat piv = o.inv(rows[rk][c]);
    for (auto& e : rows[rk]) e = o.mul(piv, e);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rk) continue;
      KRat f = rows[r][c];
      if (o.is_zero(f)) continue;
      for (int cc = 0; cc < width; ++cc) rows[r][cc] = o.sub(rows[r][cc], o.mul(f, rows[rk][cc]));
    }
    ++rk;
  }
  return rk;
}

// Backtracking search for lattice automorphisms mapping `from` onto `to`:
// pick a K-spanning pivot subset of the source minimal vectors, try every
// pairing-compatible image assignment, validate globally.
std::vector<GroupElement> equivalence_search(const ConeSpace& s, const PerfectForm& to,
                                             const PerfectForm& from, bool first_only) {
  std::vector<GroupElement> out;
  if (to.mins.size() != from.mins.size()) return out;
  const int k = s.mat_size();
  KOps o = kops(s);
  std::vector<KRat> ya = form_matrix(s, to.y), yb = form_matrix(s, from.y);

  auto profiles = [&](const PerfectForm& f, const std::vector<KRat>& ym) {
    std::vector<std::vector<Rat>> prof(f.mins.size());
    for (std::size_t i = 0; i < f.mins.size(); ++i) {
      for (std::size_t j = 0; j < f.mins.size(); ++j)
        prof[i].push_back(o.norm(pair_value(s, ym, f.mins[i].gen, f.mins[j].gen)));
      std::sort(prof[i].begin(), prof[i].end());
    }
    return prof;
  };
  auto prof_to = profiles(to, ya), prof_from = profiles(from, yb);
  {
    auto pa = prof_to;
    auto pb = prof_from;
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    if (pa != pb) return out;
  }

  // pivot subset of source minimal vectors spanning K^k
  std::vector<std::size_t> pivots;
  {
    std::vector<std::vector<KRat>> rows;
    for (std::size_t i = 0; i < from.mins.size() && pivots.size() < static_cast<std::size_t>(k);
         ++i) {
      std::vector<KRat> row;
      for (const auto& e : from.mins[i].gen) row.push_back(KOps::from_ring(e));
      rows.push_back(row);
      if (k_row_rank(s, rows, k) == rows.size())
        pivots.push_back(i);
      else
        rows.pop_back();
    }
    if (pivots.size() != static_cast<std::size_t>(k)) return out;
  }

  std::set<QVector> target_embeds;
  for (const auto& z : to.mins) target_embeds.insert(z.embed);

  std::vector<std::vector<RingElem>> chosen;
  std::function<bool(std::size_t)> assign = [&](std::size_t depth) -> bool {
    if (depth == pivots.size()) {
      std::vector<KRat> vmat(static_cast<std::size_t>(k) * k), wmat(vmat.size());
      for (int c = 0; c < k; ++c)
        for (int r = 0; r < k; ++r) {
          vmat[r * k + c] = KOps::from_ring(from.mins[pivots[c]].gen[r]);
          wmat[r * k + c] = KOps::from_ring(chosen[c][r]);
        }
      auto vinv = k_inverse(s, vmat, k);
      if (!vinv) return false;
      auto gk = k_mul(s, wmat, *vinv, k);
      std::vector<RingElem> gr(gk.size());
      for (std::size_t i = 0; i < gk.size(); ++i) {
        if (denominator(gk[i].x) != 1 || denominator(gk[i].y) != 1) return false;
        gr[i] = RingElem{numerator(gk[i].x), numerator(gk[i].y)};
      }
      GroupElement g;
      try {
        g = s.group_element(gr);
      } catch (const NonUnimodular&) {
        return false;
      }
      if (s.push_form(g, from.y) != to.y) return false;
      for (const auto& z : from.mins)
        if (!target_embeds.count(g.vmap() * z.embed)) return false;
      for (const auto& have : out)
        if (have == g) return false;
      out.push_back(g);
      return true;
    }
    const auto& src = from.mins[pivots[depth]];
    bool hit = false;
    for (std::size_t ia = 0; ia < to.mins.size(); ++ia) {
      if (to.mins[ia].content != src.content) continue;
      if (prof_to[ia] != prof_from[pivots[depth]]) continue;
      for (auto& u : s.vectors_on_ray(to.mins[ia].embed, src.content)) {
        bool ok = pair_value(s, ya, u, u) == pair_value(s, yb, src.gen, src.gen);
        for (std::size_t d = 0; d < depth && ok; ++d)
          ok = pair_value(s, ya, chosen[d], u) ==
               pair_value(s, yb, from.mins[pivots[d]].gen, src.gen);
        if (!ok) continue;
        chosen.push_back(u);
        bool found = assign(depth + 1);
        chosen.pop_back();
        if (found) {
          hit = true;
          if (first_only) return true;
        }
      }
    }
    return hit;
  };
  assign(0);
  return out;
}

}  // namespace

PerfectForm make_perfect_form(const ConeSpace& space, const QVector& y, std::size_t max_enum) {
  if (!space.is_in_cone(y)) throw PerfectionFailure("candidate form is not positive definite");
  auto mins = space.enumerate_cusps_below(y, Rat(1), max_enum);
  for (const auto& z : mins)
    if (space.inner(z.embed, y) != 1)
      throw PerfectionFailure("minimum of the candidate form is below 1");
  if (mins.size() < static_cast<std::size_t>(space.dim_v()))
    throw PerfectionFailure("too few minimal vectors");
  std::sort(mins.begin(), mins.end(),
            [](const CuspPoint& a, const CuspPoint& b) { return a.embed < b.embed; });
  std::vector<QVector> embeds;
  embeds.reserve(mins.size());
  for (const auto& z : mins) embeds.push_back(z.embed);
  if (rank(QMatrix::from_rows(embeds)) != static_cast<std::size_t>(space.dim_v()))
    throw PerfectionFailure("minimal vectors do not span V");
  PerfectForm f;
  f.y = y;
  f.mins = std::move(mins);
  f.comb = face_enumeration(embeds);  // sorts vertices lexicographically: matches mins
  return f;
}

std::vector<ConeRidge> cone_ridges(const ConeSpace& space, const PerfectForm& f) {
  std::vector<ConeRidge> out;
  for (const auto& r : f.comb.ridges) {
    // pairing normal: <z, nu> = (normal . z) - offset * <z, y_F>, zero on the
    // ridge, positive on the rest of the facet
    auto sol = solve_linear(space.gram(), r.normal);
    QVector nu = *sol - f.y * r.offset;
    ConeRidge cr;
    cr.verts = r.verts;
    cr.normal = nu.positive_primitive();
    out.push_back(std::move(cr));
  }
  return out;
}

Rat rho(const ConeSpace& space, const CuspPoint& x, const PerfectForm& f, const QVector& v) {
  Rat denom = space.inner(x.embed, v);
  if (denom == 0) throw DivisionByZero("rho: <x, v> = 0");
  Rat numer = Rat(1) - space.inner(x.embed, f.y);
  return numer / denom;
}

PerfectForm initial_perfect_form(const ConeSpace& space, const Guards& guards) {
  if (space.dim_v() > guards.max_dim_v)
    throw ResourceGuard("space dimension exceeds the configured guard");
  if (space.kind() == SpaceKind::symmetric) {
    int n = space.mat_size();
    QVector y(space.dim_v());
    if (n == 2) {
      // normalized [[2,-1],[-1,2]] (minimum 2)
      y[0] = 1;
      y[1] = 1;
      y[2] = Rat(-1, 2);
    } else {
      // Voronoi's principal form x_1^2+...+x_n^2 + (x_1+...+x_n)^2,
      // normalized by its minimum 2
      for (int i = 0; i < n; ++i) y[i] = 1;
      for (int i = n; i < space.dim_v(); ++i) y[i] = Rat(1, 2);
    }
    return make_perfect_form(space, y, guards.max_enum);
  }

  // Bounded-hull seeding: hull the cusps with generator sup-norm <= b and
  // test candidate facets until one verifies.
  for (Int b(2); b <= guards.max_seed_norm; b *= 2) {
    std::set<CuspPoint> cusps;
    for (Int a0 = -b; a0 <= b; ++a0)
      for (Int a1 = -b; a1 <= b; ++a1)
        for (Int a2 = -b; a2 <= b; ++a2)
          for (Int a3 = -b; a3 <= b; ++a3) {
            if (a0 == 0 && a1 == 0 && a2 == 0 && a3 == 0) continue;
            cusps.insert(space.cusp_from_generator({RingElem{a0, a1}, RingElem{a2, a3}}));
          }
    std::vector<QVector> pts;
    for (const auto& z : cusps) pts.push_back(z.embed);
    FacetCombinatorics hull = face_enumeration(pts);
    for (const auto& r : hull.ridges) {
      std::vector<QVector> verts;
      for (int i : r.verts) verts.push_back(hull.vertices[i]);
      QVector cand;
      try {
        cand = solve_affine(verts, space.gram());
      } catch (const RankDeficient&) {
        continue;
      }
      if (!space.is_in_cone(cand)) continue;
      bool near_side = true;
      for (const auto& z : cusps)
        if (space.inner(z.embed, cand) < 1) {
          near_side = false;
          break;
        }
      if (!near_side) continue;
      try {
        PerfectForm f = make_perfect_form(space, cand, guards.max_enum);
        if (f.mins.size() == r.verts.size()) return f;
      } catch (const PerfectionFailure&) {
        continue;
      }
    }
  }
  throw SeedSearchExhausted("no facet of the bounded hull verified up to sup-norm " +
                            guards.max_seed_norm.str());
}

NeighborResult neighbor_across_ridge(const ConeSpace& space, const PerfectForm& f,
                                     const ConeRidge& e, const Guards& guards) {
  const QVector& v = e.normal;
  std::set<QVector> ridge_embeds;
  for (int i : e.verts) ridge_embeds.insert(f.mins[i].embed);

  // Seed search for a member of S over cusp generators in increasing sup-norm.
  std::optional<CuspPoint> seed;
  std::optional<Rat> seed_rho;
  int gen_len = (space.kind() == SpaceKind::symmetric) ? space.mat_size() : 4;
  for (Int b(1); b <= guards.max_seed_norm && !seed; ++b) {
    std::vector<Int> coord(gen_len, -b);
    while (true) {
      bool on_shell = false;
      for (const auto& c : coord)
        if (abs(c) == b) on_shell = true;
      if (on_shell) {
        std::vector<RingElem> gen(space.mat_size());
        if (space.kind() == SpaceKind::symmetric)
          for (int i = 0; i < gen_len; ++i) gen[i] = RingElem{coord[i], 0};
        else {
          gen[0] = RingElem{coord[0], coord[1]};
          gen[1] = RingElem{coord[2], coord[3]};
        }
        CuspPoint z = space.cusp_from_generator(gen);
        if (space.inner(z.embed, v) < 0) {
          Rat r = rho(space, z, f, v);
          QVector ycand = f.y + v * r;
          if (space.is_in_cone(ycand)) {
            seed = z;
            seed_rho = r;
            break;
          }
        }
      }
      int pos = gen_len - 1;
      while (pos >= 0 && coord[pos] == b) {
        coord[pos] = -b;
        --pos;
      }
      if (pos < 0) break;
      ++coord[pos];
    }
  }
  if (!seed)
    throw SeedSearchExhausted("no member of S below generator sup-norm " +
                              guards.max_seed_norm.str());

  QVector y_ell = f.y + v * (*seed_rho);
  auto t_set = space.enumerate_cusps_below(y_ell, Rat(1), guards.max_enum);

  std::optional<Rat> rho_bar;
  std::vector<CuspPoint> argmin;
  for (const auto& x : t_set) {
    if (ridge_embeds.count(x.embed)) continue;
    Rat xv = space.inner(x.embed, v);
    if (xv >= 0) continue;  // inside T only the ridge itself pairs to >= 0
    Rat r = rho(space, x, f, v);
    if (!rho_bar || r < *rho_bar) {
      rho_bar = r;
      argmin.assign(1, x);
    } else if (r == *rho_bar) {
      argmin.push_back(x);
    }
  }
  if (!rho_bar) throw PerfectionFailure("T \\ Z_E is empty; ridge data inconsistent");

  std::vector<QVector> pts;
  for (const auto& z : argmin) pts.push_back(z.embed);
  for (const auto& ze : ridge_embeds) pts.push_back(ze);
  QVector y_g = solve_affine(pts, space.gram());
  if (y_g != f.y + v * (*rho_bar))
    throw PerfectionFailure("neighbor form does not satisfy y_G = y_F + rho_bar * v");

  return NeighborResult{make_perfect_form(space, y_g, guards.max_enum), *rho_bar, *seed};
}

std::optional<GroupElement> forms_equivalent(const ConeSpace& space, const PerfectForm& to,
                                             const PerfectForm& from) {
  auto found = equivalence_search(space, to, from, true);
  if (found.empty()) return std::nullopt;
  return found.front();
}

std::vector<GroupElement> facet_stabilizer(const ConeSpace& space, const PerfectForm& f) {
  return equivalence_search(space, f, f, false);
}

Atlas classify(const ConeSpace& space, const PerfectForm& seed, const Guards& guards) {
  if (space.dim_v() > guards.max_dim_v)
    throw ResourceGuard("space dimension exceeds the configured guard");
  Atlas atlas{space, {}, {}, {}};
  atlas.reps.push_back(seed);
  atlas.ridges.push_back(cone_ridges(space, seed));
  atlas.moves.emplace_back(atlas.ridges[0].size());

  std::deque<std::pair<int, int>> pending;
  for (std::size_t r = 0; r < atlas.ridges[0].size(); ++r)
    pending.emplace_back(0, static_cast<int>(r));

  while (!pending.empty()) {
    auto [i, r] = pending.front();
    pending.pop_front();
    NeighborResult nb = neighbor_across_ridge(space, atlas.reps[i], atlas.ridges[i][r], guards);
    bool matched = false;
    for (std::size_t j = 0; j < atlas.reps.size() && !matched; ++j) {
      auto g = forms_equivalent(space, atlas.reps[j], nb.form);
      if (g) {
        atlas.moves[i][r] = AtlasMove{static_cast<int>(j), *g};
        matched = true;
      }
    }
    if (!matched) {
      if (static_cast<int>(atlas.reps.size()) >= guards.max_reps)
        throw ResourceGuard("classification exceeded the representative cap");
      int j = static_cast<int>(atlas.reps.size());
      atlas.reps.push_back(nb.form);
      atlas.ridges.push_back(cone_ridges(space, nb.form));
      atlas.moves.emplace_back(atlas.ridges[j].size());
      for (std::size_t rr = 0; rr < atlas.ridges[j].size(); ++rr)
        pending.emplace_back(j, static_cast<int>(rr));
      atlas.moves[i][r] = AtlasMove{j, space.identity_element()};
    }
  }
  return atlas;
}

ReduceResult reduce_point(const Atlas& atlas, const QVector& x) {
  const ConeSpace& s = atlas.space;
  // The walk is valid on the whole of Pi: interior points and boundary rays.
  if (x.is_zero() || !s.is_in_closed_cone(x)) throw NotInCone("reduce_point: x is not in the cone");
  ReduceResult res;
  res.rep = 0;
  res.g = s.identity_element();
  QVector xp = x;
  res.mu = s.inner(xp, atlas.reps[0].y);
  res.mu_trace.push_back(res.mu);

  bool moved = true;
  while (moved) {
    moved = false;
    const auto& mvs = atlas.moves[res.rep];
    for (std::size_t r = 0; r < mvs.size(); ++r) {
      const AtlasMove& mv = mvs[r];
      QVector xq = s.act(mv.gamma, xp);
      Rat val = s.inner(xq, atlas.reps[mv.target].y);
      if (val < res.mu) {
        xp = xq;
        res.g = s.g_mul(mv.gamma, res.g);
        res.rep = mv.target;
        res.mu = val;
        res.mu_trace.push_back(val);
        moved = true;
        break;
      }
    }
  }
  const auto& mvs = atlas.moves[res.rep];
  for (std::size_t r = 0; r < mvs.size(); ++r) {
    QVector xq = s.act(mvs[r].gamma, xp);
    res.neighbor_values.push_back(s.inner(xq, atlas.reps[mvs[r].target].y));
  }
  return res;
}

std::vector<CuspPoint> smallest_containing_face(const Atlas& atlas, const QVector& x,
                                                const ReduceResult& rr) {
  const ConeSpace& s = atlas.space;
  QVector xp = s.act(rr.g, x);
  const PerfectForm& f = atlas.reps[rr.rep];
  const auto& ridges = atlas.ridges[rr.rep];
  std::vector<int> active;
  for (std::size_t r = 0; r < ridges.size(); ++r) {
    Rat h = s.inner(xp, ridges[r].normal);
    if (h < 0) throw PerfectionFailure("certified point lies outside its facet cone");
    if (h == 0) active.push_back(static_cast<int>(r));
  }
  std::vector<int> verts;
  if (active.empty()) {
    verts.resize(f.mins.size());
    for (std::size_t i = 0; i < verts.size(); ++i) verts[i] = static_cast<int>(i);
  } else {
    std::set<int> keep(ridges[active[0]].verts.begin(), ridges[active[0]].verts.end());
    for (std::size_t a = 1; a < active.size(); ++a) {
      std::set<int> next;
      for (int v : ridges[active[a]].verts)
        if (keep.count(v)) next.insert(v);
      keep.swap(next);
    }
    verts.assign(keep.begin(), keep.end());
  }
  GroupElement gi = s.g_inverse(rr.g);
  std::vector<CuspPoint> out;
  for (int v : verts) out.push_back(s.act(gi, f.mins[v]));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace vorsym
