#include "vorsym/cone.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "vorsym/errors.hpp"

namespace vorsym {

namespace {

// Index of the off-diagonal coordinate (i,j), i<j, in the symmetric basis:
// the n diagonal entries come first, then pairs in lexicographic order.
std::size_t sym_off_index(int n, int i, int j) {
  // offset of pair (i,j) among all pairs with first index < i, plus position
  std::size_t base = 0;
  for (int a = 0; a < i; ++a) base += static_cast<std::size_t>(n - 1 - a);
  return static_cast<std::size_t>(n) + base + static_cast<std::size_t>(j - i - 1);
}

bool is_squarefree(int m) {
  for (int d = 2; d * d <= m; ++d)
    if (m % (d * d) == 0) return false;
  return true;
}

std::vector<Int> flatten(const std::vector<RingElem>& v) {
  std::vector<Int> t;
  t.reserve(2 * v.size());
  for (const auto& e : v) {
    t.push_back(e.x);
    t.push_back(e.y);
  }
  return t;
}

}  // namespace

bool CuspPoint::operator<(const CuspPoint& o) const {
  auto a = flatten(gen), b = flatten(o.gen);
  if (a != b) return a < b;
  return embed < o.embed;
}

// ---------------------------------------------------------------------------
// construction

ConeSpace ConeSpace::make_symmetric(int n) {
  if (n < 2) throw InvalidParameter("sym:n requires n >= 2");
  ConeSpace s;
  s.kind_ = SpaceKind::symmetric;
  s.n_ = n;
  s.dim_v_ = n * (n + 1) / 2;
  s.t_ = 0;
  s.nrm_ = 0;
  s.class_bound_ = 1;
  s.gram_ = QMatrix(s.dim_v_, s.dim_v_);
  for (int i = 0; i < n; ++i) s.gram_(i, i) = 1;
  for (int d = n; d < s.dim_v_; ++d) s.gram_(d, d) = 2;
  s.units_ = {RingElem{1, 0}, RingElem{-1, 0}};
  return s;
}

ConeSpace ConeSpace::make_hermitian(int m) {
  if (m < 1 || !is_squarefree(m))
    throw InvalidParameter("herm:m requires squarefree m >= 1");
  ConeSpace s;
  s.kind_ = SpaceKind::hermitian;
  s.n_ = 2;
  s.m_ = m;
  s.dim_v_ = 4;
  if (m % 4 == 3) {
    s.t_ = 1;
    s.nrm_ = (1 + m) / 4;
  } else {
    s.t_ = 0;
    s.nrm_ = m;
  }
  // Basis of V: E11, E22, [[0,1],[1,0]], [[0,w],[conj w,0]].
  s.gram_ = QMatrix(4, 4);
  s.gram_(0, 0) = 1;
  s.gram_(1, 1) = 1;
  s.gram_(2, 2) = 2;
  s.gram_(2, 3) = Rat(s.t_);
  s.gram_(3, 2) = Rat(s.t_);
  s.gram_(3, 3) = Rat(2 * s.nrm_);
  s.units_ = {RingElem{1, 0}, RingElem{-1, 0}};
  if (m == 1) {
    s.units_.push_back(RingElem{0, 1});
    s.units_.push_back(RingElem{0, -1});
  } else if (m == 3) {
    s.units_.push_back(RingElem{0, 1});
    s.units_.push_back(RingElem{0, -1});
    s.units_.push_back(RingElem{-1, 1});
    s.units_.push_back(RingElem{1, -1});
  }
  // Minkowski bound floor (sound overestimate: pi^2 > 9.8696).
  Int disc = (m % 4 == 3) ? Int(m) : Int(4 * m);
  Int b = isqrt(4 * disc * 10000 / 98696);
  while ((b + 1) * (b + 1) * 98696 <= 4 * disc * 10000) ++b;
  s.class_bound_ = std::max(Int(1), b);
  return s;
}

ConeSpace ConeSpace::parse(const std::string& d) {
  auto colon = d.find(':');
  if (colon == std::string::npos) throw InvalidParameter("bad space descriptor: " + d);
  std::string head = d.substr(0, colon), tail = d.substr(colon + 1);
  int v = 0;
  try {
    std::size_t used = 0;
    v = std::stoi(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw InvalidParameter("bad space descriptor: " + d);
  }
  if (head == "sym") return make_symmetric(v);
  if (head == "herm") return make_hermitian(v);
  throw InvalidParameter("bad space descriptor: " + d);
}

std::string ConeSpace::descriptor() const {
  if (kind_ == SpaceKind::symmetric) return "sym:" + std::to_string(n_);
  return "herm:" + std::to_string(m_);
}

// ---------------------------------------------------------------------------
// base ring

RingElem ConeSpace::r_add(const RingElem& a, const RingElem& b) const {
  return {a.x + b.x, a.y + b.y};
}
RingElem ConeSpace::r_sub(const RingElem& a, const RingElem& b) const {
  return {a.x - b.x, a.y - b.y};
}
RingElem ConeSpace::r_neg(const RingElem& a) const { return {-a.x, -a.y}; }

RingElem ConeSpace::r_mul(const RingElem& a, const RingElem& b) const {
  // (x1 + y1 w)(x2 + y2 w),  w^2 = t w - nrm
  return {a.x * b.x - nrm_ * a.y * b.y, a.x * b.y + a.y * b.x + t_ * a.y * b.y};
}

RingElem ConeSpace::r_conj(const RingElem& a) const { return {a.x + t_ * a.y, -a.y}; }

Int ConeSpace::r_norm(const RingElem& a) const {
  return a.x * a.x + t_ * a.x * a.y + nrm_ * a.y * a.y;
}

std::optional<RingElem> ConeSpace::r_div(const RingElem& a, const RingElem& b) const {
  Int nb = r_norm(b);
  if (nb == 0) return std::nullopt;
  RingElem p = r_mul(a, r_conj(b));
  if (p.x % nb != 0 || p.y % nb != 0) return std::nullopt;
  return RingElem{p.x / nb, p.y / nb};
}

// ---------------------------------------------------------------------------
// scalar product, positivity

Rat ConeSpace::inner(const QVector& x, const QVector& y) const {
  if (x.size() != static_cast<std::size_t>(dim_v_) || y.size() != x.size())
    throw InvalidParameter("inner: dimension mismatch");
  return x.dot(gram_ * y);
}

bool ConeSpace::is_in_cone(const QVector& y) const {
  if (y.size() != static_cast<std::size_t>(dim_v_)) throw InvalidParameter("is_in_cone: bad dimension");
  if (kind_ == SpaceKind::hermitian) {
    const Rat &a = y[0], &c = y[1], &p = y[2], &q = y[3];
    if (a <= 0) return false;
    Rat nb = p * p + Rat(t_) * p * q + Rat(nrm_) * q * q;
    return a * c - nb > 0;
  }
  // symmetric: Sylvester on the associated matrix
  QMatrix s(n_, n_);
  for (int i = 0; i < n_; ++i) s(i, i) = y[i];
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) s(i, j) = s(j, i) = y[sym_off_index(n_, i, j)];
  for (int k = 1; k <= n_; ++k) {
    QMatrix lead(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) lead(i, j) = s(i, j);
    if (det(lead) <= 0) return false;
  }
  return true;
}

bool ConeSpace::is_in_closed_cone(const QVector& y) const {
  if (y.size() != static_cast<std::size_t>(dim_v_))
    throw InvalidParameter("is_in_closed_cone: bad dimension");
  if (kind_ == SpaceKind::hermitian) {
    const Rat &a = y[0], &c = y[1], &p = y[2], &q = y[3];
    if (a < 0 || c < 0) return false;
    Rat nb = p * p + Rat(t_) * p * q + Rat(nrm_) * q * q;
    return a * c - nb >= 0;
  }
  QMatrix s(n_, n_);
  for (int i = 0; i < n_; ++i) s(i, i) = y[i];
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) s(i, j) = s(j, i) = y[sym_off_index(n_, i, j)];
  // psd iff every principal minor is nonnegative
  for (unsigned mask = 1; mask < (1u << n_); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n_; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    QMatrix sub(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = s(idx[i], idx[j]);
    if (det(sub) < 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// cusps

QVector ConeSpace::embed_of_generator(const std::vector<RingElem>& v) const {
  QVector z(dim_v_);
  if (kind_ == SpaceKind::symmetric) {
    for (int i = 0; i < n_; ++i) z[i] = Rat(v[i].x * v[i].x);
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) z[sym_off_index(n_, i, j)] = Rat(v[i].x * v[j].x);
    return z;
  }
  z[0] = Rat(r_norm(v[0]));
  z[1] = Rat(r_norm(v[1]));
  RingElem b = r_mul(v[0], r_conj(v[1]));
  z[2] = Rat(b.x);
  z[3] = Rat(b.y);
  return z;
}

namespace {
// Lex-greatest flattened tuple among unit multiples; makes +-v (and O_K-unit
// multiples) hash to one representative.
std::vector<RingElem> unit_normalize(const ConeSpace& s, std::vector<RingElem> v) {
  std::vector<RingElem> best = v;
  std::vector<Int> best_key = flatten(best);
  for (const auto& u : s.unit_group()) {
    std::vector<RingElem> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = s.r_mul(u, v[i]);
    auto key = flatten(w);
    if (key > best_key) {
      best = w;
      best_key = key;
    }
  }
  return best;
}

// Strips every scalar base-ring divisor (rational content first, then
// non-rational divisors found by norm-bounded trial division).
std::vector<RingElem> divide_out(const ConeSpace& s, std::vector<RingElem> v) {
  Int g(0);
  for (const auto& e : v) g = gcd(gcd(g, e.x), e.y);
  if (g > 1)
    for (auto& e : v) {
      e.x /= g;
      e.y /= g;
    }
  if (s.kind() == SpaceKind::symmetric) return v;
  bool progress = true;
  while (progress) {
    progress = false;
    Int cap(0);
    for (const auto& e : v) cap = std::max(cap, s.r_norm(e));
    Int xb = isqrt(cap) + 1;
    Int yb = (s.omega_norm() > 0) ? isqrt(cap / s.omega_norm()) + 1 : Int(1);
    for (Int nx = -xb; nx <= xb && !progress; ++nx)
      for (Int ny = -yb; ny <= yb && !progress; ++ny) {
        RingElem d{nx, ny};
        Int nd = s.r_norm(d);
        if (nd <= 1) continue;
        std::vector<RingElem> w(v.size());
        bool ok = true;
        for (std::size_t i = 0; i < v.size() && ok; ++i) {
          auto q = s.r_div(v[i], d);
          if (!q)
            ok = false;
          else
            w[i] = *q;
        }
        if (ok) {
          v = w;
          progress = true;
        }
      }
  }
  return v;
}
}  // namespace

CuspPoint ConeSpace::cusp_from_embed(const QVector& z) const {
  if (z.size() != static_cast<std::size_t>(dim_v_)) throw InvalidParameter("cusp_from_embed: bad dimension");
  if (z.is_zero()) throw InvalidParameter("cusp_from_embed: zero point");
  Int g(0);
  for (const auto& c : z) {
    if (denominator(c) != 1) throw InvalidParameter("cusp_from_embed: non-integral point");
    g = gcd(g, numerator(c));
  }
  if (abs(g) != 1) throw InvalidParameter("cusp_from_embed: non-primitive point");

  // Candidate generators from the matrix columns (each is conj(v_k) * v).
  std::vector<std::vector<RingElem>> cands;
  if (kind_ == SpaceKind::symmetric) {
    for (int k = 0; k < n_; ++k) {
      if (z[k] == 0) continue;  // column k = v_k * v; nonzero iff v_k != 0
      std::vector<RingElem> col(n_);
      for (int i = 0; i < n_; ++i) {
        int a = std::min(i, k), b = std::max(i, k);
        Rat e = (i == k) ? z[k] : z[sym_off_index(n_, a, b)];
        col[i] = RingElem{numerator(e), 0};
      }
      cands.push_back(divide_out(*this, col));
      break;  // one nonzero column suffices over Z
    }
  } else {
    RingElem a{numerator(z[0]), 0}, c{numerator(z[1]), 0}, b{numerator(z[2]), numerator(z[3])};
    if (!a.is_zero() || !r_conj(b).is_zero())
      cands.push_back(divide_out(*this, {a, r_conj(b)}));
    if (!b.is_zero() || !c.is_zero())
      cands.push_back(divide_out(*this, {b, c}));
  }
  if (cands.empty()) throw InvalidParameter("cusp_from_embed: not rank one");

  CuspPoint best;
  bool have = false;
  for (auto& v : cands) {
    QVector w = embed_of_generator(v);
    // w must be an integer multiple of z
    Int c(0);
    bool ok = true;
    for (int i = 0; i < dim_v_ && ok; ++i) {
      if (z[i] == 0) {
        if (w[i] != 0) ok = false;
      } else {
        Rat r = w[i] / z[i];
        if (denominator(r) != 1 || numerator(r) <= 0) ok = false;
        else if (c == 0) c = numerator(r);
        else if (c != numerator(r)) ok = false;
      }
    }
    if (!ok || c == 0) throw InvalidParameter("cusp_from_embed: not rank one / not psd");
    CuspPoint cand;
    cand.embed = z;
    cand.gen = unit_normalize(*this, v);
    cand.content = c;
    if (!have || cand.content < best.content ||
        (cand.content == best.content && flatten(cand.gen) > flatten(best.gen))) {
      best = cand;
      have = true;
    }
  }
  // psd sanity: diagonal entries nonnegative comes free from norms; verify
  // the diagonal of z itself.
  if (kind_ == SpaceKind::hermitian) {
    if (z[0] < 0 || z[1] < 0) throw InvalidParameter("cusp_from_embed: not psd");
  } else {
    for (int i = 0; i < n_; ++i)
      if (z[i] < 0) throw InvalidParameter("cusp_from_embed: not psd");
  }
  return best;
}

CuspPoint ConeSpace::cusp_from_generator(const std::vector<RingElem>& v) const {
  if (static_cast<int>(v.size()) != n_) throw InvalidParameter("cusp generator has wrong length");
  bool zero = true;
  for (const auto& e : v)
    if (!e.is_zero()) zero = false;
  if (zero) throw InvalidParameter("cusp generator is zero");
  QVector z = embed_of_generator(v);
  Int g(0);
  for (const auto& c : z) g = gcd(g, numerator(c));
  QVector zp(dim_v_);
  for (int i = 0; i < dim_v_; ++i) zp[i] = z[i] / Rat(g);
  return cusp_from_embed(zp);
}

std::vector<std::vector<RingElem>> ConeSpace::vectors_on_ray(const QVector& embed, const Int& c) const {
  // trace(u u^dag) = c * trace(embed); enumerate u with that exact trace.
  Rat tr(0);
  if (kind_ == SpaceKind::symmetric) {
    for (int i = 0; i < n_; ++i) tr += embed[i];
  } else {
    tr = embed[0] + embed[1];
  }
  QVector id(dim_v_);
  if (kind_ == SpaceKind::symmetric)
    for (int i = 0; i < n_; ++i) id[i] = 1;
  else {
    id[0] = 1;
    id[1] = 1;
  }
  QMatrix gq = generator_form(id);
  QVector target(dim_v_);
  for (int i = 0; i < dim_v_; ++i) target[i] = embed[i] * Rat(c);
  std::vector<std::vector<RingElem>> found;
  enumerate_short_vectors(gq, tr * Rat(c), [&](const std::vector<Int>& xs, const Rat& val) {
    if (val != tr * Rat(c)) return;
    std::vector<RingElem> u(n_);
    if (kind_ == SpaceKind::symmetric)
      for (int i = 0; i < n_; ++i) u[i] = RingElem{xs[i], 0};
    else {
      u[0] = RingElem{xs[0], xs[1]};
      u[1] = RingElem{xs[2], xs[3]};
    }
    if (embed_of_generator(u) == target) found.push_back(u);
  });
  return found;
}

QMatrix ConeSpace::generator_form(const QVector& y) const {
  int k = (kind_ == SpaceKind::symmetric) ? n_ : 4;
  auto basis_vec = [&](int i) {
    std::vector<RingElem> v(n_);
    if (kind_ == SpaceKind::symmetric)
      v[i] = RingElem{1, 0};
    else {
      v[i / 2] = (i % 2 == 0) ? RingElem{1, 0} : RingElem{0, 1};
    }
    return v;
  };
  auto add = [&](const std::vector<RingElem>& a, const std::vector<RingElem>& b) {
    std::vector<RingElem> r(n_);
    for (int i = 0; i < n_; ++i) r[i] = r_add(a[i], b[i]);
    return r;
  };
  auto qval = [&](const std::vector<RingElem>& v) { return inner(embed_of_generator(v), y); };
  QMatrix g(k, k);
  std::vector<Rat> diag(k);
  for (int i = 0; i < k; ++i) {
    diag[i] = qval(basis_vec(i));
    g(i, i) = diag[i];
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      Rat s = qval(add(basis_vec(i), basis_vec(j)));
      g(i, j) = g(j, i) = (s - diag[i] - diag[j]) / 2;
    }
  return g;
}

std::vector<CuspPoint> ConeSpace::enumerate_cusps_below(const QVector& y, const Rat& mu,
                                                        std::size_t max_visits) const {
  if (!is_in_cone(y)) throw NotInCone("enumerate_cusps_below: point not in the open cone");
  if (mu <= 0) return {};
  QMatrix gq = generator_form(y);
  Rat bound = mu * Rat(class_bound_);
  std::set<CuspPoint> out;
  enumerate_short_vectors(gq, bound, [&](const std::vector<Int>& xs, const Rat&) {
    std::vector<RingElem> v(n_);
    if (kind_ == SpaceKind::symmetric)
      for (int i = 0; i < n_; ++i) v[i] = RingElem{xs[i], 0};
    else {
      v[0] = RingElem{xs[0], xs[1]};
      v[1] = RingElem{xs[2], xs[3]};
    }
    CuspPoint z = cusp_from_generator(v);
    if (inner(z.embed, y) <= mu) out.insert(std::move(z));
  }, max_visits);
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// short vector enumeration (exact Fincke-Pohst)

namespace {
struct Squares {
  std::vector<Rat> d;  // positive pivots
  QMatrix c;           // c(i,j) for j>i: q(x) = sum_i d_i (x_i + sum_{j>i} c(i,j) x_j)^2
};

Squares complete_squares(QMatrix g) {
  std::size_t n = g.rows();
  Squares s;
  s.d.resize(n);
  s.c = QMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (g(i, i) <= 0) throw NotInCone("form is not positive definite");
    s.d[i] = g(i, i);
    for (std::size_t j = i + 1; j < n; ++j) s.c(i, j) = g(i, j) / g(i, i);
    for (std::size_t a = i + 1; a < n; ++a)
      for (std::size_t b = i + 1; b < n; ++b) {
        Rat delta = g(i, a) * g(i, b) / g(i, i);
        g(a, b) -= delta;
      }
  }
  return s;
}

// Integer solutions of d*(u+c)^2 <= r (d>0): the interval [-c-s, -c+s] with
// s = sqrt(r/d), bracketed by an integer-sqrt overestimate and tightened by
// exact checks.  nullopt when no integer qualifies.
std::optional<std::pair<Int, Int>> int_range(const Rat& d, const Rat& c, const Rat& r) {
  if (r < 0) return std::nullopt;
  Rat pq = r / d;  // (u+c)^2 <= pq
  Int p = numerator(pq), q = denominator(pq);
  Int s1 = isqrt(p * q);
  ++s1;
  Rat s_over(s1, q);  // s_over > s
  auto ok = [&](const Int& t) {
    Rat e = Rat(t) + c;
    return e * e <= pq;
  };
  Rat top = s_over - c;
  Int hi = rat_floor(top);
  Rat bot = -c - s_over;
  Int lo = rat_floor(bot);
  while (hi >= lo && !ok(hi)) --hi;
  if (hi < lo) return std::nullopt;
  while (!ok(lo)) ++lo;
  return std::make_pair(lo, hi);
}
}  // namespace

void enumerate_short_vectors(const QMatrix& g, const Rat& bound,
                             const std::function<void(const std::vector<Int>&, const Rat&)>& visit,
                             std::size_t max_visits) {
  if (bound < 0) return;
  std::size_t n = g.rows();
  Squares s = complete_squares(g);
  std::vector<Int> x(n, Int(0));
  std::size_t visits = 0;

  // Descend from the last coordinate; centers accumulate the linear terms.
  std::function<void(std::size_t, const Rat&, const std::vector<Rat>&)> rec =
      [&](std::size_t lvl, const Rat& rem, const std::vector<Rat>& centers) {
        std::size_t i = lvl - 1;
        auto rng = int_range(s.d[i], centers[i], rem);
        if (!rng) return;
        auto [lo, hi] = *rng;
        for (Int t = lo; t <= hi; ++t) {
          x[i] = t;
          Rat e = Rat(t) + centers[i];
          Rat used = s.d[i] * e * e;
          Rat rem2 = rem - used;
          if (i == 0) {
            bool zero = true;
            for (const auto& c : x)
              if (c != 0) zero = false;
            if (!zero) {
              if (max_visits && ++visits > max_visits)
                throw ResourceGuard("short-vector enumeration exceeded its guard");
              visit(x, bound - rem2);
            }
          } else {
            std::vector<Rat> c2 = centers;
            for (std::size_t a = 0; a < i; ++a) c2[a] += s.c(a, i) * Rat(t);
            rec(i, rem2, c2);
          }
        }
        x[i] = 0;
      };
  rec(n, bound, std::vector<Rat>(n, Rat(0)));
}

// ---------------------------------------------------------------------------
// group elements

namespace {
// k x k ring matrix helpers (row-major)
std::vector<RingElem> ring_mul(const ConeSpace& s, const std::vector<RingElem>& a,
                               const std::vector<RingElem>& b, int k) {
  std::vector<RingElem> r(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      RingElem acc{0, 0};
      for (int l = 0; l < k; ++l)
        acc = s.r_add(acc, s.r_mul(a[i * k + l], b[l * k + j]));
      r[i * k + j] = acc;
    }
  return r;
}

std::vector<RingElem> ring_conj_transpose(const ConeSpace& s, const std::vector<RingElem>& a, int k) {
  std::vector<RingElem> r(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) r[j * k + i] = s.r_conj(a[i * k + j]);
  return r;
}

RingElem ring_det(const ConeSpace& s, const std::vector<RingElem>& a, int k) {
  if (k == 1) return a[0];
  if (k == 2) return s.r_sub(s.r_mul(a[0], a[3]), s.r_mul(a[1], a[2]));
  // cofactor expansion along the first row (k <= ~6 here)
  RingElem acc{0, 0};
  for (int j = 0; j < k; ++j) {
    std::vector<RingElem> sub;
    sub.reserve(static_cast<std::size_t>(k - 1) * (k - 1));
    for (int i = 1; i < k; ++i)
      for (int l = 0; l < k; ++l)
        if (l != j) sub.push_back(a[i * k + l]);
    RingElem term = s.r_mul(a[j], ring_det(s, sub, k - 1));
    acc = (j % 2 == 0) ? s.r_add(acc, term) : s.r_sub(acc, term);
  }
  return acc;
}

// Matrix of basis element idx of V, as a ring matrix.
std::vector<RingElem> basis_matrix(const ConeSpace& s, int idx) {
  int k = s.mat_size();
  std::vector<RingElem> b(static_cast<std::size_t>(k) * k, RingElem{0, 0});
  if (s.kind() == SpaceKind::symmetric) {
    int n = k;
    if (idx < n)
      b[idx * n + idx] = RingElem{1, 0};
    else {
      int r = idx - n;
      int i = 0;
      while (r >= n - 1 - i) {
        r -= n - 1 - i;
        ++i;
      }
      int j = i + 1 + r;
      b[i * n + j] = RingElem{1, 0};
      b[j * n + i] = RingElem{1, 0};
    }
  } else {
    switch (idx) {
      case 0: b[0] = RingElem{1, 0}; break;
      case 1: b[3] = RingElem{1, 0}; break;
      case 2: b[1] = RingElem{1, 0}; b[2] = RingElem{1, 0}; break;
      default: b[1] = RingElem{0, 1}; b[2] = s.r_conj(RingElem{0, 1}); break;
    }
  }
  return b;
}

// Coordinates in V of a hermitian/symmetric ring matrix.
QVector coords_of_matrix(const ConeSpace& s, const std::vector<RingElem>& m) {
  QVector z(s.dim_v());
  int k = s.mat_size();
  if (s.kind() == SpaceKind::symmetric) {
    for (int i = 0; i < k; ++i) z[i] = Rat(m[i * k + i].x);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        z[sym_off_index(k, i, j)] = Rat(m[i * k + j].x);
  } else {
    z[0] = Rat(m[0].x);
    z[1] = Rat(m[3].x);
    z[2] = Rat(m[1].x);
    z[3] = Rat(m[1].y);
  }
  return z;
}
}  // namespace

GroupElement ConeSpace::identity_element() const {
  std::vector<RingElem> id(static_cast<std::size_t>(n_) * n_, RingElem{0, 0});
  for (int i = 0; i < n_; ++i) id[i * n_ + i] = RingElem{1, 0};
  return group_element(id);
}

GroupElement ConeSpace::group_element(const std::vector<RingElem>& entries) const {
  if (entries.size() != static_cast<std::size_t>(n_) * n_)
    throw InvalidParameter("group element has wrong shape");
  std::vector<RingElem> mat = entries;
  if (kind_ == SpaceKind::symmetric) {
    for (const auto& e : mat)
      if (e.y != 0) throw InvalidParameter("integer matrix expected over Z");
    RingElem d = ring_det(*this, mat, n_);
    if (d.x == -1 && n_ % 2 == 1) {
      for (auto& e : mat) e.x = -e.x;  // -g induces the same map; fix the determinant
      d.x = 1;
    }
    if (d.x != 1) throw NonUnimodular("determinant must be +1 over Z");
  } else {
    RingElem d = ring_det(*this, mat, n_);
    if (r_norm(d) != 1) throw NonUnimodular("determinant must be a unit of O_K");
  }
  GroupElement g;
  g.mat_ = mat;
  g.k_ = n_;
  g.vmap_ = QMatrix(dim_v_, dim_v_);
  auto gct = ring_conj_transpose(*this, mat, n_);
  for (int c = 0; c < dim_v_; ++c) {
    auto col = coords_of_matrix(*this, ring_mul(*this, ring_mul(*this, mat, basis_matrix(*this, c), n_), gct, n_));
    for (int r = 0; r < dim_v_; ++r) g.vmap_(r, c) = col[r];
  }
  g.vmap_inv_ = inverse(g.vmap_);
  return g;
}

QVector ConeSpace::act(const GroupElement& g, const QVector& x) const { return g.vmap() * x; }

CuspPoint ConeSpace::act(const GroupElement& g, const CuspPoint& z) const {
  return cusp_from_embed(g.vmap() * z.embed);
}

QVector ConeSpace::push_form(const GroupElement& g, const QVector& y) const {
  // <M z, Y'> = <z, y>  =>  Y' = G^{-1} M^{-T} G y; with G diagonal-ish we
  // solve exactly instead of inverting G.
  QVector rhs = gram_ * y;
  QVector w = g.vmap_inv().transposed() * rhs;
  auto sol = solve_linear(gram_, w);
  return *sol;
}

QVector ConeSpace::act_form(const GroupElement& g, const QVector& y) const {
  QVector rhs = gram_ * y;
  QVector w = g.vmap().transposed() * rhs;
  auto sol = solve_linear(gram_, w);
  return *sol;
}

GroupElement ConeSpace::g_mul(const GroupElement& a, const GroupElement& b) const {
  return group_element(ring_mul(*this, a.ring_mat(), b.ring_mat(), n_));
}

GroupElement ConeSpace::g_inverse(const GroupElement& g) const {
  const auto& m = g.ring_mat();
  if (n_ == 2) {
    RingElem d = ring_det(*this, m, 2);
    // d is a unit; 1/d = conj(d) when N(d) = 1, and +-1 over Z.
    RingElem dinv = (kind_ == SpaceKind::symmetric) ? d : r_conj(d);
    std::vector<RingElem> adj = {m[3], r_neg(m[1]), r_neg(m[2]), m[0]};
    for (auto& e : adj) e = r_mul(dinv, e);
    return group_element(adj);
  }
  // integer case via exact rational inverse
  QMatrix q(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) q(i, j) = Rat(m[i * n_ + j].x);
  QMatrix qi = inverse(q);
  std::vector<RingElem> r(static_cast<std::size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (denominator(qi(i, j)) != 1) throw NonUnimodular("inverse is not integral");
      r[i * n_ + j] = RingElem{numerator(qi(i, j)), 0};
    }
  return group_element(r);
}

}  // namespace vorsym
