#include "doctest.h"

#include <random>
#include <set>

#include "vorsym/cone.hpp"
#include "vorsym/errors.hpp"

using namespace vorsym;

namespace {
Rat q(long n, long d = 1) { return Rat(n, d); }

CuspPoint cusp2(const ConeSpace& s, long a, long b) {
  return s.cusp_from_generator({RingElem{Int(a), 0}, RingElem{Int(b), 0}});
}

GroupElement g2(const ConeSpace& s, long a, long b, long c, long d) {
  return s.group_element({RingElem{Int(a), 0}, RingElem{Int(b), 0}, RingElem{Int(c), 0},
                          RingElem{Int(d), 0}});
}
}  // namespace

TEST_CASE("make_space dimensions and parameter checks") {
  CHECK(ConeSpace::make_symmetric(2).dim_v() == 3);
  CHECK(ConeSpace::make_symmetric(3).dim_v() == 6);
  ConeSpace h1 = ConeSpace::make_hermitian(1);
  CHECK(h1.dim_v() == 4);
  CHECK(h1.omega_trace() == 0);
  CHECK(h1.omega_norm() == 1);  // omega = i
  ConeSpace h3 = ConeSpace::make_hermitian(3);
  CHECK(h3.omega_trace() == 1);  // omega = (1+sqrt(-3))/2
  CHECK(h3.omega_norm() == 1);
  CHECK_THROWS_AS(ConeSpace::make_hermitian(12), InvalidParameter);
  CHECK_THROWS_AS(ConeSpace::make_hermitian(0), InvalidParameter);
  CHECK(ConeSpace::parse("sym:3").descriptor() == "sym:3");
  CHECK(ConeSpace::parse("herm:5").descriptor() == "herm:5");
  CHECK_THROWS_AS(ConeSpace::parse("foo:2"), InvalidParameter);
  CHECK_THROWS_AS(ConeSpace::parse("sym:x"), InvalidParameter);
}

TEST_CASE("inner product agrees with the trace pairing") {
  ConeSpace s = ConeSpace::make_symmetric(2);
  QVector id{q(1), q(1), q(0)};
  CHECK(s.inner(id, id) == 2);

  // z = (1,1)(1,1)^t, y = [[2,-1],[-1,2]] -> form value 2
  CuspPoint z = cusp2(s, 1, 1);
  QVector y{q(2), q(2), q(-1)};
  CHECK(s.inner(z.embed, y) == 2);
}

TEST_CASE("inner equals the form evaluated on the generator (random)") {
  ConeSpace s = ConeSpace::make_symmetric(2);
  std::mt19937_64 rng(42);
  for (int i = 0; i < 100; ++i) {
    long v0 = static_cast<long>(rng() % 9) - 4, v1 = static_cast<long>(rng() % 9) - 4;
    if (v0 == 0 && v1 == 0) continue;
    long a = static_cast<long>(rng() % 7) + 1, c = static_cast<long>(rng() % 7) + 1;
    long b = static_cast<long>(rng() % 5) - 2;
    QVector y{q(a), q(c), q(b)};
    QVector vvt = s.embed_of_generator({RingElem{Int(v0), 0}, RingElem{Int(v1), 0}});
    // v^t Y v expanded by hand
    Rat expect = q(a) * q(v0) * q(v0) + q(c) * q(v1) * q(v1) + 2 * q(b) * q(v0) * q(v1);
    CHECK(s.inner(vvt, y) == expect);
  }
}

TEST_CASE("is_in_cone") {
  ConeSpace s = ConeSpace::make_symmetric(2);
  CHECK(s.is_in_cone(QVector{q(1), q(1), q(0)}));
  CHECK_FALSE(s.is_in_cone(QVector{q(1), q(1), q(2)}));  // det = -3
  CuspPoint z = cusp2(s, 1, 1);
  CHECK_FALSE(s.is_in_cone(z.embed));  // rank one, boundary

  ConeSpace h = ConeSpace::make_hermitian(1);
  CHECK(h.is_in_cone(QVector{q(1), q(1), q(0), q(0)}));
  CHECK_FALSE(h.is_in_cone(QVector{q(1), q(1), q(1), q(1)}));  // det = 1-2 < 0
}

TEST_CASE("cusp canonical generators") {
  ConeSpace s = ConeSpace::make_symmetric(2);
  CHECK(cusp2(s, 1, 0) == cusp2(s, -1, 0));
  CHECK(cusp2(s, 1, 0).gen == std::vector<RingElem>{RingElem{1, 0}, RingElem{0, 0}});
  CHECK(cusp2(s, 0, -1).gen == std::vector<RingElem>{RingElem{0, 0}, RingElem{1, 0}});
  CHECK(cusp2(s, -2, -4).gen == std::vector<RingElem>{RingElem{1, 0}, RingElem{2, 0}});
  CHECK(cusp2(s, 1, -1).gen == std::vector<RingElem>{RingElem{1, 0}, RingElem{-1, 0}});

  ConeSpace h = ConeSpace::make_hermitian(1);
  // unit multiples of (1, 1-i) all normalize identically
  CuspPoint a = h.cusp_from_generator({RingElem{1, 0}, RingElem{1, -1}});
  CuspPoint b = h.cusp_from_generator({RingElem{0, 1}, RingElem{1, 1}});  // i * (1, 1-i)
  CHECK(a == b);
  CHECK(a.gen == b.gen);
  CHECK(a.content == 1);

  // (1+i, 2) = (1+i) * (1, 1-i): same cusp after stripping the scalar
  CuspPoint c = h.cusp_from_generator({RingElem{1, 1}, RingElem{2, 0}});
  CHECK(c == a);
}

TEST_CASE("non-principal ray over Q(sqrt(-5)) gets content 2") {
  ConeSpace h = ConeSpace::make_hermitian(5);
  // z = [[2, 1+w],[1-w, 3]] with w = sqrt(-5): rank one (det = 6-6 = 0), primitive.
  QVector z{q(2), q(3), q(1), q(1)};
  CuspPoint c = h.cusp_from_embed(z);
  CHECK(c.content == 2);
  CHECK(h.embed_of_generator(c.gen) == QVector{q(4), q(6), q(2), q(2)});
}

TEST_CASE("enumerate_cusps_below on the binary perfect form") {
  ConeSpace s = ConeSpace::make_symmetric(2);
  QVector y{q(1), q(1), q(-1, 2)};
  auto below2 = s.enumerate_cusps_below(y, q(2));
  CHECK(below2.size() == 3);
  std::set<CuspPoint> expect = {cusp2(s, 1, 0), cusp2(s, 0, 1), cusp2(s, 1, 1)};
  CHECK(std::set<CuspPoint>(below2.begin(), below2.end()) == expect);

  auto below1 = s.enumerate_cusps_below(QVector{q(1), q(1), q(0)}, q(1));
  std::set<CuspPoint> expect1 = {cusp2(s, 1, 0), cusp2(s, 0, 1)};
  CHECK(std::set<CuspPoint>(below1.begin(), below1.end()) == expect1);

  CHECK(s.enumerate_cusps_below(y, q(1, 2)).empty());
  CHECK_THROWS_AS(s.enumerate_cusps_below(QVector{q(1), q(1), q(2)}, q(1)), NotInCone);
}

TEST_CASE("enumeration catches non-principal cusps over Q(sqrt(-5))") {
  ConeSpace h = ConeSpace::make_hermitian(5);
  CHECK(h.class_norm_bound() >= 2);
  QVector y{q(1), q(1), q(0), q(0)};  // identity form: <z, id> = trace
  auto cusps = h.enumerate_cusps_below(y, q(5));
  // the content-2 point [[2, 1+w],[1-w, 3]] has trace 5
  CuspPoint np = h.cusp_from_embed(QVector{q(2), q(3), q(1), q(1)});
  bool found = false;
  for (const auto& c : cusps)
    if (c == np) found = true;
  CHECK(found);
}

TEST_CASE("group action on cusps and forms") {
  ConeSpace s = ConeSpace::make_symmetric(2);
  GroupElement rot = g2(s, 0, -1, 1, 0);
  CHECK(s.act(rot, cusp2(s, 1, 0)) == cusp2(s, 0, 1));

  GroupElement id = s.identity_element();
  QVector x{q(3), q(5), q(1)};
  CHECK(s.act(id, x) == x);

  CHECK_THROWS_AS(g2(s, 2, 0, 0, 1), NonUnimodular);
  CHECK_THROWS_AS(g2(s, 1, 0, 0, -1), NonUnimodular);  // det -1, n even

  SUBCASE("adjointness on random triples") {
    std::mt19937_64 rng(99);
    std::vector<GroupElement> gens = {g2(s, 1, 1, 0, 1), g2(s, 1, 0, 1, 1), rot};
    for (int i = 0; i < 100; ++i) {
      GroupElement g = gens[rng() % 3];
      if (rng() & 1) g = s.g_mul(g, gens[rng() % 3]);
      QVector a{q(static_cast<long>(rng() % 11) - 5), q(static_cast<long>(rng() % 11) - 5),
                q(static_cast<long>(rng() % 11) - 5)};
      QVector b{q(static_cast<long>(rng() % 11) - 5), q(static_cast<long>(rng() % 11) - 5),
                q(static_cast<long>(rng() % 11) - 5)};
      CHECK(s.inner(s.act(g, a), b) == s.inner(a, s.act_form(g, b)));
      CHECK(s.inner(s.act(g, a), s.push_form(g, b)) == s.inner(a, b));
    }
  }

  SUBCASE("inverse and composition") {
    GroupElement t = g2(s, 1, 1, 0, 1);
    GroupElement ti = s.g_inverse(t);
    CHECK(s.g_mul(t, ti) == s.identity_element());
    GroupElement c = s.g_mul(rot, t);
    CHECK(s.g_mul(s.g_inverse(c), c) == s.identity_element());
  }
}

TEST_CASE("hermitian group action") {
  ConeSpace h = ConeSpace::make_hermitian(1);
  // g = [[1, w],[0, 1]] with w = i
  GroupElement g = h.group_element({RingElem{1, 0}, RingElem{0, 1}, RingElem{0, 0}, RingElem{1, 0}});
  CuspPoint inf = h.cusp_from_generator({RingElem{1, 0}, RingElem{0, 0}});
  CHECK(h.act(g, inf) == inf);
  CuspPoint zero = h.cusp_from_generator({RingElem{0, 0}, RingElem{1, 0}});
  CuspPoint moved = h.act(g, zero);
  CHECK(moved == h.cusp_from_generator({RingElem{0, 1}, RingElem{1, 0}}));
  // determinant i is a unit: accepted
  CHECK_NOTHROW(h.group_element({RingElem{0, 1}, RingElem{0, 0}, RingElem{0, 0}, RingElem{1, 0}}));
  CHECK_THROWS_AS(
      h.group_element({RingElem{1, 1}, RingElem{0, 0}, RingElem{0, 0}, RingElem{1, 0}}),
      NonUnimodular);
}

TEST_CASE("action commutes with cusp enumeration") {
  ConeSpace s = ConeSpace::make_symmetric(2);
  QVector y{q(1), q(1), q(-1, 2)};
  std::mt19937_64 rng(5);
  std::vector<GroupElement> gens = {g2(s, 1, 1, 0, 1), g2(s, 1, 0, 1, 1), g2(s, 0, -1, 1, 0)};
  for (int trial = 0; trial < 10; ++trial) {
    GroupElement g = gens[rng() % 3];
    for (int j = 0; j < 3; ++j)
      if (rng() & 1) g = s.g_mul(g, gens[rng() % 3]);
    // enumerate for the pulled-back form, compare with pushed-forward cusps
    QVector ystar = s.act_form(g, y);
    auto lhs = s.enumerate_cusps_below(ystar, q(1));
    auto rhs = s.enumerate_cusps_below(y, q(1));
    std::set<CuspPoint> moved;
    GroupElement gi = s.g_inverse(g);
    for (const auto& z : rhs) moved.insert(s.act(gi, z));
    CHECK(std::set<CuspPoint>(lhs.begin(), lhs.end()) == moved);
  }
}

TEST_CASE("vectors_on_ray finds unit orbits") {
  ConeSpace h = ConeSpace::make_hermitian(1);
  CuspPoint inf = h.cusp_from_generator({RingElem{1, 0}, RingElem{0, 0}});
  auto vs = h.vectors_on_ray(inf.embed, Int(1));
  CHECK(vs.size() == 4);  // the four unit multiples of (1,0)
}
