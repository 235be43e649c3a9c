#include "doctest.h"

#include <random>

#include "vorsym/errors.hpp"
#include "vorsym/linalg.hpp"

using namespace vorsym;

namespace {
Rat q(long n, long d = 1) { return Rat(n, d); }

Int random_int(std::mt19937_64& rng, int bits) {
  Int v(0);
  for (int i = 0; i < bits; i += 32) {
    v <<= 32;
    v += static_cast<std::uint32_t>(rng());
  }
  if (rng() & 1) v = -v;
  return v;
}
}  // namespace

TEST_CASE("rational string format") {
  CHECK(rat_to_string(q(3)) == "3");
  CHECK(rat_to_string(q(-3, 6)) == "-1/2");
  CHECK(rat_from_string("12/5") == q(12, 5));
  CHECK(rat_from_string("-7") == q(-7));
  CHECK_THROWS_AS(rat_from_string("1/0"), InvalidParameter);
  CHECK_THROWS_AS(rat_from_string("a/b"), InvalidParameter);
  CHECK_THROWS_AS(rat_from_string(""), InvalidParameter);
}

TEST_CASE("exact arithmetic does not drift") {
  std::mt19937_64 rng(20250810);
  for (int i = 0; i < 200; ++i) {
    Rat a(random_int(rng, 256), abs(random_int(rng, 256)) + 1);
    Rat b(random_int(rng, 256), abs(random_int(rng, 256)) + 1);
    Rat s = a + b;
    CHECK(s - b == a);
    if (b != 0) {
      Rat p = a * b;
      CHECK(p / b == a);
    }
  }
}

TEST_CASE("solve_affine on unit axes") {
  std::vector<QVector> pts = {QVector{q(1), q(0)}, QVector{q(0), q(1)}};
  QVector y = solve_affine(pts, QMatrix::identity(2));
  CHECK(y == QVector{q(1), q(1)});
}

TEST_CASE("solve_affine recovers the binary perfect form") {
  // Minimal vectors of the A2 facet as points of V(sym:2), coords (a11, a22, a12),
  // with the trace-pairing Gram diag(1,1,2).
  QMatrix gram = QMatrix::identity(3);
  gram(2, 2) = 2;
  std::vector<QVector> pts = {QVector{q(1), q(0), q(0)}, QVector{q(0), q(1), q(0)},
                              QVector{q(1), q(1), q(1)}};
  QVector y = solve_affine(pts, gram);
  CHECK(y == QVector{q(1), q(1), q(-1, 2)});
  for (const auto& p : pts) CHECK(p.dot(gram * y) == 1);
}

TEST_CASE("solve_affine rejects rank-deficient input") {
  std::vector<QVector> pts = {QVector{q(1), q(0)}, QVector{q(1), q(0)}};
  CHECK_THROWS_AS(solve_affine(pts, QMatrix::identity(2)), RankDeficient);
}

TEST_CASE("kernel_basis") {
  CHECK(kernel_basis(QMatrix::identity(3)).empty());

  QMatrix m(1, 2);
  m(0, 0) = 1;
  m(0, 1) = -1;
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == QVector{q(1), q(1)});

  auto k2 = kernel_basis(QMatrix(2, 2));
  CHECK(k2.size() == 2);
  QMatrix kb = QMatrix::from_rows(k2);
  CHECK(rank(kb) == 2);
}

TEST_CASE("hermite normal form") {
  SUBCASE("already reduced single row") {
    QMatrix m(1, 2);
    m(0, 0) = 2;
    m(0, 1) = 4;
    auto r = hermite_normal_form(m);
    CHECK(r.h == m);
    CHECK(r.u == QMatrix::identity(1));
  }
  SUBCASE("swap to identity") {
    QMatrix m(2, 2);
    m(0, 1) = 1;
    m(1, 0) = 1;
    auto r = hermite_normal_form(m);
    CHECK(r.h == QMatrix::identity(2));
    CHECK(abs(det(r.u)) == 1);
    CHECK(r.u * m == r.h);
  }
  SUBCASE("triangular input, pivots positive, |det| preserved") {
    QMatrix m(2, 2);
    m(0, 0) = 2;
    m(0, 1) = 1;
    m(1, 1) = 3;
    auto r = hermite_normal_form(m);
    CHECK(r.h(0, 0) > 0);
    CHECK(r.h(1, 1) > 0);
    CHECK(abs(det(r.h)) == 6);
    CHECK(r.u * m == r.h);
  }
  SUBCASE("random property: U unimodular, U*m = h, h reduced") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      QMatrix m(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = q(static_cast<long>(rng() % 41) - 20);
      auto r = hermite_normal_form(m);
      CHECK(abs(det(r.u)) == 1);
      CHECK(r.u * m == r.h);
      // pivots positive, entries above pivots reduced
      std::size_t pr = 0;
      for (std::size_t c = 0; c < 3 && pr < 3; ++c) {
        if (r.h(pr, c) == 0) continue;
        CHECK(r.h(pr, c) > 0);
        for (std::size_t i = 0; i < pr; ++i) {
          CHECK(r.h(i, c) >= 0);
          CHECK(r.h(i, c) < r.h(pr, c));
        }
        ++pr;
      }
    }
  }
}

TEST_CASE("inverse and solve") {
  QMatrix m(2, 2);
  m(0, 0) = 2;
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(1, 1) = 1;
  CHECK(inverse(m) * m == QMatrix::identity(2));
  CHECK_THROWS_AS(inverse(QMatrix(2, 2)), RankDeficient);

  auto s = solve_linear(m, QVector{q(3), q(2)});
  REQUIRE(s.has_value());
  CHECK(m * *s == QVector{q(3), q(2)});

  QMatrix bad(2, 1);
  bad(0, 0) = 1;
  bad(1, 0) = 1;
  CHECK_FALSE(solve_linear(bad, QVector{q(0), q(1)}).has_value());
}

TEST_CASE("primitive scaling") {
  QVector v{q(-2, 3), q(4, 3), q(0)};
  CHECK(v.primitive() == QVector{q(1), q(-2), q(0)});
  QVector w{q(0), q(-4), q(6)};
  CHECK(w.primitive() == QVector{q(0), q(2), q(-3)});
}
