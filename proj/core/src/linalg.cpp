#include "vorsym/linalg.hpp"

#include <algorithm>
#include <cstdlib>

#include "vorsym/errors.hpp"

namespace vorsym {

std::string rat_to_string(const Rat& q) {
  Int n = numerator(q), d = denominator(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

Rat rat_from_string(std::string_view s) {
  if (s.empty()) throw InvalidParameter("empty rational literal");
  auto slash = s.find('/');
  auto parse_int = [](std::string_view t) -> Int {
    if (t.empty()) throw InvalidParameter("empty integer literal");
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw InvalidParameter("sign without digits");
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') throw InvalidParameter("bad digit in rational literal");
    return Int(std::string(t));
  };
  Int n = parse_int(s.substr(0, slash));
  if (slash == std::string_view::npos) return Rat(n);
  Int d = parse_int(s.substr(slash + 1));
  if (d == 0) throw InvalidParameter("zero denominator");
  return Rat(n, d);
}

Int rat_floor(const Rat& q) {
  Int n = numerator(q), d = denominator(q);
  Int quo = n / d;
  if (n < 0 && quo * d != n) --quo;
  return quo;
}

Int isqrt(const Int& n) {
  if (n < 0) throw InvalidParameter("isqrt of negative");
  return sqrt(n);
}

bool QVector::operator<(const QVector& o) const {
  return std::lexicographical_compare(v_.begin(), v_.end(), o.v_.begin(), o.v_.end());
}

QVector QVector::operator+(const QVector& o) const {
  QVector r(size());
  for (std::size_t i = 0; i < size(); ++i) r[i] = v_[i] + o[i];
  return r;
}

QVector QVector::operator-(const QVector& o) const {
  QVector r(size());
  for (std::size_t i = 0; i < size(); ++i) r[i] = v_[i] - o[i];
  return r;
}

QVector QVector::operator-() const {
  QVector r(size());
  for (std::size_t i = 0; i < size(); ++i) r[i] = -v_[i];
  return r;
}

QVector QVector::operator*(const Rat& c) const {
  QVector r(size());
  for (std::size_t i = 0; i < size(); ++i) r[i] = v_[i] * c;
  return r;
}

bool QVector::is_zero() const {
  for (const auto& x : v_)
    if (x != 0) return false;
  return true;
}

Rat QVector::dot(const QVector& o) const {
  Rat s(0);
  for (std::size_t i = 0; i < size(); ++i) s += v_[i] * o[i];
  return s;
}

QVector QVector::primitive() const {
  if (is_zero()) return *this;
  Int l(1);
  for (const auto& x : v_) l = lcm(l, denominator(x));
  Rat rl(l);
  Int g(0);
  for (const auto& x : v_) {
    Rat y = x * rl;
    g = gcd(g, numerator(y));
  }
  g = abs(g);
  Rat scale(l, g);
  for (const auto& x : v_) {
    Rat y = x * scale;
    if (y != 0) {
      if (y < 0) scale = -scale;
      break;
    }
  }
  return *this * scale;
}

QVector QVector::positive_primitive() const {
  QVector p = primitive();
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (v_[i] != 0) {
      if ((v_[i] < 0) != (p[i] < 0)) return -p;
      break;
    }
  return p;
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows) {
  if (rows.empty()) return QMatrix(0, 0);
  QMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

bool QMatrix::operator==(const QMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  QMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
  QMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  QMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

QVector QMatrix::operator*(const QVector& x) const {
  QVector r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rat s(0);
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

QMatrix QMatrix::transposed() const {
  QMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

QVector QMatrix::row(std::size_t i) const {
  QVector r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

QVector QMatrix::col(std::size_t j) const {
  QVector r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) r[i] = (*this)(i, j);
  return r;
}

std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rat inv = Rat(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(QMatrix m) { return rref(m).size(); }

Rat det(QMatrix m) {
  if (m.rows() != m.cols()) throw InvalidParameter("det of non-square matrix");
  Rat d(1);
  std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    Rat inv = Rat(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

QMatrix inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidParameter("inverse of non-square matrix");
  std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || pivots.back() != n - 1)
    throw RankDeficient("matrix is singular");
  QMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

std::optional<QVector> solve_linear(const QMatrix& a, const QVector& b) {
  std::size_t n = a.cols();
  QMatrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;  // 0 = 1 row
  QVector x(n);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, n);
  return x;
}

std::vector<QVector> kernel_basis(const QMatrix& m) {
  QMatrix e = m;
  auto pivots = rref(e);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -e(r, f);
    basis.push_back(v);
  }
  return basis;
}

QVector solve_affine(const std::vector<QVector>& points, const QMatrix& gram) {
  if (points.empty()) throw RankDeficient("no points");
  std::size_t dim = points[0].size();
  QMatrix a(points.size(), dim);
  for (std::size_t i = 0; i < points.size(); ++i) {
    QVector gi = gram * points[i];
    for (std::size_t j = 0; j < dim; ++j) a(i, j) = gi[j];
  }
  if (rank(a) < dim)
    throw RankDeficient("points do not span a hyperplane off the origin");
  QVector ones(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) ones[i] = 1;
  auto x = solve_linear(a, ones);
  if (!x) throw NoSolution("inconsistent affine system");
  return *x;
}

HnfResult hermite_normal_form(const QMatrix& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  QMatrix h = m;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (denominator(h(i, j)) != 1) throw InvalidParameter("HNF requires integer entries");
  QMatrix u = QMatrix::identity(rows);

  auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) {
    if (f == 0) return;
    Rat rf(f);
    for (std::size_t j = 0; j < cols; ++j) h(dst, j) += rf * h(src, j);
    for (std::size_t j = 0; j < rows; ++j) u(dst, j) += rf * u(src, j);
  };
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(h(a, j), h(b, j));
    for (std::size_t j = 0; j < rows; ++j) std::swap(u(a, j), u(b, j));
  };
  auto negate_row = [&](std::size_t a) {
    for (std::size_t j = 0; j < cols; ++j) h(a, j) = -h(a, j);
    for (std::size_t j = 0; j < rows; ++j) u(a, j) = -u(a, j);
  };

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Clear column c below row r by gcd steps.
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        if (best == rows || abs(numerator(h(i, c))) < abs(numerator(h(best, c)))) best = i;
      }
      if (best == rows) break;
      swap_rows(r, best);
      if (h(r, c) < 0) negate_row(r);
      bool cleared = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        Int q = numerator(h(i, c)) / numerator(h(r, c));
        add_row(i, r, -q);
        if (h(i, c) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (h(r, c) == 0) continue;
    // Reduce entries above the pivot into [0, pivot).
    Int piv = numerator(h(r, c));
    for (std::size_t i = 0; i < r; ++i) {
      Int e = numerator(h(i, c));
      Int q = e / piv;
      if (e - q * piv < 0) --q;
      add_row(i, r, -q);
    }
    ++r;
  }
  return {h, u};
}

}  // namespace vorsym
