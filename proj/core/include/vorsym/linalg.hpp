#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "vorsym/rational.hpp"

namespace vorsym {

/// Dense exact-rational vector with a fixed dimension.
class QVector {
public:
  QVector() = default;
  explicit QVector(std::size_t n) : v_(n, Rat(0)) {}
  QVector(std::initializer_list<Rat> xs) : v_(xs) {}

  std::size_t size() const { return v_.size(); }
  Rat& operator[](std::size_t i) { return v_[i]; }
  const Rat& operator[](std::size_t i) const { return v_[i]; }

  bool operator==(const QVector& o) const { return v_ == o.v_; }
  bool operator!=(const QVector& o) const { return v_ != o.v_; }
  /// Lexicographic order; used wherever a deterministic total order is needed.
  bool operator<(const QVector& o) const;

  QVector operator+(const QVector& o) const;
  QVector operator-(const QVector& o) const;
  QVector operator-() const;
  QVector operator*(const Rat& c) const;

  bool is_zero() const;
  /// Plain coordinate dot product (no Gram matrix).
  Rat dot(const QVector& o) const;

  /// Scales so entries are coprime integers and the first nonzero entry is positive.
  /// Zero vector is returned unchanged.
  QVector primitive() const;

  /// Like primitive() but only ever scales by a positive rational, so the
  /// direction is preserved (for rays and oriented normals).
  QVector positive_primitive() const;

  const std::vector<Rat>& data() const { return v_; }
  std::vector<Rat>& data() { return v_; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

private:
  std::vector<Rat> v_;
};

/// Dense exact-rational matrix; dimensions are fixed at construction.
class QMatrix {
public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c, Rat(0)) {}

  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<QVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const QMatrix& o) const;
  QMatrix operator+(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  QMatrix operator*(const QMatrix& o) const;
  QVector operator*(const QVector& x) const;

  QMatrix transposed() const;
  QVector row(std::size_t i) const;
  QVector col(std::size_t j) const;

private:
  std::size_t rows_, cols_;
  std::vector<Rat> a_;
};

std::size_t rank(QMatrix m);
Rat det(QMatrix m);

/// Inverse of a square matrix; throws RankDeficient if singular.
QMatrix inverse(const QMatrix& m);

/// One exact solution of a*x = b, or nullopt if inconsistent.  When the
/// system is underdetermined the free variables are set to zero.
std::optional<QVector> solve_linear(const QMatrix& a, const QVector& b);

/// Exact basis of the right kernel of m; empty iff m has full column rank.
std::vector<QVector> kernel_basis(const QMatrix& m);

/// The unique y with <p, y> = 1 for every input point, where <x, y> = x^T gram y.
/// Requires the points to span a hyperplane not through the origin: their linear
/// span must be all of the ambient space.  Throws RankDeficient if the span is
/// too small, NoSolution if the system is inconsistent.
QVector solve_affine(const std::vector<QVector>& points, const QMatrix& gram);

struct HnfResult {
  QMatrix h;  ///< row-style Hermite normal form
  QMatrix u;  ///< unimodular, u * input = h
};

/// Row-style HNF of an integer matrix: pivots positive, entries above each
/// pivot reduced into [0, pivot).  Throws InvalidParameter on non-integer input.
HnfResult hermite_normal_form(const QMatrix& m);

/// Reduced row echelon form in place; returns pivot column indices.
std::vector<std::size_t> rref(QMatrix& m);

}  // namespace vorsym
