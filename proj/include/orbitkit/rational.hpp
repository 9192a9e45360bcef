#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace orbitkit {

using Rational = mpq_class;
using QVector = std::vector<Rational>;

/// Dense rational matrix, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  QMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static QMatrix identity(std::size_t n);
  static QMatrix unit(std::size_t n, std::size_t i, std::size_t j);  // E_ij

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const QVector& data() const { return data_; }

  QMatrix operator+(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  QMatrix operator-() const;
  QMatrix operator*(const QMatrix& o) const;
  QMatrix operator*(const Rational& s) const;
  QMatrix& operator+=(const QMatrix& o);
  bool operator==(const QMatrix& o) const;

  QMatrix transpose() const;
  Rational trace() const;
  bool is_zero() const;
  QMatrix pow(int k) const;

  /// Copy of the square sub-block [off, off+n) x [off, off+n).
  QMatrix block(std::size_t off, std::size_t n) const;
  void set_block(std::size_t off, const QMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  QVector data_;
};

QMatrix commutator(const QMatrix& a, const QMatrix& b);
/// tr(a b) without forming the product.
Rational trace_pairing(const QMatrix& a, const QMatrix& b);
QMatrix block_diagonal(const std::vector<QMatrix>& blocks);

// --- Gaussian elimination on rows of rationals ---

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<QVector>& rows);
std::size_t rank(std::vector<QVector> rows);
std::size_t rank(const QMatrix& m);
/// Basis of {x : A x = 0} where A is given by its rows over `ncols` columns.
std::vector<QVector> nullspace(std::vector<QVector> rows, std::size_t ncols);
/// Throws ConstructionError if singular.
QMatrix inverse(const QMatrix& m);

QVector flatten(const QMatrix& m);
QMatrix unflatten(const QVector& v, std::size_t n);

/// Incrementally maintained echelon basis for span membership tests.
class SpanTracker {
 public:
  explicit SpanTracker(std::size_t len) : len_(len) {}
  /// Adds v; returns false if v was already in the span.
  bool add(const QVector& v);
  bool contains(const QVector& v) const;
  std::size_t dim() const { return rows_.size(); }

 private:
  QVector reduce(QVector v) const;
  std::size_t len_;
  std::vector<QVector> rows_;       // echelon rows, pivot entry normalised to 1
  std::vector<std::size_t> pivots_;
};

}  // namespace orbitkit
