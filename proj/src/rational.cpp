#include "orbitkit/rational.hpp"

#include <sstream>
#include <utility>

#include "orbitkit/errors.hpp"

namespace orbitkit {

QMatrix::QMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  QMatrix m(n, n);
  m(i, j) = 1;
  return m;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  QMatrix r = *this;
  r += o;
  return r;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
  QMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

QMatrix QMatrix::operator-() const {
  QMatrix r = *this;
  for (auto& v : r.data_) v = -v;
  return r;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  QMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (sgn(o(k, j)) != 0) r(i, j) += a * o(k, j);
    }
  return r;
}

QMatrix QMatrix::operator*(const Rational& s) const {
  QMatrix r = *this;
  for (auto& v : r.data_) v *= s;
  return r;
}

bool QMatrix::operator==(const QMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

QMatrix QMatrix::transpose() const {
  QMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Rational QMatrix::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
  return t;
}

bool QMatrix::is_zero() const {
  for (const auto& v : data_)
    if (sgn(v) != 0) return false;
  return true;
}

QMatrix QMatrix::pow(int k) const {
  QMatrix r = identity(rows_);
  for (int i = 0; i < k; ++i) r = r * (*this);
  return r;
}

QMatrix QMatrix::block(std::size_t off, std::size_t n) const {
  QMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = (*this)(off + i, off + j);
  return b;
}

void QMatrix::set_block(std::size_t off, const QMatrix& b) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(off + i, off + j) = b(i, j);
}

std::string QMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

Rational trace_pairing(const QMatrix& a, const QMatrix& b) {
  Rational t = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (sgn(a(i, k)) != 0 && sgn(b(k, i)) != 0) t += a(i, k) * b(k, i);
  return t;
}

QMatrix block_diagonal(const std::vector<QMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  QMatrix m(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    m.set_block(off, b);
    off += b.rows();
  }
  return m;
}

std::vector<std::size_t> rref(std::vector<QVector>& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t ncols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    const Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (sgn(rows[r][j]) != 0) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::size_t rank(std::vector<QVector> rows) { return rref(rows).size(); }

std::size_t rank(const QMatrix& m) {
  std::vector<QVector> rows(m.rows(), QVector(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rank(std::move(rows));
}

std::vector<QVector> nullspace(std::vector<QVector> rows, std::size_t ncols) {
  std::vector<std::size_t> pivots = rref(rows);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    QVector v(ncols);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

QMatrix inverse(const QMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<QVector> rows(n, QVector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
    rows[i][n + i] = 1;
  }
  auto pivots = rref(rows);
  if (pivots.size() < n || pivots[n - 1] >= n) throw ConstructionError("singular matrix");
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = rows[i][n + j];
  return inv;
}

QVector flatten(const QMatrix& m) { return m.data(); }

QMatrix unflatten(const QVector& v, std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

QVector SpanTracker::reduce(QVector v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t c = pivots_[i];
    if (sgn(v[c]) == 0) continue;
    const Rational f = v[c];
    for (std::size_t j = c; j < len_; ++j)
      if (sgn(rows_[i][j]) != 0) v[j] -= f * rows_[i][j];
  }
  return v;
}

bool SpanTracker::contains(const QVector& v) const {
  QVector r = reduce(v);
  for (const auto& x : r)
    if (sgn(x) != 0) return false;
  return true;
}

bool SpanTracker::add(const QVector& v) {
  QVector r = reduce(v);
  std::size_t c = 0;
  while (c < len_ && sgn(r[c]) == 0) ++c;
  if (c == len_) return false;
  const Rational inv = 1 / r[c];
  for (auto& x : r) x *= inv;
  // keep earlier rows reduced against the new pivot so reduce() stays single-pass
  for (auto& row : rows_) {
    if (sgn(row[c]) == 0) continue;
    const Rational f = row[c];
    for (std::size_t j = c; j < len_; ++j)
      if (sgn(r[j]) != 0) row[j] -= f * r[j];
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(c);
  return true;
}

}  // namespace orbitkit
