#include "clusterforge/matrix.hpp"

#include <ostream>
#include <sstream>
#include <utility>

#include "clusterforge/errors.hpp"

namespace clusterforge {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgument("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InvalidArgument("matrix row " + std::to_string(i + 1) + " has wrong length");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix r(*this);
  for (auto& v : r.data_) v = -v;
  return r;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidArgument("matrix product dimension mismatch");
  IntMatrix r(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) r(i, j) += a * rhs(k, j);
    }
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidArgument("matrix sum dimension mismatch");
  IntMatrix r(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += rhs.data_[i];
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const { return *this + (-rhs); }

std::vector<Integer> IntMatrix::operator*(const std::vector<Integer>& v) const {
  if (v.size() != cols_) throw InvalidArgument("matrix-vector dimension mismatch");
  std::vector<Integer> r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

IntMatrix IntMatrix::top(std::size_t r) const {
  IntMatrix t(r, cols_);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(i, j) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::bottom_from(std::size_t r) const {
  IntMatrix t(rows_ - r, cols_);
  for (std::size_t i = r; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(i - r, j) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::column(std::size_t j) const {
  IntMatrix c(rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
  return c;
}

std::vector<Integer> IntMatrix::column_vector(std::size_t j) const {
  std::vector<Integer> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntMatrix IntMatrix::stack_below(const IntMatrix& lower) const {
  if (lower.cols_ != cols_) throw InvalidArgument("stacking matrices with different column counts");
  IntMatrix r(rows_ + lower.rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < lower.rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(rows_ + i, j) = lower(i, j);
  return r;
}

bool IntMatrix::is_zero() const {
  for (const auto& v : data_)
    if (sgn(v) != 0) return false;
  return true;
}

bool IntMatrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool IntMatrix::is_skew_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if ((*this)(i, j) != -(*this)(j, i)) return false;
  return true;
}

bool IntMatrix::is_permutation() const {
  if (!is_square()) return false;
  std::vector<int> col_hits(cols_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    int row_hits = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      const Integer& v = (*this)(i, j);
      if (v == 1) {
        ++row_hits;
        ++col_hits[j];
      } else if (sgn(v) != 0) {
        return false;
      }
    }
    if (row_hits != 1) return false;
  }
  for (int h : col_hits)
    if (h != 1) return false;
  return true;
}

namespace {

// Fraction-free Gaussian elimination (Bareiss) on a copy.
Integer bareiss_determinant(std::vector<Integer> a, std::size_t n) {
  if (n == 0) return 1;
  int swaps = 0;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a[k * n + k]) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a[p * n + k]) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      ++swaps;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        a[i * n + j] = divexact(v, prev);
      }
    }
    prev = a[k * n + k];
  }
  Integer det = a[(n - 1) * n + (n - 1)];
  return swaps % 2 ? Integer(-det) : det;
}

}  // namespace

Integer IntMatrix::determinant() const {
  if (!is_square()) throw InvalidArgument("determinant of a non-square matrix");
  return bareiss_determinant(data_, rows_);
}

std::optional<IntMatrix> IntMatrix::inverse() const {
  if (!is_square()) throw InvalidArgument("inverse of a non-square matrix");
  const std::size_t n = rows_;
  std::vector<Rational> a(n * 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * 2 * n + j] = Rational((*this)(i, j));
    a[i * 2 * n + n + i] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(a[p * 2 * n + k]) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != k)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a[k * 2 * n + j], a[p * 2 * n + j]);
    Rational piv = a[k * 2 * n + k];
    for (std::size_t j = 0; j < 2 * n; ++j) a[k * 2 * n + j] /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || sgn(a[i * 2 * n + k]) == 0) continue;
      Rational f = a[i * 2 * n + k];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i * 2 * n + j] -= f * a[k * 2 * n + j];
    }
  }
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = a[i * 2 * n + n + j];
      v.canonicalize();
      if (v.get_den() != 1) return std::nullopt;
      inv(i, j) = v.get_num();
    }
  return inv;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j).get_str();
    }
    os << ']';
  }
  return os << ']';
}

IntMatrix diagonal_times(const std::vector<Integer>& d, const IntMatrix& m) {
  IntMatrix r(m);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) *= d.at(i);
  return r;
}

IntMatrix diagonal_matrix(const std::vector<Integer>& d) {
  IntMatrix r(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) r(i, i) = d[i];
  return r;
}

}  // namespace clusterforge
