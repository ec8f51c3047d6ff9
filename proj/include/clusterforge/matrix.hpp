#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "clusterforge/integer.hpp"

namespace clusterforge {

// Dense row-major integer matrix with arbitrary-precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix operator-() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  std::vector<Integer> operator*(const std::vector<Integer>& v) const;

  // Top `r` rows.
  IntMatrix top(std::size_t r) const;
  // Rows [r, rows()).
  IntMatrix bottom_from(std::size_t r) const;
  IntMatrix column(std::size_t j) const;
  std::vector<Integer> column_vector(std::size_t j) const;
  IntMatrix stack_below(const IntMatrix& lower) const;

  bool is_zero() const;
  bool is_identity() const;
  bool is_skew_symmetric() const;
  // True when the matrix is a permutation matrix.
  bool is_permutation() const;

  Integer determinant() const;
  // Inverse over the integers; nullopt if not unimodular.
  std::optional<IntMatrix> inverse() const;

  bool operator==(const IntMatrix& rhs) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

// diag(d) * m
IntMatrix diagonal_times(const std::vector<Integer>& d, const IntMatrix& m);
IntMatrix diagonal_matrix(const std::vector<Integer>& d);

}  // namespace clusterforge
