#pragma once

#include "lvk/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace lvk::linalg {

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const;
  bool is_symmetric() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Rational determinant(Matrix m);
std::size_t rank(Matrix m);

/// Exact inverse, or nullopt when the matrix is singular.
std::optional<Matrix> inverse(const Matrix& m);

/// Sparse linear form over column indices.
using SparseRow = std::map<std::size_t, Rational>;

/// Incremental exact elimination that keeps its pivot rows in reduced echelon
/// form. One column may be marked free (never chosen as a pivot); when the
/// system has rank cols-1 with that column free, every other unknown is an
/// explicit rational multiple of the free one.
class SparseEliminator {
 public:
  SparseEliminator(std::size_t cols, std::optional<std::size_t> free_col);

  enum class Outcome { NewPivot, Redundant, Inconsistent };

  /// Reduces the row against existing pivots; zero rows are redundant, rows
  /// that reduce to a multiple of the free column alone are inconsistent
  /// (they pin the free unknown to zero).
  Outcome add_row(SparseRow row);

  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool is_pivot(std::size_t col) const { return pivots_.count(col) != 0; }

  /// Value of `col` when the free unknown equals `free_value`; requires the
  /// column to be a pivot whose row mentions no other non-pivot column.
  Rational solve_for(std::size_t col, const Rational& free_value) const;

 private:
  void reduce(SparseRow& row) const;

  std::size_t cols_;
  std::optional<std::size_t> free_col_;
  std::map<std::size_t, SparseRow> pivots_;           // pivot col -> row with leading 1
  std::map<std::size_t, std::vector<std::size_t>> occurs_;  // non-pivot col -> pivot cols using it
};

}  // namespace lvk::linalg
