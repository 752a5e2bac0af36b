#include "lvk/linalg.hpp"

#include "lvk/errors.hpp"

#include <algorithm>
#include <limits>

namespace lvk::linalg {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_symmetric() const { return rows_ == cols_ && *this == transpose(); }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw ContractViolation("matrix dimension mismatch");
  Matrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
    }
  return out;
}

namespace {

// Row index of the smallest nonzero entry (by bit size) in column c at or
// below row r, or rows() when the column is zero there.
std::size_t choose_pivot(const Matrix& m, std::size_t r, std::size_t c) {
  std::size_t best = m.rows();
  std::size_t best_size = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = r; i < m.rows(); ++i) {
    if (m(i, c) == 0) continue;
    const std::size_t size = bit_size(m(i, c));
    if (size < best_size) {
      best = i;
      best_size = size;
    }
  }
  return best;
}

void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

}  // namespace

Rational determinant(Matrix m) {
  if (m.rows() != m.cols()) throw ContractViolation("determinant of non-square matrix");
  const std::size_t n = m.rows();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t p = choose_pivot(m, c, c);
    if (p == n) return Rational(0);
    if (p != c) {
      swap_rows(m, p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      const Rational f = m(r, c) / m(c, c);
      for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return det;
}

std::size_t rank(Matrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    const std::size_t p = choose_pivot(m, r, c);
    if (p == m.rows()) continue;
    swap_rows(m, p, r);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(i, k) -= f * m(r, k);
    }
    ++r;
  }
  return r;
}

std::optional<Matrix> inverse(const Matrix& input) {
  if (input.rows() != input.cols()) throw ContractViolation("inverse of non-square matrix");
  const std::size_t n = input.rows();
  Matrix a = input;
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t p = choose_pivot(a, c, c);
    if (p == n) return std::nullopt;
    swap_rows(a, p, c);
    swap_rows(inv, p, c);
    const Rational scale = 1 / a(c, c);
    for (std::size_t k = 0; k < n; ++k) {
      a(c, k) *= scale;
      inv(c, k) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const Rational f = a(r, c);
      for (std::size_t k = 0; k < n; ++k) {
        a(r, k) -= f * a(c, k);
        inv(r, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

SparseEliminator::SparseEliminator(std::size_t cols, std::optional<std::size_t> free_col)
    : cols_(cols), free_col_(free_col) {
  if (free_col_ && *free_col_ >= cols_) throw ContractViolation("free column out of range");
}

void SparseEliminator::reduce(SparseRow& row) const {
  // Pivot rows only mention non-pivot columns besides their own, so a single
  // sweep over the pivot columns present in `row` suffices.
  std::vector<std::pair<std::size_t, Rational>> hits;
  for (const auto& [col, value] : row) {
    if (pivots_.count(col)) hits.emplace_back(col, value);
  }
  for (const auto& [col, factor] : hits) {
    row.erase(col);
    for (const auto& [c, v] : pivots_.at(col)) {
      if (c == col) continue;
      auto [it, inserted] = row.try_emplace(c, 0);
      it->second -= factor * v;
      if (it->second == 0) row.erase(it);
    }
  }
}

SparseEliminator::Outcome SparseEliminator::add_row(SparseRow row) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first >= cols_) throw ContractViolation("sparse row column out of range");
    it = (it->second == 0) ? row.erase(it) : std::next(it);
  }
  reduce(row);
  if (row.empty()) return Outcome::Redundant;

  // Partial pivoting on size; the free column is never a pivot.
  std::optional<std::size_t> pivot;
  std::size_t best_size = std::numeric_limits<std::size_t>::max();
  for (const auto& [col, value] : row) {
    if (free_col_ && col == *free_col_) continue;
    const std::size_t size = bit_size(value);
    if (size < best_size) {
      best_size = size;
      pivot = col;
    }
  }
  if (!pivot) return Outcome::Inconsistent;

  const Rational scale = 1 / row.at(*pivot);
  for (auto& [col, value] : row) value *= scale;

  // Keep earlier pivot rows free of the new pivot column.
  if (auto occ = occurs_.find(*pivot); occ != occurs_.end()) {
    for (const std::size_t p : occ->second) {
      SparseRow& target = pivots_.at(p);
      auto hit = target.find(*pivot);
      if (hit == target.end()) continue;
      const Rational factor = hit->second;
      target.erase(hit);
      for (const auto& [c, v] : row) {
        if (c == *pivot) continue;
        auto [it, inserted] = target.try_emplace(c, 0);
        it->second -= factor * v;
        if (it->second == 0) {
          target.erase(it);
        } else if (inserted) {
          occurs_[c].push_back(p);
        }
      }
    }
    occurs_.erase(occ);
  }
  for (const auto& [c, v] : row) {
    if (c != *pivot) occurs_[c].push_back(*pivot);
  }
  pivots_.emplace(*pivot, std::move(row));
  return Outcome::NewPivot;
}

Rational SparseEliminator::solve_for(std::size_t col, const Rational& free_value) const {
  const auto it = pivots_.find(col);
  if (it == pivots_.end()) throw ContractViolation("column is not determined by the system");
  Rational value(0);
  for (const auto& [c, v] : it->second) {
    if (c == col) continue;
    if (!free_col_ || c != *free_col_) {
      throw ContractViolation("column depends on an undetermined unknown");
    }
    value -= v * free_value;
  }
  return value;
}

}  // namespace lvk::linalg
