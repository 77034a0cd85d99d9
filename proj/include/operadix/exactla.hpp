#pragma once

#include "operadix/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace operadix {

/// A sparse vector entry: (column, value). Rows keep entries sorted by
/// column and never store zeros.
using SparseEntry = std::pair<std::uint32_t, Rational>;
using SparseRow = std::vector<SparseEntry>;

/// Rational matrix. Logically `rows x cols` entries in row-major order;
/// physically each row is stored sparsely since the matrices built here
/// (relation spans, cochain differentials) are wide and mostly zero.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  /// Dense row-major construction; `entries.size()` must equal rows * cols.
  QMatrix(std::size_t rows, std::size_t cols, const std::vector<Rational>& entries);

  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& value);

  const SparseRow& row(std::size_t r) const { return rows_.at(r); }
  /// Appends a row; entries are sorted and zeros dropped.
  void append_row(SparseRow row);
  void append_dense_row(const std::vector<Rational>& row);
  std::vector<Rational> dense_row(std::size_t r) const;

  QMatrix transpose() const;
  /// Rows of `*this` followed by rows of `other`; column counts must agree.
  QMatrix stacked(const QMatrix& other) const;
  std::vector<Rational> multiply(const std::vector<Rational>& x) const;

  friend bool operator==(const QMatrix& a, const QMatrix& b);

 private:
  std::size_t cols_ = 0;
  std::vector<SparseRow> rows_;
};

/// Rank over Q. Rows are cleared to primitive integer vectors and reduced
/// fraction-free; the pivot in each column is the candidate with the
/// smallest leading-entry bit size.
std::size_t rank(const QMatrix& m);

/// Basis of {x : m x = 0}, one dense vector per free column.
std::vector<std::vector<Rational>> nullspace(const QMatrix& m);

/// Reduced row echelon form with zero rows dropped (a canonical basis of the
/// row space: two matrices span the same rows iff their bases are equal).
QMatrix row_basis(const QMatrix& m);

struct SubspaceDims {
  std::size_t dim_a;
  std::size_t dim_b;
  std::size_t dim_sum;

  std::size_t dim_intersection() const { return dim_a + dim_b - dim_sum; }
};

/// Ranks of the row spaces of a, b, and a + b. Throws DimensionError when
/// the column counts differ.
SubspaceDims subspace_dim_sum(const QMatrix& a, const QMatrix& b);

/// True when `v` lies in the row space of `m`.
bool in_row_space(const QMatrix& m, const std::vector<Rational>& v);

}  // namespace operadix
