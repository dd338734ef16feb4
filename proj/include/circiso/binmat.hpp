#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace circiso {

// 0/1 matrix stored row-wise as strictly increasing column-index lists.
// A matrix is treated as a multiset of rows; duplicate rows are fine.
struct SparseBinaryMatrix {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<std::vector<int>> rows;

  SparseBinaryMatrix() = default;
  // Takes n_rows from rows.size(). Throws std::invalid_argument on bad rows.
  SparseBinaryMatrix(int n_cols, std::vector<std::vector<int>> rows);

  std::size_t ones() const;
  // rows + columns + ones: the storage measure used for linear-time bounds.
  std::size_t size() const { return static_cast<std::size_t>(n_rows) + n_cols + ones(); }
  void validate() const;

  friend bool operator==(const SparseBinaryMatrix&, const SparseBinaryMatrix&) = default;
};

// One row of a succinct circular-ones matrix: all-ones, all-zeros, or the
// columns first, first+1, ..., last taken modulo n_cols.
struct RowArc {
  enum class Kind : std::uint8_t { Empty, Full, Arc };

  Kind kind = Kind::Empty;
  int first = -1;
  int last = -1;

  static constexpr RowArc full() { return {Kind::Full, -1, -1}; }
  static constexpr RowArc empty() { return {Kind::Empty, -1, -1}; }
  static constexpr RowArc arc(int first, int last) { return {Kind::Arc, first, last}; }

  bool is_arc() const { return kind == Kind::Arc; }
  int length(int n_cols) const;
  bool contains(int col, int n_cols) const;

  friend bool operator==(const RowArc&, const RowArc&) = default;
};

struct SuccinctCircMatrix {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<RowArc> rows;

  SuccinctCircMatrix() = default;
  SuccinctCircMatrix(int n_cols, std::vector<RowArc> rows);

  // Arcs must be nonempty, in range, and not cover every column.
  void validate() const;

  friend bool operator==(const SuccinctCircMatrix&, const SuccinctCircMatrix&) = default;
};

// col_perm[c] is the column of M2 that column c of M1 maps to; row_perm
// likewise for rows.
struct MatrixIsoCertificate {
  std::vector<int> col_perm;
  std::vector<int> row_perm;

  friend bool operator==(const MatrixIsoCertificate&, const MatrixIsoCertificate&) = default;
};

SparseBinaryMatrix expand(const SuccinctCircMatrix& s);

// Succinct form under the stored column order; nullopt if some row is not
// circularly consecutive.
std::optional<SuccinctCircMatrix> compress(const SparseBinaryMatrix& m);
std::optional<RowArc> compress_row(std::span<const int> row, int n_cols);

// (f,l) -> (l+1, f-1) mod n_cols; Full <-> Empty. Requires n_cols >= 2.
RowArc complement_row_succinct(RowArc r, int n_cols);

struct CircOnesOrder {
  // order[p] is the original column placed at position p.
  std::vector<int> order;
  // The matrix under that order, columns indexed by position.
  SuccinctCircMatrix succinct;
};

// Finds a circular-ones column ordering by complementing the rows through the
// last column, dropping it, and testing consecutive ones with a PQ tree.
std::optional<CircOnesOrder> circ_ones_order(const SparseBinaryMatrix& m);

// Row i of the result is the complement of row i of m if flip[i].
SparseBinaryMatrix complement_rows(const SparseBinaryMatrix& m, std::span<const bool> flip);

// Column position p of the result holds original column order[p].
SparseBinaryMatrix reorder_columns(const SparseBinaryMatrix& m, std::span<const int> order);

SparseBinaryMatrix apply_certificate(const SparseBinaryMatrix& m, const MatrixIsoCertificate& cert);

// True iff cert maps m1 onto m2 exactly. Throws std::invalid_argument when
// the dimensions (of the matrices or of the certificate) disagree.
bool matrices_equal_under(const SparseBinaryMatrix& m1, const SparseBinaryMatrix& m2,
                          const MatrixIsoCertificate& cert);

bool is_permutation_of_iota(std::span<const int> perm);
std::vector<int> invert_permutation(std::span<const int> perm);

}  // namespace circiso
