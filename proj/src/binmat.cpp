#include "circiso/binmat.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "circiso/errors.hpp"
#include "circiso/pqtree.hpp"

namespace circiso {

SparseBinaryMatrix::SparseBinaryMatrix(int n_cols, std::vector<std::vector<int>> rows)
    : n_rows(static_cast<int>(rows.size())), n_cols(n_cols), rows(std::move(rows)) {
  validate();
}

std::size_t SparseBinaryMatrix::ones() const {
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  return total;
}

void SparseBinaryMatrix::validate() const {
  if (n_cols < 0) throw std::invalid_argument("matrix: negative column count");
  if (n_rows != static_cast<int>(rows.size())) throw std::invalid_argument("matrix: row count mismatch");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    int prev = -1;
    for (int c : rows[i]) {
      if (c < 0 || c >= n_cols)
        throw std::invalid_argument("matrix: row " + std::to_string(i) + " has column out of range");
      if (c <= prev)
        throw std::invalid_argument("matrix: row " + std::to_string(i) + " is not strictly increasing");
      prev = c;
    }
  }
}

int RowArc::length(int n_cols) const {
  switch (kind) {
    case Kind::Empty:
      return 0;
    case Kind::Full:
      return n_cols;
    case Kind::Arc:
      return (last - first + n_cols) % n_cols + 1;
  }
  return 0;
}

bool RowArc::contains(int col, int n_cols) const {
  switch (kind) {
    case Kind::Empty:
      return false;
    case Kind::Full:
      return true;
    case Kind::Arc:
      return (col - first + n_cols) % n_cols <= (last - first + n_cols) % n_cols;
  }
  return false;
}

SuccinctCircMatrix::SuccinctCircMatrix(int n_cols, std::vector<RowArc> rows)
    : n_rows(static_cast<int>(rows.size())), n_cols(n_cols), rows(std::move(rows)) {
  validate();
}

void SuccinctCircMatrix::validate() const {
  if (n_cols < 0) throw std::invalid_argument("succinct matrix: negative column count");
  if (n_rows != static_cast<int>(rows.size()))
    throw std::invalid_argument("succinct matrix: row count mismatch");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RowArc& r = rows[i];
    if (!r.is_arc()) continue;
    if (r.first < 0 || r.first >= n_cols || r.last < 0 || r.last >= n_cols)
      throw std::invalid_argument("succinct matrix: row " + std::to_string(i) + " out of range");
    if (r.length(n_cols) == n_cols)
      throw std::invalid_argument("succinct matrix: row " + std::to_string(i) + " covers every column");
  }
}

SparseBinaryMatrix expand(const SuccinctCircMatrix& s) {
  SparseBinaryMatrix m;
  m.n_cols = s.n_cols;
  m.n_rows = s.n_rows;
  m.rows.resize(s.rows.size());
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const RowArc& r = s.rows[i];
    auto& out = m.rows[i];
    if (r.kind == RowArc::Kind::Full) {
      out.resize(s.n_cols);
      std::iota(out.begin(), out.end(), 0);
    } else if (r.is_arc()) {
      const int len = r.length(s.n_cols);
      out.reserve(len);
      for (int k = 0; k < len; ++k) out.push_back((r.first + k) % s.n_cols);
      std::sort(out.begin(), out.end());
    }
  }
  return m;
}

std::optional<RowArc> compress_row(std::span<const int> row, int n_cols) {
  const auto s = static_cast<int>(row.size());
  if (s == 0) return RowArc::empty();
  if (s == n_cols) return RowArc::full();
  int breaks = 0;
  int brk = -1;
  for (int i = 0; i < s; ++i) {
    if (row[(i + 1) % s] != (row[i] + 1) % n_cols) {
      ++breaks;
      brk = i;
    }
  }
  if (breaks != 1) return std::nullopt;
  return RowArc::arc(row[(brk + 1) % s], row[brk]);
}

std::optional<SuccinctCircMatrix> compress(const SparseBinaryMatrix& m) {
  SuccinctCircMatrix s;
  s.n_cols = m.n_cols;
  s.n_rows = m.n_rows;
  s.rows.reserve(m.rows.size());
  for (const auto& r : m.rows) {
    auto a = compress_row(r, m.n_cols);
    if (!a) return std::nullopt;
    s.rows.push_back(*a);
  }
  return s;
}

RowArc complement_row_succinct(RowArc r, int n_cols) {
  switch (r.kind) {
    case RowArc::Kind::Empty:
      return RowArc::full();
    case RowArc::Kind::Full:
      return RowArc::empty();
    case RowArc::Kind::Arc:
      break;
  }
  if (n_cols < 2) throw std::invalid_argument("complement_row_succinct: needs two columns");
  return RowArc::arc((r.last + 1) % n_cols, (r.first - 1 + n_cols) % n_cols);
}

std::optional<CircOnesOrder> circ_ones_order(const SparseBinaryMatrix& m) {
  const int n = m.n_cols;
  CircOnesOrder result;
  if (n <= 2) {
    result.order.resize(n);
    std::iota(result.order.begin(), result.order.end(), 0);
  } else {
    const int c = n - 1;
    PQTree tree(n - 1);
    std::vector<int> buf;
    std::vector<char> mark(n, 0);
    for (const auto& row : m.rows) {
      const bool has_c = !row.empty() && row.back() == c;
      if (has_c) {
        for (int v : row) mark[v] = 1;
        buf.clear();
        for (int v = 0; v < c; ++v)
          if (!mark[v]) buf.push_back(v);
        for (int v : row) mark[v] = 0;
        if (!tree.reduce(buf)) return std::nullopt;
      } else if (!tree.reduce(row)) {
        return std::nullopt;
      }
    }
    result.order = tree.frontier();
    result.order.push_back(c);
  }
  auto s = compress(reorder_columns(m, result.order));
  if (!s) throw InvariantError("circ_ones_order: PQ frontier is not a circular-ones order");
  result.succinct = std::move(*s);
  return result;
}

SparseBinaryMatrix complement_rows(const SparseBinaryMatrix& m, std::span<const bool> flip) {
  if (flip.size() != m.rows.size()) throw std::invalid_argument("complement_rows: flag count mismatch");
  SparseBinaryMatrix out = m;
  std::vector<char> mark(m.n_cols, 0);
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    if (!flip[i]) continue;
    for (int v : m.rows[i]) mark[v] = 1;
    auto& r = out.rows[i];
    r.clear();
    for (int v = 0; v < m.n_cols; ++v)
      if (!mark[v]) r.push_back(v);
    for (int v : m.rows[i]) mark[v] = 0;
  }
  return out;
}

SparseBinaryMatrix reorder_columns(const SparseBinaryMatrix& m, std::span<const int> order) {
  if (static_cast<int>(order.size()) != m.n_cols || !is_permutation_of_iota(order))
    throw std::invalid_argument("reorder_columns: order is not a column permutation");
  const std::vector<int> pos = invert_permutation(order);
  SparseBinaryMatrix out;
  out.n_cols = m.n_cols;
  out.n_rows = m.n_rows;
  out.rows.resize(m.rows.size());
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    auto& r = out.rows[i];
    r.reserve(m.rows[i].size());
    for (int v : m.rows[i]) r.push_back(pos[v]);
    std::sort(r.begin(), r.end());
  }
  return out;
}

SparseBinaryMatrix apply_certificate(const SparseBinaryMatrix& m, const MatrixIsoCertificate& cert) {
  if (static_cast<int>(cert.col_perm.size()) != m.n_cols || static_cast<int>(cert.row_perm.size()) != m.n_rows)
    throw std::invalid_argument("apply_certificate: certificate size mismatch");
  if (!is_permutation_of_iota(cert.col_perm) || !is_permutation_of_iota(cert.row_perm))
    throw std::invalid_argument("apply_certificate: certificate is not a pair of permutations");
  SparseBinaryMatrix out;
  out.n_cols = m.n_cols;
  out.n_rows = m.n_rows;
  out.rows.resize(m.rows.size());
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    auto& r = out.rows[cert.row_perm[i]];
    r.reserve(m.rows[i].size());
    for (int v : m.rows[i]) r.push_back(cert.col_perm[v]);
    std::sort(r.begin(), r.end());
  }
  return out;
}

bool matrices_equal_under(const SparseBinaryMatrix& m1, const SparseBinaryMatrix& m2,
                          const MatrixIsoCertificate& cert) {
  if (m1.n_rows != m2.n_rows || m1.n_cols != m2.n_cols)
    throw std::invalid_argument("matrices_equal_under: dimension mismatch");
  return apply_certificate(m1, cert).rows == m2.rows;
}

bool is_permutation_of_iota(std::span<const int> perm) {
  std::vector<char> seen(perm.size(), 0);
  for (int v : perm) {
    if (v < 0 || static_cast<std::size_t>(v) >= perm.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::vector<int> invert_permutation(std::span<const int> perm) {
  if (!is_permutation_of_iota(perm)) throw std::invalid_argument("invert_permutation: not a permutation");
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
  return inv;
}

}  // namespace circiso
