#include "circiso/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "circiso/errors.hpp"

namespace circiso::oracle {
namespace {

void guard(int value, int limit, const char* what) {
  if (value > limit)
    throw GuardExceeded(std::string(what) + ": size " + std::to_string(value) + " exceeds " +
                        std::to_string(limit));
}

std::vector<std::vector<char>> dense(const SparseBinaryMatrix& m) {
  std::vector<std::vector<char>> d(m.n_rows, std::vector<char>(m.n_cols, 0));
  for (int i = 0; i < m.n_rows; ++i)
    for (int c : m.rows[i]) d[i][c] = 1;
  return d;
}

// Ones of `row` read along `order` form one run.
bool consecutive_in(const std::vector<char>& row, const std::vector<int>& order) {
  int runs = 0;
  char prev = 0;
  for (int c : order) {
    if (row[c] && !prev) ++runs;
    prev = row[c];
  }
  return runs <= 1;
}

// Ones of `row` read cyclically along `order` form one run (or fill it).
bool circular_in(const std::vector<char>& row, const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  int starts = 0;
  int ones = 0;
  for (int i = 0; i < n; ++i) {
    ones += row[order[i]];
    if (row[order[i]] && !row[order[(i + n - 1) % n]]) ++starts;
  }
  return ones == n || starts <= 1;
}

std::vector<std::vector<int>> sorted_rows(std::vector<std::vector<int>> rows) {
  std::sort(rows.begin(), rows.end());
  return rows;
}

bool adjacent(const Graph& g, int u, int v) {
  for (int w : g.adj[u])
    if (w == v) return true;
  return false;
}

}  // namespace

bool brute_matrix_iso(const SparseBinaryMatrix& m1, const SparseBinaryMatrix& m2) {
  guard(std::max(m1.n_cols, m2.n_cols), kMaxPermutationCols, "brute_matrix_iso");
  if (m1.n_rows != m2.n_rows || m1.n_cols != m2.n_cols) return false;
  const auto target = sorted_rows(m2.rows);
  std::vector<int> perm(m1.n_cols);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<std::vector<int>> image;
    image.reserve(m1.rows.size());
    for (const auto& r : m1.rows) {
      std::vector<int> x;
      for (int c : r) x.push_back(perm[c]);
      std::sort(x.begin(), x.end());
      image.push_back(std::move(x));
    }
    if (sorted_rows(std::move(image)) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

bool brute_circular_ones(const SparseBinaryMatrix& m) {
  guard(m.n_cols, kMaxPermutationCols, "brute_circular_ones");
  const auto d = dense(m);
  std::vector<int> order(m.n_cols);
  std::iota(order.begin(), order.end(), 0);
  do {
    bool ok = true;
    for (const auto& row : d)
      if (!circular_in(row, order)) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

std::vector<std::vector<int>> brute_consecutive_orders(const SparseBinaryMatrix& m) {
  guard(m.n_cols, kMaxPermutationCols, "brute_consecutive_orders");
  const auto d = dense(m);
  std::vector<std::vector<int>> out;
  std::vector<int> order(m.n_cols);
  std::iota(order.begin(), order.end(), 0);
  do {
    bool ok = true;
    for (const auto& row : d)
      if (!consecutive_in(row, order)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

bool brute_consecutive_ones(const SparseBinaryMatrix& m) { return !brute_consecutive_orders(m).empty(); }

std::vector<std::uint32_t> brute_strong_overlap_family(const SparseBinaryMatrix& m) {
  guard(m.n_cols, kMaxFamilyCols, "brute_strong_overlap_family");
  const std::uint32_t all = (std::uint32_t{1} << m.n_cols) - 1;
  std::vector<std::uint32_t> rows;
  for (const auto& r : m.rows) {
    std::uint32_t x = 0;
    for (int c : r) x |= std::uint32_t{1} << c;
    rows.push_back(x);
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 1; x < all; ++x) {
    bool ok = true;
    for (std::uint32_t y : rows) {
      if ((x & y) && (x & ~y) && (y & ~x) && (all & ~(x | y))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return out;
}

std::vector<std::vector<int>> brute_max_cliques(const Graph& g) {
  guard(g.n, kMaxCliqueVertices, "brute_max_cliques");
  std::vector<std::vector<int>> out;
  std::vector<int> clique;
  // Enumerate every clique in lexicographic order by extension with larger
  // vertices; keep those no vertex can extend.
  auto extendable = [&]() {
    for (int v = 0; v < g.n; ++v) {
      if (std::find(clique.begin(), clique.end(), v) != clique.end()) continue;
      bool all = true;
      for (int u : clique)
        if (!adjacent(g, u, v)) {
          all = false;
          break;
        }
      if (all) return true;
    }
    return false;
  };
  auto rec = [&](auto&& self, int start) -> void {
    if (!clique.empty() && !extendable()) out.push_back(clique);
    for (int v = start; v < g.n; ++v) {
      bool all = true;
      for (int u : clique)
        if (!adjacent(g, u, v)) {
          all = false;
          break;
        }
      if (!all) continue;
      clique.push_back(v);
      self(self, v + 1);
      clique.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

bool brute_graph_iso(const Graph& g1, const Graph& g2) {
  guard(std::max(g1.n, g2.n), kMaxIsoVertices, "brute_graph_iso");
  if (g1.n != g2.n) return false;
  std::vector<int> perm(g1.n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int u = 0; u < g1.n && ok; ++u)
      for (int v = u + 1; v < g1.n; ++v)
        if (adjacent(g1, u, v) != adjacent(g2, perm[u], perm[v])) {
          ok = false;
          break;
        }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

namespace {

std::vector<std::vector<char>> gap_sets(const CircularArcModel& a) {
  const int len = 2 * a.n_arcs;
  std::vector<std::vector<char>> sets(a.n_arcs, std::vector<char>(len, 0));
  for (int i = 0; i < a.n_arcs; ++i) {
    int start = -1;
    for (int p = 0; p < len; ++p)
      if (a.endpoints[p].arc == i && a.endpoints[p].side == Endpoint::Side::Ccw) start = p;
    for (int g = start;; g = (g + 1) % len) {
      sets[i][g] = 1;
      const Endpoint& next = a.endpoints[(g + 1) % len];
      if (next.arc == i && next.side == Endpoint::Side::Cw) break;
    }
  }
  return sets;
}

}  // namespace

Graph brute_arc_graph(const CircularArcModel& a) {
  const auto sets = gap_sets(a);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < a.n_arcs; ++i)
    for (int j = i + 1; j < a.n_arcs; ++j)
      for (int g = 0; g < 2 * a.n_arcs; ++g)
        if (sets[i][g] && sets[j][g]) {
          edges.emplace_back(i, j);
          break;
        }
  return Graph(a.n_arcs, edges);
}

std::vector<int> brute_arcs_at(const CircularArcModel& a, int gap) {
  const auto sets = gap_sets(a);
  std::vector<int> out;
  for (int i = 0; i < a.n_arcs; ++i)
    if (sets[i][gap]) out.push_back(i);
  return out;
}

}  // namespace circiso::oracle
