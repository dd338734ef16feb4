#include "circiso/pctree.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "circiso/errors.hpp"
#include "circiso/pqtree.hpp"

namespace circiso {

int QuotientPCTree::slot_of(int u, int v) const {
  const auto& nb = nodes[u].nbrs;
  for (int s = 0; s < static_cast<int>(nb.size()); ++s)
    if (nb[s] == v) return s;
  return -1;
}

std::vector<std::vector<int>> QuotientPCTree::back_slots() const {
  // incoming[u] collects (v, slot of u in v) with v ascending; matching it
  // against u's own neighbours sorted by id pairs up the two slots of each edge.
  std::vector<std::vector<std::pair<int, int>>> incoming(nodes.size());
  for (int v = 0; v < n_nodes(); ++v)
    for (int j = 0; j < nodes[v].degree(); ++j) incoming[nodes[v].nbrs[j]].emplace_back(v, j);
  std::vector<std::vector<int>> back(nodes.size());
  std::vector<std::pair<int, int>> own;
  for (int u = 0; u < n_nodes(); ++u) {
    const auto& nb = nodes[u].nbrs;
    own.clear();
    for (int s = 0; s < static_cast<int>(nb.size()); ++s) own.emplace_back(nb[s], s);
    std::sort(own.begin(), own.end());
    if (own.size() != incoming[u].size()) throw InvariantError("PC tree: asymmetric adjacency");
    back[u].assign(nb.size(), -1);
    for (std::size_t i = 0; i < own.size(); ++i) {
      if (own[i].first != incoming[u][i].first) throw InvariantError("PC tree: asymmetric adjacency");
      back[u][own[i].second] = incoming[u][i].second;
    }
  }
  return back;
}

std::vector<int> QuotientPCTree::leaf_order() const {
  std::vector<int> out;
  if (n_cols == 0) return out;
  if (degenerate()) {
    out.resize(n_cols);
    std::iota(out.begin(), out.end(), 0);
    return out;
  }
  const auto back = back_slots();
  out.push_back(0);
  int cur = nodes[0].nbrs[0];
  int in_slot = back[0][0];
  const std::size_t limit = 4 * nodes.size() + 4;
  for (std::size_t steps = 0; steps < limit; ++steps) {
    const int deg = nodes[cur].degree();
    const int s = (in_slot + 1) % deg;
    const int next = nodes[cur].nbrs[s];
    if (is_leaf(next)) {
      if (next == 0) return out;
      out.push_back(next);
      in_slot = s;  // bounce off the leaf
      continue;
    }
    in_slot = back[cur][s];
    cur = next;
  }
  throw InvariantError("PC tree: leaf walk does not close");
}

namespace {

using Kind = PCNode::Kind;

int span_size(const QuotientRow& r, int deg) { return (r.last - r.first + deg) % deg + 1; }

// Tree rooted at a leaf: parent pointers, slots, and leaf ranges by position.
struct Rooting {
  int top = -1;
  std::vector<int> parent;
  std::vector<int> slot_in_parent;
  std::vector<int> parent_slot;
  std::vector<int> lo;
  std::vector<int> hi;
  std::vector<int> depth;
};

Rooting root_at_leaf(const QuotientPCTree& t, int leaf) {
  const int n = t.n_nodes();
  Rooting r;
  r.parent.assign(n, -1);
  r.slot_in_parent.assign(n, -1);
  r.parent_slot.assign(n, -1);
  r.lo.assign(n, t.n_cols);
  r.hi.assign(n, -1);
  r.depth.assign(n, 0);
  r.top = t.nodes[leaf].nbrs[0];
  std::vector<int> order;
  order.reserve(n);
  std::vector<int> stack{r.top};
  r.parent[r.top] = leaf;
  r.parent_slot[r.top] = t.slot_of(r.top, leaf);
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    const auto& nb = t.nodes[u].nbrs;
    const int deg = static_cast<int>(nb.size());
    for (int s = 0; s < deg; ++s) {
      if (s == r.parent_slot[u]) continue;
      const int v = nb[s];
      r.parent[v] = u;
      r.slot_in_parent[v] = s;
      r.depth[v] = r.depth[u] + 1;
      r.parent_slot[v] = t.is_leaf(v) ? 0 : t.slot_of(v, u);
      if (t.is_leaf(v)) {
        r.lo[v] = r.hi[v] = v;
        order.push_back(v);
      } else {
        stack.push_back(v);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int u = *it;
    if (u == r.top) continue;
    const int p = r.parent[u];
    r.lo[p] = std::min(r.lo[p], r.lo[u]);
    r.hi[p] = std::max(r.hi[p], r.hi[u]);
  }
  return r;
}

// Shallowest-node range minimum over the lowest common ancestors of
// consecutive leaves; the LCA of leaves x < y is the shallowest of those in
// [x, y). Levels stop at the longest query.
struct AdjacentLca {
  const Rooting& r;
  std::vector<std::vector<int>> table;

  AdjacentLca(const Rooting& r, int n_leaves, int max_span) : r(r) {
    std::vector<int> base(std::max(0, n_leaves - 1));
    for (int i = 0; i + 1 < n_leaves; ++i) {
      int v = i;
      while (r.hi[v] < i + 1) v = r.parent[v];
      base[i] = v;
    }
    table.push_back(std::move(base));
    for (int w = 1; 2 * w <= max_span; w *= 2) {
      const auto& prev = table.back();
      if (prev.size() <= static_cast<std::size_t>(w)) break;
      std::vector<int> next(prev.size() - w);
      for (std::size_t i = 0; i < next.size(); ++i) next[i] = shallower(prev[i], prev[i + w]);
      table.push_back(std::move(next));
    }
  }

  int shallower(int a, int b) const { return r.depth[a] <= r.depth[b] ? a : b; }

  int query(int x, int y) const {
    const int j = static_cast<int>(std::bit_width(static_cast<unsigned>(y - x))) - 1;
    return shallower(table[j][x], table[j][y - (1 << j)]);
  }
};

// Slot of the child of u whose leaf range holds pos; children follow the
// parent slot in increasing leaf order.
int child_slot(const QuotientPCTree& t, const Rooting& r, int u, int pos) {
  const auto& nb = t.nodes[u].nbrs;
  const int deg = static_cast<int>(nb.size());
  const int ps = r.parent_slot[u];
  int lo = 1, hi = deg - 1;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (r.lo[nb[(ps + mid) % deg]] <= pos)
      lo = mid;
    else
      hi = mid - 1;
  }
  return (ps + lo) % deg;
}

void classify(QuotientPCTree& t, const std::vector<Kind>& provisional) {
  for (int u = t.n_cols; u < t.n_nodes(); ++u) {
    PCNode& node = t.nodes[u];
    const int deg = node.degree();
    bool prime = false;
    for (const auto& q : node.quotient) {
      const int sz = span_size(q, deg);
      if (sz >= 2 && sz <= deg - 2) prime = true;
    }
    if (prime && provisional[u] == Kind::P)
      throw InvariantError("PC tree: P node " + std::to_string(u) + " has a quotient row of size 2..deg-2");
    node.kind = prime ? Kind::C : Kind::P;
  }
}

}  // namespace

QuotientPCTree build_pc(const SuccinctCircMatrix& s) {
  s.validate();
  const int k = s.n_cols;
  QuotientPCTree t;
  t.n_cols = k;
  t.n_rows = s.n_rows;
  t.column_label.resize(k);
  std::iota(t.column_label.begin(), t.column_label.end(), 0);
  for (int i = 0; i < s.n_rows; ++i) {
    if (s.rows[i].kind == RowArc::Kind::Full) t.full_rows.push_back(i);
    else if (s.rows[i].kind == RowArc::Kind::Empty) t.empty_rows.push_back(i);
  }
  t.nodes.resize(k);
  if (t.degenerate()) {
    t.degenerate_rows.resize(s.n_rows);
    for (int i = 0; i < s.n_rows; ++i) {
      const RowArc& r = s.rows[i];
      if (!r.is_arc()) continue;
      for (int j = 0; j < r.length(k); ++j) t.degenerate_rows[i].push_back((r.first + j) % k);
      std::sort(t.degenerate_rows[i].begin(), t.degenerate_rows[i].end());
    }
    if (k == 2) {
      t.nodes[0].nbrs = {1};
      t.nodes[1].nbrs = {0};
    }
    return t;
  }

  // Consecutive-ones tree of the matrix with column c removed and the rows
  // through c complemented.
  const int c = k - 1;
  PQTree pq(k - 1);
  std::vector<RowArc> reduced;
  std::vector<int> bucket_start(k + 1, 0);
  for (const RowArc& r : s.rows) {
    if (!r.is_arc()) continue;
    const RowArc x = r.contains(c, k) ? complement_row_succinct(r, k) : r;
    if (x.first > x.last) throw InvariantError("build_pc: stored column order is not circular-ones");
    reduced.push_back(x);
    ++bucket_start[x.first + 1];
  }
  // Left to right by first column, for locality in the PQ tree.
  for (int j = 0; j < k; ++j) bucket_start[j + 1] += bucket_start[j];
  std::vector<RowArc> by_first(reduced.size());
  for (const RowArc& x : reduced) by_first[bucket_start[x.first]++] = x;
  std::vector<int> buf;
  for (const RowArc& x : by_first) {
    buf.resize(x.last - x.first + 1);
    std::iota(buf.begin(), buf.end(), x.first);
    if (!pq.reduce(buf)) throw InvariantError("build_pc: stored column order is not circular-ones");
  }
  std::vector<int> identity(k - 1);
  std::iota(identity.begin(), identity.end(), 0);
  if (!pq.arrange_to(identity)) throw InvariantError("build_pc: identity order unreachable in PQ tree");

  // PQ nodes become PC nodes; each internal node lists its parent (the leaf c
  // for the root) followed by its children left to right.
  std::vector<Kind> provisional(k, Kind::Leaf);
  std::vector<std::pair<int, int>> stack{{pq.root(), c}};
  while (!stack.empty()) {
    auto [x, parent_id] = stack.back();
    stack.pop_back();
    if (pq.kind(x) == PQTree::Kind::Leaf) {
      const int v = pq.leaf_value(x);
      t.nodes[v].nbrs = {parent_id};
      t.nodes[parent_id].nbrs.push_back(v);
      continue;
    }
    const int id = t.n_nodes();
    t.nodes.emplace_back();
    t.nodes[id].kind = pq.kind(x) == PQTree::Kind::P ? Kind::P : Kind::C;
    provisional.push_back(t.nodes[id].kind);
    t.nodes[id].nbrs.push_back(parent_id);
    if (parent_id != c) t.nodes[parent_id].nbrs.push_back(id);
    const auto kids = pq.children(x);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.emplace_back(*it, id);
  }
  t.nodes[c].nbrs = {t.n_cols};

  succinct_quotients(t, s);
  classify(t, provisional);
  return t;
}

std::optional<QuotientPCTree> build_pc(const SparseBinaryMatrix& m) {
  auto order = circ_ones_order(m);
  if (!order) return std::nullopt;
  QuotientPCTree t = build_pc(order->succinct);
  t.column_label = order->order;
  return t;
}

void succinct_quotients(QuotientPCTree& t, const SuccinctCircMatrix& s) {
  if (s.n_cols != t.n_cols) throw std::invalid_argument("succinct_quotients: column count mismatch");
  for (auto& node : t.nodes) node.quotient.clear();
  if (t.degenerate()) return;
  const int k = t.n_cols;
  const int c = k - 1;
  const Rooting r = root_at_leaf(t, c);
  int max_span = 1;
  for (const RowArc& row : s.rows)
    if (row.is_arc()) max_span = std::max(max_span, row.contains(c, k) ? k - row.length(k) : row.length(k));
  const AdjacentLca lca(r, k - 1, max_span);
  const auto back = t.back_slots();

  auto attach = [&](int u, int row, int first, int last) {
    const int deg = t.nodes[u].degree();
    t.nodes[u].quotient.push_back({row, (first % deg + deg) % deg, (last % deg + deg) % deg});
  };

  for (int i = 0; i < s.n_rows; ++i) {
    const RowArc& row = s.rows[i];
    if (!row.is_arc()) continue;
    const int len = row.length(k);
    if (len == 1) {
      const int u = t.nodes[row.first].nbrs[0];
      const int j = back[row.first][0];
      attach(u, i, j, j);
      continue;
    }
    if (len == k - 1) {
      const int x = (row.last + 1) % k;
      const int u = t.nodes[x].nbrs[0];
      const int j = back[x][0];
      attach(u, i, j + 1, j - 1);
      continue;
    }
    const bool through_c = row.contains(c, k);
    const RowArc x = through_c ? complement_row_succinct(row, k) : row;
    const int u = lca.query(x.first, x.last);
    const int a = child_slot(t, r, u, x.first);
    const int b = child_slot(t, r, u, x.last);
    if (a == b) throw InvariantError("succinct_quotients: row inside one child");
    if (!through_c) {
      attach(u, i, a, b);
      continue;
    }
    const int deg = t.nodes[u].degree();
    if ((b + 1) % deg != (a - 1 + deg) % deg) {
      attach(u, i, b + 1, a - 1);
      continue;
    }
    // The complement leaves only the parent side of u: the row is everything
    // beyond u, so it belongs to the parent, spanning all of it but u.
    const int w = r.parent[u];
    if (t.is_leaf(w)) throw InvariantError("succinct_quotients: relocation onto a leaf");
    const int j = r.slot_in_parent[u];
    attach(w, i, j + 1, j - 1);
  }
}

std::vector<Projection> project_rows(const QuotientPCTree& t, const SuccinctCircMatrix& s) {
  if (s.n_cols != t.n_cols) throw std::invalid_argument("project_rows: column count mismatch");
  std::vector<Projection> out(s.n_rows);
  if (t.degenerate()) return out;
  const int n = t.n_nodes();
  const auto back = t.back_slots();
  std::vector<int> counter(n, 0);
  std::vector<char> black(n, 0);
  std::vector<int> touched;
  std::vector<int> queue;

  for (int i = 0; i < s.n_rows; ++i) {
    const RowArc& row = s.rows[i];
    if (!row.is_arc()) continue;
    touched.clear();
    queue.clear();
    const int len = row.length(t.n_cols);
    for (int j = 0; j < len; ++j) {
      const int leaf = (row.first + j) % t.n_cols;
      black[leaf] = 1;
      touched.push_back(leaf);
      queue.push_back(leaf);
    }
    // A node turns black once all but one neighbour are black; it then
    // notifies that remaining neighbour.
    int last_black_internal = -1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const int x = queue[h];
      int target = -1;
      for (int y : t.nodes[x].nbrs)
        if (!black[y]) {
          target = y;
          break;
        }
      if (target < 0 || t.is_leaf(target)) continue;
      if (counter[target]++ == 0) touched.push_back(target);
      if (counter[target] == t.nodes[target].degree() - 1) {
        black[target] = 1;
        last_black_internal = target;
        queue.push_back(target);
      }
    }
    int u = -1;
    for (int v : touched)
      if (!t.is_leaf(v) && !black[v] && counter[v] >= 2) {
        if (u >= 0) throw InvariantError("project_rows: two partial nodes");
        u = v;
      }
    Projection p;
    if (u >= 0) {
      // The black neighbours form one cyclic run.
      const int deg = t.nodes[u].degree();
      int first = -1;
      int last = -1;
      for (int sidx = 0; sidx < deg; ++sidx) {
        const bool in = black[t.nodes[u].nbrs[sidx]];
        const bool prev_in = black[t.nodes[u].nbrs[(sidx + deg - 1) % deg]];
        const bool next_in = black[t.nodes[u].nbrs[(sidx + 1) % deg]];
        if (in && !prev_in) first = sidx;
        if (in && !next_in) last = sidx;
      }
      p = {u, first, last};
    } else if (last_black_internal >= 0) {
      // Find the black internal node whose remaining neighbour stayed white.
      for (int v : touched) {
        if (t.is_leaf(v) || !black[v]) continue;
        const auto& nb = t.nodes[v].nbrs;
        for (int sidx = 0; sidx < static_cast<int>(nb.size()); ++sidx)
          if (!black[nb[sidx]]) {
            const int deg = static_cast<int>(nb.size());
            p = {v, (sidx + 1) % deg, (sidx + deg - 1) % deg};
          }
      }
    } else {
      const int leaf = row.first;
      const int v = t.nodes[leaf].nbrs[0];
      const int j = back[leaf][0];
      p = {v, j, j};
    }
    out[i] = p;
    for (int v : touched) {
      counter[v] = 0;
      black[v] = 0;
    }
  }
  return out;
}

namespace {

// Leaf positions on the far side of every (node, slot), as a cyclic run
// [start, start + count).
struct SideRuns {
  std::vector<std::vector<int>> start;
  std::vector<std::vector<int>> count;
};

SideRuns side_runs(const QuotientPCTree& t) {
  const int k = t.n_cols;
  const Rooting r = root_at_leaf(t, k - 1);
  SideRuns out;
  out.start.resize(t.nodes.size());
  out.count.resize(t.nodes.size());
  for (int u = 0; u < t.n_nodes(); ++u) {
    const auto& nb = t.nodes[u].nbrs;
    out.start[u].resize(nb.size());
    out.count[u].resize(nb.size());
    for (int s = 0; s < static_cast<int>(nb.size()); ++s) {
      const int v = nb[s];
      if (r.parent[u] == v || (u == k - 1 && s == 0)) {
        // Toward the root leaf: complement of u's own range.
        if (u == k - 1) {
          out.start[u][s] = 0;
          out.count[u][s] = k - 1;
        } else {
          out.start[u][s] = (r.hi[u] + 1) % k;
          out.count[u][s] = k - (r.hi[u] - r.lo[u] + 1);
        }
      } else {
        out.start[u][s] = r.lo[v];
        out.count[u][s] = r.hi[v] - r.lo[v] + 1;
      }
    }
  }
  return out;
}

}  // namespace

SparseBinaryMatrix reconstruct(const QuotientPCTree& t) {
  SparseBinaryMatrix m;
  m.n_cols = t.n_cols;
  m.n_rows = t.n_rows;
  m.rows.resize(t.n_rows);
  for (int i : t.full_rows) {
    m.rows[i] = t.column_label;
    std::sort(m.rows[i].begin(), m.rows[i].end());
  }
  if (t.degenerate()) {
    for (int i = 0; i < t.n_rows && i < static_cast<int>(t.degenerate_rows.size()); ++i) {
      if (t.degenerate_rows[i].empty()) continue;
      auto& row = m.rows[i];
      for (int p : t.degenerate_rows[i]) row.push_back(t.column_label[p]);
      std::sort(row.begin(), row.end());
    }
    return m;
  }
  const SideRuns runs = side_runs(t);
  for (int u = t.n_cols; u < t.n_nodes(); ++u) {
    const int deg = t.nodes[u].degree();
    for (const auto& q : t.nodes[u].quotient) {
      auto& row = m.rows.at(q.row_id);
      for (int s = q.first;; s = (s + 1) % deg) {
        for (int j = 0; j < runs.count[u][s]; ++j)
          row.push_back(t.column_label[(runs.start[u][s] + j) % t.n_cols]);
        if (s == q.last) break;
      }
      std::sort(row.begin(), row.end());
    }
  }
  return m;
}

std::vector<std::uint32_t> tree_family(const QuotientPCTree& t) {
  if (t.n_cols > 20) throw GuardExceeded("tree_family: more than 20 columns");
  const int k = t.n_cols;
  const std::uint32_t all = k == 0 ? 0 : ((std::uint32_t{1} << k) - 1);
  std::vector<std::uint32_t> out;
  auto add = [&](std::uint32_t x) {
    if (x != 0 && x != all) out.push_back(x);
  };
  if (t.degenerate()) {
    for (std::uint32_t x = 1; x < all; ++x) add(x);
  } else {
    const SideRuns runs = side_runs(t);
    auto side = [&](int u, int s) {
      std::uint32_t x = 0;
      for (int j = 0; j < runs.count[u][s]; ++j)
        x |= std::uint32_t{1} << t.column_label[(runs.start[u][s] + j) % k];
      return x;
    };
    for (int u = 0; u < t.n_nodes(); ++u) {
      const int deg = t.nodes[u].degree();
      std::vector<std::uint32_t> sides(deg);
      for (int s = 0; s < deg; ++s) {
        sides[s] = side(u, s);
        add(sides[s]);
        add(all & ~sides[s]);
      }
      if (t.nodes[u].kind != Kind::P) continue;
      for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t{1} << deg); ++mask) {
        std::uint32_t x = 0;
        for (int s = 0; s < deg; ++s)
          if (mask >> s & 1) x |= sides[s];
        add(x);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string dump_tree(const QuotientPCTree& t) {
  std::ostringstream os;
  for (int u = 0; u < t.n_nodes(); ++u) {
    const PCNode& node = t.nodes[u];
    os << u << ' ' << (node.kind == Kind::Leaf ? 'L' : node.kind == Kind::P ? 'P' : 'C') << " [";
    for (std::size_t s = 0; s < node.nbrs.size(); ++s) os << (s ? " " : "") << node.nbrs[s];
    os << "] {";
    for (std::size_t j = 0; j < node.quotient.size(); ++j) {
      const auto& q = node.quotient[j];
      os << (j ? " " : "") << q.row_id << ":(" << node.nbrs[q.first] << ',' << node.nbrs[q.last] << ')';
    }
    os << "}\n";
  }
  return os.str();
}

void QuotientPCTree::check_invariants() const {
  if (static_cast<int>(column_label.size()) != n_cols || !is_permutation_of_iota(column_label))
    throw InvariantError("PC tree: column labels are not a permutation");
  std::vector<int> seen(n_rows, 0);
  for (int i : full_rows) ++seen.at(i);
  for (int i : empty_rows) ++seen.at(i);
  if (degenerate()) {
    if (n_nodes() != n_cols) throw InvariantError("PC tree: degenerate tree with internal nodes");
    return;
  }
  (void)back_slots();
  std::size_t edges = 0;
  for (int u = 0; u < n_nodes(); ++u) {
    const PCNode& node = nodes[u];
    const int deg = node.degree();
    edges += deg;
    if (is_leaf(u)) {
      if (deg != 1 || node.kind != Kind::Leaf) throw InvariantError("PC tree: bad leaf");
      if (!node.quotient.empty()) throw InvariantError("PC tree: leaf with quotient");
    } else {
      if (deg < 3) throw InvariantError("PC tree: internal node of degree < 3");
      if (node.kind == Kind::Leaf) throw InvariantError("PC tree: internal node marked leaf");
    }
    for (int v : node.nbrs) {
      if (v < 0 || v >= n_nodes() || v == u) throw InvariantError("PC tree: bad neighbour");
    }
    for (const auto& q : node.quotient) {
      if (q.row_id < 0 || q.row_id >= n_rows) throw InvariantError("PC tree: quotient row id out of range");
      if (q.first < 0 || q.first >= deg || q.last < 0 || q.last >= deg)
        throw InvariantError("PC tree: quotient span out of range");
      ++seen[q.row_id];
      const int sz = span_size(q, deg);
      if (sz == deg) throw InvariantError("PC tree: quotient row covers every neighbour");
      if (node.kind == Kind::P && sz != 1 && sz != deg - 1)
        throw InvariantError("PC tree: P node quotient row selects neither 1 nor deg-1 neighbours");
    }
  }
  if (edges != 2 * static_cast<std::size_t>(n_nodes() - 1)) throw InvariantError("PC tree: not a tree");
  for (int v : seen)
    if (v != 1) throw InvariantError("PC tree: row not projected exactly once");
  const auto order = leaf_order();
  for (int i = 0; i < n_cols; ++i)
    if (order.size() != static_cast<std::size_t>(n_cols) || order[i] != i)
      throw InvariantError("PC tree: cyclic leaf order is not the column order");
}

}  // namespace circiso
