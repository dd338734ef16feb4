#include "circiso/canon.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "circiso/errors.hpp"

namespace circiso {

std::string CanonicalCode::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < code.size(); ++i) os << (i ? " " : "") << code[i];
  return os.str();
}

int least_rotation(std::span<const int> seq) {
  const int n = static_cast<int>(seq.size());
  if (n == 0) throw std::invalid_argument("least_rotation: empty sequence");
  int i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    const int a = seq[(i + k) % n];
    const int b = seq[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b)
      i += k + 1;
    else
      j += k + 1;
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

TupleSort radix_sort_tuples(const std::vector<std::vector<int>>& tuples) {
  TupleSort out;
  const int n = static_cast<int>(tuples.size());
  out.class_id.assign(n, 0);
  if (n == 0) return out;

  int max_len = 0;
  int max_val = 0;
  for (const auto& t : tuples) {
    max_len = std::max(max_len, static_cast<int>(t.size()));
    for (int v : t) {
      if (v < kSeparator) throw std::invalid_argument("radix_sort_tuples: entry below -2");
      max_val = std::max(max_val, v - kSeparator);
    }
  }

  std::vector<std::vector<int>> by_len(max_len + 1);
  for (int i = 0; i < n; ++i) by_len[tuples[i].size()].push_back(i);

  // Distinct values present at each position, ascending.
  std::vector<std::vector<int>> pos_by_val(max_val + 1);
  for (const auto& t : tuples)
    for (int j = 0; j < static_cast<int>(t.size()); ++j) pos_by_val[t[j] - kSeparator].push_back(j);
  std::vector<std::vector<int>> values_at(max_len);
  for (int v = 0; v <= max_val; ++v)
    for (int j : pos_by_val[v])
      if (values_at[j].empty() || values_at[j].back() != v) values_at[j].push_back(v);

  std::vector<std::vector<int>> bucket(max_val + 1);
  std::vector<int> list;
  std::vector<int> cur;
  for (int j = max_len - 1; j >= 0; --j) {
    cur = by_len[j + 1];
    cur.insert(cur.end(), list.begin(), list.end());
    for (int i : cur) bucket[tuples[i][j] - kSeparator].push_back(i);
    list.clear();
    for (int v : values_at[j]) {
      list.insert(list.end(), bucket[v].begin(), bucket[v].end());
      bucket[v].clear();
    }
  }
  out.order = by_len[0];
  out.order.insert(out.order.end(), list.begin(), list.end());

  int cls = kFirstClass - 1;
  for (int k = 0; k < n; ++k) {
    const int i = out.order[k];
    if (k == 0 || tuples[i] != tuples[out.order[k - 1]]) ++cls;
    out.class_id[i] = cls;
  }
  out.n_classes = cls - kFirstClass + 1;
  return out;
}

// ---------------------------------------------------------------------------
// Rooting

int RootedPCTree::degree(int u) const { return u == pseudo ? 2 : tree->nodes[u].degree(); }

int RootedPCTree::nbr(int u, int s) const {
  if (u == pseudo) return s == 0 ? pseudo_a : pseudo_b;
  const int v = tree->nodes[u].nbrs[s];
  if (pseudo >= 0 && ((u == pseudo_a && v == pseudo_b) || (u == pseudo_b && v == pseudo_a))) return pseudo;
  return v;
}

const std::vector<QuotientRow>& RootedPCTree::quotient(int u) const {
  static const std::vector<QuotientRow> none;
  return u == pseudo ? none : tree->nodes[u].quotient;
}

RootedPCTree root_at_center(const QuotientPCTree& t) {
  const int n = t.n_nodes();
  if (n < 2) throw std::invalid_argument("root_at_center: fewer than two nodes");

  std::vector<int> deg(n);
  std::vector<int> layer;
  for (int u = 0; u < n; ++u) {
    deg[u] = t.nodes[u].degree();
    if (deg[u] <= 1) layer.push_back(u);
  }
  std::vector<char> removed(n, 0);
  int remaining = n;
  while (remaining > 2) {
    std::vector<int> next;
    for (int u : layer) {
      removed[u] = 1;
      --remaining;
    }
    for (int u : layer)
      for (int v : t.nodes[u].nbrs)
        if (!removed[v] && --deg[v] == 1) next.push_back(v);
    layer = std::move(next);
  }
  std::vector<int> centers;
  for (int u = 0; u < n; ++u)
    if (!removed[u]) centers.push_back(u);

  RootedPCTree r;
  r.tree = &t;
  int total = n;
  int sa = -1, sb = -1;
  if (centers.size() == 2) {
    r.pseudo = n;
    r.pseudo_a = centers[0];
    r.pseudo_b = centers[1];
    sa = t.slot_of(r.pseudo_a, r.pseudo_b);
    sb = t.slot_of(r.pseudo_b, r.pseudo_a);
    if (sa < 0 || sb < 0) throw InvariantError("root_at_center: centers not adjacent");
    r.root = n;
    total = n + 1;
  } else {
    r.root = centers.at(0);
  }

  const auto back = t.back_slots();
  r.parent.assign(total, -1);
  r.parent_slot.assign(total, -1);
  r.depth.assign(total, 0);
  std::vector<int> queue{r.root};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int u = queue[qi];
    const int d = r.degree(u);
    for (int s = 0; s < d; ++s) {
      if (s == r.parent_slot[u]) continue;
      const int v = r.nbr(u, s);
      r.parent[v] = u;
      if (u == r.pseudo)
        r.parent_slot[v] = v == r.pseudo_a ? sa : sb;
      else
        r.parent_slot[v] = back[u][s];
      r.depth[v] = r.depth[u] + 1;
      queue.push_back(v);
    }
  }
  if (static_cast<int>(queue.size()) != total) throw InvariantError("root_at_center: tree is disconnected");
  for (int u : queue) {
    if (r.depth[u] >= static_cast<int>(r.levels.size())) r.levels.emplace_back();
    r.levels[r.depth[u]].push_back(u);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Node encodings

namespace {

int span_size(const QuotientRow& q, int d) { return (q.last - q.first + d) % d + 1; }

}  // namespace

void p_counts(const std::vector<QuotientRow>& quotient, int degree, std::vector<int>& excl, std::vector<int>& incl) {
  excl.assign(degree, 0);
  incl.assign(degree, 0);
  for (const auto& q : quotient) {
    const int sz = span_size(q, degree);
    if (sz == 1)
      ++incl[q.first];
    else if (sz == degree - 1)
      ++excl[(q.last + 1) % degree];
    else
      throw InvariantError("P node: quotient row " + std::to_string(q.row_id) + " spans " + std::to_string(sz) +
                           " of " + std::to_string(degree) + " neighbours");
  }
}

std::vector<PTuple> encode_p_quotient(const std::vector<QuotientRow>& quotient, std::span<const int> nbr_labels) {
  const int d = static_cast<int>(nbr_labels.size());
  std::vector<int> excl, incl;
  p_counts(quotient, d, excl, incl);
  std::vector<PTuple> out(d);
  for (int s = 0; s < d; ++s) out[s] = {nbr_labels[s], excl[s], incl[s]};
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Least rotation of a tuple list, found on its flattening. The least
// flattened rotation starts at a separator; the list starts one tuple later.
int least_tuple_rotation(const std::vector<CTuple>& list) {
  std::vector<int> flat;
  std::vector<int> tuple_after;
  for (int i = 0; i < static_cast<int>(list.size()); ++i) {
    flat.push_back(list[i].label);
    tuple_after.push_back(-1);
    for (int len : list[i].lengths) {
      flat.push_back(len + kFirstClass);
      tuple_after.push_back(-1);
    }
    flat.push_back(kSeparator);
    tuple_after.push_back((i + 1) % static_cast<int>(list.size()));
  }
  const int k = least_rotation(flat);
  if (tuple_after[k] < 0) throw InvariantError("least rotation does not start at a separator");
  return tuple_after[k];
}

std::vector<CTuple> rotated(const std::vector<CTuple>& list, int start) {
  std::vector<CTuple> out;
  out.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) out.push_back(list[(start + i) % list.size()]);
  return out;
}

}  // namespace

CEncoding encode_c_quotient(const std::vector<QuotientRow>& quotient, std::span<const int> nbr_labels) {
  const int d = static_cast<int>(nbr_labels.size());
  if (d == 0) throw std::invalid_argument("encode_c_quotient: no neighbours");
  std::vector<std::pair<int, int>> by_first, by_last;
  for (const auto& q : quotient) {
    const int len = span_size(q, d);
    by_first.emplace_back(q.first, len);
    by_last.emplace_back(q.last, len);
  }
  std::sort(by_first.begin(), by_first.end());
  std::sort(by_last.begin(), by_last.end());

  std::vector<CTuple> fwd(d), bwd(d);
  for (int s = 0; s < d; ++s) fwd[s].label = nbr_labels[s];
  for (auto [s, len] : by_first) fwd[s].lengths.push_back(len);
  // bwd[i] is slot (d - i) % d.
  for (int i = 0; i < d; ++i) bwd[i].label = nbr_labels[(d - i) % d];
  for (auto [s, len] : by_last) bwd[(d - s) % d].lengths.push_back(len);

  CEncoding enc;
  const int fs = least_tuple_rotation(fwd);
  const int bs = least_tuple_rotation(bwd);
  enc.forward_min = rotated(fwd, fs);
  enc.backward_min = rotated(bwd, bs);
  enc.forward = !(enc.backward_min < enc.forward_min);
  enc.start = enc.forward ? fs : (d - bs) % d;
  return enc;
}

std::vector<int> flatten(const std::vector<PTuple>& tuples) {
  std::vector<int> out{kPFlag};
  for (const auto& t : tuples) {
    out.push_back(t.label);
    out.push_back(t.excl + kFirstClass);
    out.push_back(t.incl + kFirstClass);
  }
  return out;
}

std::vector<int> flatten(const CEncoding& enc) {
  std::vector<int> out{kCFlag};
  for (const auto& t : enc.chosen()) {
    out.push_back(t.label);
    for (int len : t.lengths) out.push_back(len + kFirstClass);
    out.push_back(kSeparator);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Labelling and codes

JointLabeling label_trees(std::span<const QuotientPCTree* const> trees) {
  JointLabeling out;
  for (const auto* t : trees) {
    TreeLabels tl;
    tl.rooted = root_at_center(*t);
    const int n = tl.rooted.n_nodes();
    tl.label.assign(n, kLeafLabel);
    tl.forward.assign(n, 1);
    tl.start.assign(n, 0);
    out.trees.push_back(std::move(tl));
  }
  if (out.trees.empty()) return out;
  const int h = out.trees[0].rooted.height();
  for (const auto& tl : out.trees)
    if (tl.rooted.height() != h) out.same_height = false;
  if (!out.same_height) return out;

  std::vector<int> labels;
  for (int level = h; level >= 0; --level) {
    std::vector<std::vector<int>> encs;
    std::vector<std::pair<int, int>> who;
    for (int ti = 0; ti < static_cast<int>(out.trees.size()); ++ti) {
      auto& tl = out.trees[ti];
      const auto& r = tl.rooted;
      for (int u : r.levels[level]) {
        if (r.is_leaf(u)) continue;
        const int d = r.degree(u);
        labels.resize(d);
        for (int s = 0; s < d; ++s) labels[s] = s == r.parent_slot[u] ? kParentLabel : tl.label[r.nbr(u, s)];
        if (r.is_c(u)) {
          const CEncoding enc = encode_c_quotient(r.quotient(u), labels);
          tl.forward[u] = enc.forward;
          tl.start[u] = enc.start;
          encs.push_back(flatten(enc));
        } else {
          encs.push_back(flatten(encode_p_quotient(r.quotient(u), labels)));
        }
        who.emplace_back(ti, u);
      }
    }
    const TupleSort ts = radix_sort_tuples(encs);
    std::vector<std::vector<int>> table;
    for (int k = 0; k < static_cast<int>(ts.order.size()); ++k) {
      const int i = ts.order[k];
      if (ts.class_id[i] - kFirstClass == static_cast<int>(table.size())) table.push_back(encs[i]);
    }
    for (std::size_t i = 0; i < who.size(); ++i) out.trees[who[i].first].label[who[i].second] = ts.class_id[i];
    out.tables.push_back(std::move(table));
  }
  return out;
}

CanonicalCode canonical_code(const QuotientPCTree& t) {
  if (t.degenerate()) throw std::invalid_argument("canonical_code: tree has no internal node");
  const QuotientPCTree* one[] = {&t};
  const JointLabeling jl = label_trees(one);
  CanonicalCode c;
  c.code.push_back(jl.trees[0].rooted.height());
  for (const auto& table : jl.tables) {
    c.code.push_back(static_cast<int>(table.size()));
    for (const auto& enc : table) {
      c.code.push_back(static_cast<int>(enc.size()));
      c.code.insert(c.code.end(), enc.begin(), enc.end());
    }
  }
  return c;
}

namespace {

std::vector<std::vector<int>> column_perms(int n_cols) {
  if (n_cols == 2) return {{0, 1}, {1, 0}};
  std::vector<int> id(n_cols);
  std::iota(id.begin(), id.end(), 0);
  return {id};
}

}  // namespace

CanonicalCode tree_matrix_code(const QuotientPCTree& t) {
  CanonicalCode c;
  c.code = {t.n_rows, t.n_cols, static_cast<int>(t.empty_rows.size()), static_cast<int>(t.full_rows.size()),
            t.degenerate() ? 1 : 0};
  if (!t.degenerate()) {
    const auto tree = canonical_code(t);
    c.code.insert(c.code.end(), tree.code.begin(), tree.code.end());
    return c;
  }
  std::vector<int> best;
  bool have = false;
  for (const auto& perm : column_perms(t.n_cols)) {
    std::vector<std::vector<int>> rows;
    for (const auto& r : t.degenerate_rows) {
      if (r.empty()) continue;
      std::vector<int> x;
      for (int p : r) x.push_back(perm[p]);
      std::sort(x.begin(), x.end());
      rows.push_back(std::move(x));
    }
    std::sort(rows.begin(), rows.end());
    std::vector<int> flat;
    for (const auto& r : rows) {
      flat.push_back(static_cast<int>(r.size()));
      flat.insert(flat.end(), r.begin(), r.end());
    }
    if (!have || flat < best) best = std::move(flat);
    have = true;
  }
  c.code.insert(c.code.end(), best.begin(), best.end());
  return c;
}

std::optional<CanonicalCode> matrix_canonical_code(const SparseBinaryMatrix& m) {
  const auto t = build_pc(m);
  if (!t) return std::nullopt;
  return tree_matrix_code(*t);
}

CanonicalCode succinct_canonical_code(const SuccinctCircMatrix& s) { return tree_matrix_code(build_pc(s)); }

CanonicalCode tree_shape_code(const QuotientPCTree& t) {
  if (t.degenerate()) return CanonicalCode{{t.n_cols}};
  QuotientPCTree bare = t;
  for (auto& node : bare.nodes) node.quotient.clear();
  return canonical_code(bare);
}

// ---------------------------------------------------------------------------
// Isomorphism and certificates

namespace {

// Certificate with the given column map, rows paired by sorted image; nullopt
// if the row multisets differ.
std::optional<MatrixIsoCertificate> match_rows(const SparseBinaryMatrix& m1, const SparseBinaryMatrix& m2,
                                               const std::vector<int>& col_perm) {
  std::vector<std::vector<int>> image(m1.n_rows);
  for (int i = 0; i < m1.n_rows; ++i) {
    for (int c : m1.rows[i]) image[i].push_back(col_perm[c]);
    std::sort(image[i].begin(), image[i].end());
  }
  std::vector<int> o1(m1.n_rows), o2(m2.n_rows);
  std::iota(o1.begin(), o1.end(), 0);
  std::iota(o2.begin(), o2.end(), 0);
  std::stable_sort(o1.begin(), o1.end(), [&](int a, int b) { return image[a] < image[b]; });
  std::stable_sort(o2.begin(), o2.end(), [&](int a, int b) { return m2.rows[a] < m2.rows[b]; });
  MatrixIsoCertificate cert;
  cert.col_perm = col_perm;
  cert.row_perm.assign(m1.n_rows, -1);
  for (int k = 0; k < m1.n_rows; ++k) {
    if (image[o1[k]] != m2.rows[o2[k]]) return std::nullopt;
    cert.row_perm[o1[k]] = o2[k];
  }
  return cert;
}

MatrixIsoResult verified(const SparseBinaryMatrix& m1, const SparseBinaryMatrix& m2,
                         std::optional<MatrixIsoCertificate> cert) {
  if (!cert || !matrices_equal_under(m1, m2, *cert))
    throw CertificateError("matrix isomorphism certificate failed verification");
  return {MatrixVerdict::Isomorphic, std::move(cert)};
}

int slot_at(const TreeLabels& tl, int u, int i) {
  const int d = tl.rooted.degree(u);
  return tl.forward[u] ? (tl.start[u] + i) % d : ((tl.start[u] - i) % d + d) % d;
}

// Node map from a to b, matching equal-class children.
std::vector<int> align(const TreeLabels& a, const TreeLabels& b) {
  const auto& ra = a.rooted;
  const auto& rb = b.rooted;
  std::vector<int> map(ra.n_nodes(), -1);
  map[ra.root] = rb.root;
  std::vector<int> queue{ra.root};
  std::vector<int> excl_a, incl_a, excl_b, incl_b;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int u = queue[qi];
    const int v = map[u];
    if (a.label[u] != b.label[v] || ra.is_leaf(u) != rb.is_leaf(v))
      throw CertificateError("tree alignment met unequal classes");
    if (ra.is_leaf(u)) continue;
    const int d = ra.degree(u);
    if (rb.degree(v) != d) throw CertificateError("tree alignment met unequal degrees");
    auto link = [&](int su, int sv) {
      if ((su == ra.parent_slot[u]) != (sv == rb.parent_slot[v]))
        throw CertificateError("tree alignment misplaced a parent");
      if (su == ra.parent_slot[u]) return;
      const int x = ra.nbr(u, su);
      map[x] = rb.nbr(v, sv);
      queue.push_back(x);
    };
    if (ra.is_c(u)) {
      for (int i = 0; i < d; ++i) link(slot_at(a, u, i), slot_at(b, v, i));
      continue;
    }
    p_counts(ra.quotient(u), d, excl_a, incl_a);
    p_counts(rb.quotient(v), d, excl_b, incl_b);
    auto keyed = [d](const TreeLabels& tl, int w, const std::vector<int>& excl, const std::vector<int>& incl) {
      std::vector<std::pair<PTuple, int>> out;
      for (int s = 0; s < d; ++s) {
        const int lab = s == tl.rooted.parent_slot[w] ? kParentLabel : tl.label[tl.rooted.nbr(w, s)];
        out.push_back({{lab, excl[s], incl[s]}, s});
      }
      std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      return out;
    };
    const auto ka = keyed(a, u, excl_a, incl_a);
    const auto kb = keyed(b, v, excl_b, incl_b);
    for (int i = 0; i < d; ++i) {
      if (ka[i].first != kb[i].first) throw CertificateError("tree alignment met unequal P tuples");
      link(ka[i].second, kb[i].second);
    }
  }
  return map;
}

}  // namespace

MatrixIsoResult tree_iso(const QuotientPCTree& t1, const SparseBinaryMatrix& m1, const QuotientPCTree& t2,
                         const SparseBinaryMatrix& m2) {
  const MatrixIsoResult no{MatrixVerdict::NotIsomorphic, std::nullopt};
  if (t1.n_cols != t2.n_cols || t1.n_rows != t2.n_rows || t1.empty_rows.size() != t2.empty_rows.size() ||
      t1.full_rows.size() != t2.full_rows.size())
    return no;
  if (t1.degenerate()) {
    for (const auto& perm : column_perms(t1.n_cols))
      if (auto cert = match_rows(m1, m2, perm)) return verified(m1, m2, std::move(cert));
    return no;
  }
  const QuotientPCTree* both[] = {&t1, &t2};
  const JointLabeling jl = label_trees(both);
  if (!jl.same_height) return no;
  const auto& a = jl.trees[0];
  const auto& b = jl.trees[1];
  if (a.label[a.rooted.root] != b.label[b.rooted.root]) return no;

  const auto map = align(a, b);
  std::vector<int> col_perm(t1.n_cols, -1);
  for (int leaf = 0; leaf < t1.n_cols; ++leaf) col_perm[t1.column_label[leaf]] = t2.column_label[map[leaf]];
  return verified(m1, m2, match_rows(m1, m2, col_perm));
}

MatrixIsoResult matrix_iso(const SparseBinaryMatrix& m1, const SparseBinaryMatrix& m2) {
  const auto t1 = build_pc(m1);
  const auto t2 = build_pc(m2);
  if (!t1 && !t2) return {MatrixVerdict::NeitherCircularOnes, std::nullopt};
  if (!t1 || !t2) return {MatrixVerdict::NotIsomorphic, std::nullopt};
  return tree_iso(*t1, m1, *t2, m2);
}

MatrixIsoResult succinct_iso(const SuccinctCircMatrix& s1, const SuccinctCircMatrix& s2) {
  if (s1.n_cols != s2.n_cols || s1.n_rows != s2.n_rows) return {MatrixVerdict::NotIsomorphic, std::nullopt};
  return tree_iso(build_pc(s1), expand(s1), build_pc(s2), expand(s2));
}

}  // namespace circiso
