#include "circiso/pqtree.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "circiso/errors.hpp"

namespace circiso {

PQTree::PQTree(int n_leaves) : n_leaves_(n_leaves) {
  if (n_leaves < 0) throw std::invalid_argument("PQTree: negative leaf count");
  leaf_node_.resize(n_leaves);
  for (int i = 0; i < n_leaves; ++i) {
    int id = new_node(Kind::Leaf);
    nodes_[id].value = i;
    leaf_node_[i] = id;
  }
  if (n_leaves == 1) {
    root_ = leaf_node_[0];
  } else if (n_leaves >= 2) {
    root_ = new_node(Kind::P);
    for (int i = 0; i < n_leaves; ++i) append_child(root_, leaf_node_[i]);
  }
}

int PQTree::new_node(Kind kind) {
  nodes_.emplace_back();
  nodes_.back().kind = kind;
  return static_cast<int>(nodes_.size()) - 1;
}

void PQTree::touch(int x) {
  Node& n = nodes_[x];
  if (n.stamp == stamp_) return;
  n.stamp = stamp_;
  n.label = Label::Empty;
  n.full_at_first = false;
  n.pending_children = 0;
  n.pertinent_leaves = 0;
  n.full_kids.clear();
  n.partial_kids.clear();
}

PQTree::Label PQTree::label_of(int x) const {
  const Node& n = nodes_[x];
  return n.stamp == stamp_ ? n.label : Label::Empty;
}

void PQTree::set_label(int x, Label l) {
  touch(x);
  nodes_[x].label = l;
}

void PQTree::unlink(int c) {
  Node& n = nodes_[c];
  const int p = n.parent;
  if (n.left >= 0) nodes_[n.left].right = n.right;
  else if (p >= 0) nodes_[p].first = n.right;
  if (n.right >= 0) nodes_[n.right].left = n.left;
  else if (p >= 0) nodes_[p].last = n.left;
  if (p >= 0) --nodes_[p].n_children;
  n.parent = n.left = n.right = -1;
}

void PQTree::append_child(int p, int c) {
  Node& pn = nodes_[p];
  Node& cn = nodes_[c];
  cn.parent = p;
  cn.right = -1;
  cn.left = pn.last;
  if (pn.last >= 0) nodes_[pn.last].right = c;
  else pn.first = c;
  pn.last = c;
  ++pn.n_children;
}

void PQTree::prepend_child(int p, int c) {
  Node& pn = nodes_[p];
  Node& cn = nodes_[c];
  cn.parent = p;
  cn.left = -1;
  cn.right = pn.first;
  if (pn.first >= 0) nodes_[pn.first].left = c;
  else pn.last = c;
  pn.first = c;
  ++pn.n_children;
}

void PQTree::add_at_end(int p, int c, bool at_first) {
  if (at_first) prepend_child(p, c);
  else append_child(p, c);
}

// new_node must be detached; it takes over old_node's slot.
void PQTree::replace(int old_node, int new_node) {
  Node& o = nodes_[old_node];
  Node& n = nodes_[new_node];
  const int p = o.parent;
  n.parent = p;
  n.left = o.left;
  n.right = o.right;
  if (o.left >= 0) nodes_[o.left].right = new_node;
  else if (p >= 0) nodes_[p].first = new_node;
  if (o.right >= 0) nodes_[o.right].left = new_node;
  else if (p >= 0) nodes_[p].last = new_node;
  if (root_ == old_node) root_ = new_node;
  o.parent = o.left = o.right = -1;
}

void PQTree::kill(int x) {
  Node& n = nodes_[x];
  n.alive = false;
  n.parent = n.left = n.right = n.first = n.last = -1;
  n.n_children = 0;
}

std::vector<int> PQTree::children(int node) const {
  std::vector<int> out;
  out.reserve(nodes_[node].n_children);
  for (int c = nodes_[node].first; c >= 0; c = nodes_[c].right) out.push_back(c);
  return out;
}

std::vector<int> PQTree::frontier() const {
  std::vector<int> out;
  if (root_ < 0) return out;
  out.reserve(n_leaves_);
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    if (nodes_[x].kind == Kind::Leaf) {
      out.push_back(nodes_[x].value);
      continue;
    }
    for (int c = nodes_[x].last; c >= 0; c = nodes_[c].left) stack.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reduction

bool PQTree::reduce(std::span<const int> leaves) {
  if (invalid_) return false;
  for (int x : leaves)
    if (x < 0 || x >= n_leaves_) throw std::invalid_argument("PQTree::reduce: leaf out of range");

  if (++stamp_ == 0) {
    for (Node& n : nodes_) n.stamp = 0;
    stamp_ = 1;
  }
  for (int x : leaves) {
    int v = leaf_node_[x];
    if (nodes_[v].stamp == stamp_) throw std::invalid_argument("PQTree::reduce: repeated leaf");
    touch(v);
    nodes_[v].pertinent_leaves = 1;
  }
  const int k = static_cast<int>(leaves.size());
  if (k <= 1 || k == n_leaves_) return true;

  // Bubble: walk up from all leaves in lockstep, merging walkers that meet,
  // until one walker is left. Its node is at or above the pertinent root.
  std::vector<int> walkers;
  walkers.reserve(leaves.size());
  for (int x : leaves) walkers.push_back(leaf_node_[x]);
  std::size_t live = walkers.size();
  while (live > 1) {
    std::size_t w = 0;
    for (const int v : walkers) {
      const int p = nodes_[v].parent;
      if (p < 0 || live == 1) {
        walkers[w++] = v;
        continue;
      }
      const bool seen = nodes_[p].stamp == stamp_;
      touch(p);
      ++nodes_[p].pending_children;
      if (seen) --live;
      else walkers[w++] = p;
    }
    walkers.resize(w);
  }

  std::vector<int> queue;
  queue.reserve(2 * leaves.size());
  for (int x : leaves) queue.push_back(leaf_node_[x]);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int x = queue[head];
    if (nodes_[x].pertinent_leaves < k) {
      const int y = nodes_[x].parent;
      nodes_[y].pertinent_leaves += nodes_[x].pertinent_leaves;
      if (--nodes_[y].pending_children == 0) queue.push_back(y);
      const int r = apply_nonroot(x);
      if (r < 0) {
        invalid_ = true;
        return false;
      }
      if (nodes_[r].label == Label::Full) nodes_[y].full_kids.push_back(r);
      else nodes_[y].partial_kids.push_back(r);
    } else {
      if (!apply_root(x)) {
        invalid_ = true;
        return false;
      }
      return true;
    }
  }
  throw InvariantError("PQTree::reduce: pertinent root not reached");
}

int PQTree::apply_nonroot(int x) {
  const Node& n = nodes_[x];
  const auto f = static_cast<int>(n.full_kids.size());
  const auto p = static_cast<int>(n.partial_kids.size());
  switch (n.kind) {
    case Kind::Leaf:
      set_label(x, Label::Full);
      return x;
    case Kind::P:
      if (p == 0 && f == n.n_children) {  // P1
        set_label(x, Label::Full);
        return x;
      }
      if (p == 0) return template_p3(x);
      if (p == 1) return template_p5(x);
      return -1;
    case Kind::Q:
      if (p == 0 && f == n.n_children) {  // Q1
        set_label(x, Label::Full);
        return x;
      }
      return template_q2(x) ? x : -1;
  }
  return -1;
}

bool PQTree::apply_root(int x) {
  const Node& n = nodes_[x];
  const auto f = static_cast<int>(n.full_kids.size());
  const auto p = static_cast<int>(n.partial_kids.size());
  switch (n.kind) {
    case Kind::Leaf:
      return true;
    case Kind::P:
      if (p == 0 && f == n.n_children) return true;  // P1
      if (p == 0) return template_p2(x);
      if (p == 1) return template_p4(x);
      if (p == 2) return template_p6(x);
      return false;
    case Kind::Q:
      if (p == 0 && f == n.n_children) return true;  // Q1
      if (p > 2) return false;
      if (template_q2(x)) return true;
      return template_q3(x);
  }
  return false;
}

// Detaches kids from their common parent and returns one node holding them:
// the kid itself when there is one, otherwise a fresh full P node.
int PQTree::make_group(std::span<const int> kids) {
  for (int k : kids) unlink(k);
  if (kids.size() == 1) return kids[0];
  const int g = new_node(Kind::P);
  set_label(g, Label::Full);
  for (int k : kids) append_child(g, k);
  return g;
}

// Replaces partial Q child `child` of q by its children, oriented so that
// the child's full end faces q's first side iff full_toward_first.
void PQTree::splice_in_place(int q, int child, bool full_toward_first) {
  if (nodes_[child].kind != Kind::Q) throw InvariantError("PQTree: partial node is not a Q node");
  const int left = nodes_[child].left;
  const int right = nodes_[child].right;
  const bool natural = nodes_[child].full_at_first == full_toward_first;
  const int count = nodes_[child].n_children;

  int prev = left;
  int c = natural ? nodes_[child].first : nodes_[child].last;
  while (c >= 0) {
    const int next = natural ? nodes_[c].right : nodes_[c].left;
    Node& cn = nodes_[c];
    cn.parent = q;
    cn.left = prev;
    if (prev >= 0) nodes_[prev].right = c;
    else nodes_[q].first = c;
    prev = c;
    c = next;
  }
  nodes_[prev].right = right;
  if (right >= 0) nodes_[right].left = prev;
  else nodes_[q].last = prev;
  nodes_[q].n_children += count - 1;
  kill(child);
}

// Moves every child of partial Q node `other` onto the at_first end of q,
// other's full end adjacent to q.
void PQTree::absorb_at_end(int q, bool at_first, int other) {
  const bool from_first = nodes_[other].full_at_first;
  int c = from_first ? nodes_[other].first : nodes_[other].last;
  while (c >= 0) {
    const int next = from_first ? nodes_[c].right : nodes_[c].left;
    nodes_[c].parent = nodes_[c].left = nodes_[c].right = -1;
    add_at_end(q, c, at_first);
    c = next;
  }
  kill(other);
}

bool PQTree::template_p2(int x) {
  const std::vector<int> full = nodes_[x].full_kids;
  if (full.size() >= 2) append_child(x, make_group(full));
  return true;
}

int PQTree::template_p3(int x) {
  const std::vector<int> full = nodes_[x].full_kids;
  const int q = new_node(Kind::Q);
  touch(q);
  const int g = make_group(full);
  replace(x, q);
  int e = x;
  if (nodes_[x].n_children == 1) {
    e = nodes_[x].first;
    unlink(e);
    kill(x);
  }
  append_child(q, e);
  append_child(q, g);
  nodes_[q].full_at_first = false;
  nodes_[q].label = Label::Partial;
  return q;
}

bool PQTree::template_p4(int x) {
  const int y = nodes_[x].partial_kids[0];
  const std::vector<int> full = nodes_[x].full_kids;
  if (!full.empty()) add_at_end(y, make_group(full), nodes_[y].full_at_first);
  if (nodes_[x].n_children == 1) {
    unlink(y);
    replace(x, y);
    kill(x);
  }
  return true;
}

int PQTree::template_p5(int x) {
  const int y = nodes_[x].partial_kids[0];
  const std::vector<int> full = nodes_[x].full_kids;
  unlink(y);
  if (!full.empty()) add_at_end(y, make_group(full), nodes_[y].full_at_first);
  replace(x, y);
  const int remaining = nodes_[x].n_children;
  if (remaining == 0) {
    kill(x);
  } else {
    int e = x;
    if (remaining == 1) {
      e = nodes_[x].first;
      unlink(e);
      kill(x);
    }
    add_at_end(y, e, !nodes_[y].full_at_first);
  }
  set_label(y, Label::Partial);
  return y;
}

bool PQTree::template_p6(int x) {
  int y1 = nodes_[x].partial_kids[0];
  int y2 = nodes_[x].partial_kids[1];
  if (nodes_[y1].n_children < nodes_[y2].n_children) std::swap(y1, y2);
  const std::vector<int> full = nodes_[x].full_kids;
  if (!full.empty()) add_at_end(y1, make_group(full), nodes_[y1].full_at_first);
  unlink(y2);
  absorb_at_end(y1, nodes_[y1].full_at_first, y2);
  if (nodes_[x].n_children == 1) {
    unlink(y1);
    replace(x, y1);
    kill(x);
  }
  return true;
}

// Full children form a run at one end of x, optionally followed by one
// partial child.
bool PQTree::template_q2(int x) {
  const auto f = static_cast<int>(nodes_[x].full_kids.size());
  const auto p = static_cast<int>(nodes_[x].partial_kids.size());
  if (p > 1) return false;
  for (const bool from_first : {true, false}) {
    int c = from_first ? nodes_[x].first : nodes_[x].last;
    int seen_full = 0;
    while (c >= 0 && label_of(c) == Label::Full) {
      ++seen_full;
      c = from_first ? nodes_[c].right : nodes_[c].left;
    }
    const int partial = (c >= 0 && label_of(c) == Label::Partial) ? c : -1;
    if (seen_full == 0 && partial < 0) continue;
    if (seen_full != f || (partial >= 0 ? 1 : 0) != p) continue;
    if (partial >= 0) splice_in_place(x, partial, from_first);
    touch(x);
    nodes_[x].full_at_first = from_first;
    nodes_[x].label = Label::Partial;
    return true;
  }
  return false;
}

// Root only: a run of full children anywhere, with at most one partial child
// on each side of it.
bool PQTree::template_q3(int x) {
  const std::vector<int>& fk = nodes_[x].full_kids;
  const std::vector<int>& pk = nodes_[x].partial_kids;
  const auto f = static_cast<int>(fk.size());
  const auto p = static_cast<int>(pk.size());
  if (p > 2 || f + p == 0) return false;

  int left_partial = -1;
  int right_partial = -1;
  int seen_full = 0;
  if (f > 0) {
    int lo = fk[0];
    int hi = fk[0];
    seen_full = 1;
    while (nodes_[lo].left >= 0 && label_of(nodes_[lo].left) == Label::Full) {
      lo = nodes_[lo].left;
      ++seen_full;
    }
    while (nodes_[hi].right >= 0 && label_of(nodes_[hi].right) == Label::Full) {
      hi = nodes_[hi].right;
      ++seen_full;
    }
    const int l = nodes_[lo].left;
    const int r = nodes_[hi].right;
    if (l >= 0 && label_of(l) == Label::Partial) left_partial = l;
    if (r >= 0 && label_of(r) == Label::Partial) right_partial = r;
  } else {
    const int s = pk[0];
    if (p == 1) {
      left_partial = s;
    } else {
      const int l = nodes_[s].left;
      const int r = nodes_[s].right;
      if (l >= 0 && label_of(l) == Label::Partial) {
        left_partial = l;
        right_partial = s;
      } else if (r >= 0 && label_of(r) == Label::Partial) {
        left_partial = s;
        right_partial = r;
      } else {
        return false;
      }
    }
  }
  const int seen_partial = (left_partial >= 0) + (right_partial >= 0);
  if (seen_full != f || seen_partial != p) return false;
  if (left_partial >= 0) splice_in_place(x, left_partial, false);
  if (right_partial >= 0) splice_in_place(x, right_partial, true);
  return true;
}

// ---------------------------------------------------------------------------

bool PQTree::arrange_to(std::span<const int> order) {
  if (invalid_ || static_cast<int>(order.size()) != n_leaves_) return false;
  if (root_ < 0) return true;
  std::vector<int> pos(n_leaves_, -1);
  for (int i = 0; i < n_leaves_; ++i) {
    const int v = order[i];
    if (v < 0 || v >= n_leaves_ || pos[v] >= 0) return false;
    pos[v] = i;
  }

  std::vector<int> preorder;
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    preorder.push_back(x);
    for (int c = nodes_[x].first; c >= 0; c = nodes_[c].right) stack.push_back(c);
  }
  std::vector<int> min_pos(nodes_.size(), n_leaves_);
  for (auto it = preorder.rbegin(); it != preorder.rend(); ++it) {
    const int x = *it;
    if (nodes_[x].kind == Kind::Leaf) {
      min_pos[x] = pos[nodes_[x].value];
      continue;
    }
    std::vector<int> kids = children(x);
    int m = n_leaves_;
    for (int c : kids) m = std::min(m, min_pos[c]);
    min_pos[x] = m;
    if (nodes_[x].kind == Kind::P) {
      std::sort(kids.begin(), kids.end(), [&](int a, int b) { return min_pos[a] < min_pos[b]; });
    } else if (min_pos[kids.front()] > min_pos[kids.back()]) {
      std::reverse(kids.begin(), kids.end());
    } else {
      continue;
    }
    nodes_[x].first = nodes_[x].last = -1;
    nodes_[x].n_children = 0;
    for (int c : kids) append_child(x, c);
  }
  return frontier() == std::vector<int>(order.begin(), order.end());
}

void PQTree::check_invariants() const {
  if (invalid_) throw InvariantError("PQTree: tree invalidated by a failed reduction");
  if (n_leaves_ == 0) {
    if (root_ != -1) throw InvariantError("PQTree: empty tree has a root");
    return;
  }
  if (nodes_[root_].parent != -1) throw InvariantError("PQTree: root has a parent");
  std::vector<int> seen_leaf(n_leaves_, 0);
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    const Node& n = nodes_[x];
    if (!n.alive) throw InvariantError("PQTree: dead node reachable");
    if (n.kind == Kind::Leaf) {
      if (n.first != -1) throw InvariantError("PQTree: leaf with children");
      ++seen_leaf[n.value];
      continue;
    }
    int count = 0;
    int prev = -1;
    for (int c = n.first; c >= 0; c = nodes_[c].right) {
      if (nodes_[c].parent != x) throw InvariantError("PQTree: bad parent pointer");
      if (nodes_[c].left != prev) throw InvariantError("PQTree: bad sibling link");
      prev = c;
      ++count;
      stack.push_back(c);
    }
    if (prev != n.last) throw InvariantError("PQTree: bad last-child pointer");
    if (count != n.n_children) throw InvariantError("PQTree: child count mismatch");
    if (n.kind == Kind::P && count < 2) throw InvariantError("PQTree: P node with < 2 children");
    if (n.kind == Kind::Q && count < 3) throw InvariantError("PQTree: Q node with < 3 children");
  }
  for (int v : seen_leaf)
    if (v != 1) throw InvariantError("PQTree: leaf missing or repeated");
}

std::string PQTree::to_dot() const {
  std::ostringstream os;
  os << "digraph pq {\n";
  if (root_ >= 0) {
    std::vector<int> stack{root_};
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      const Node& n = nodes_[x];
      os << "  n" << x << " [label=\"";
      if (n.kind == Kind::Leaf) os << n.value;
      else os << (n.kind == Kind::P ? "P" : "Q");
      os << "\"];\n";
      for (int c = n.first; c >= 0; c = nodes_[c].right) {
        os << "  n" << x << " -> n" << c << ";\n";
        stack.push_back(c);
      }
    }
  }
  os << "}\n";
  return os.str();
}

std::optional<PQTree> build_pq(const SparseBinaryMatrix& m) {
  PQTree t(m.n_cols);
  for (const auto& row : m.rows)
    if (!t.reduce(row)) return std::nullopt;
  return t;
}

}  // namespace circiso
