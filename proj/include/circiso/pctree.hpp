#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circiso/binmat.hpp"

namespace circiso {

// A row projected onto an internal node: the neighbours in slots
// first, first+1, ..., last (cyclically) of the owning node. first == last
// is a single neighbour.
struct QuotientRow {
  int row_id = -1;
  int first = -1;
  int last = -1;

  friend bool operator==(const QuotientRow&, const QuotientRow&) = default;
};

struct PCNode {
  enum class Kind : std::uint8_t { Leaf, P, C };

  Kind kind = Kind::Leaf;
  // Cyclic neighbour order; traversing it forward visits the leaves in
  // increasing position order.
  std::vector<int> nbrs;
  std::vector<QuotientRow> quotient;

  int degree() const { return static_cast<int>(nbrs.size()); }
};

// Quotient-labelled PC tree of a circular-ones matrix. Nodes 0..n_cols-1 are
// the leaves, leaf i being column position i of the circular-ones order.
struct QuotientPCTree {
  int n_cols = 0;
  int n_rows = 0;
  std::vector<PCNode> nodes;
  // Column label (of the source matrix) carried by each leaf.
  std::vector<int> column_label;
  // Rows with no tree projection.
  std::vector<int> full_rows;
  std::vector<int> empty_rows;
  // With n_cols <= 2 there are no internal nodes; the arc rows live here,
  // by position, indexed like the source rows (trivial rows left empty).
  std::vector<std::vector<int>> degenerate_rows;

  bool degenerate() const { return n_cols <= 2; }
  int n_nodes() const { return static_cast<int>(nodes.size()); }
  bool is_leaf(int u) const { return u < n_cols; }
  // Slot of v in u's neighbour list, or -1.
  int slot_of(int u, int v) const;
  // back[u][s] is the slot of u in the neighbour list of nodes[u].nbrs[s].
  std::vector<std::vector<int>> back_slots() const;
  // Leaves met by a walk that always leaves a node through the slot after
  // the one it entered by, starting at leaf 0.
  std::vector<int> leaf_order() const;

  // Structural checks, including the P-node quotient property; throws
  // InvariantError.
  void check_invariants() const;
};

// Tree of a succinct matrix whose stored column order is circular-ones.
QuotientPCTree build_pc(const SuccinctCircMatrix& s);

// Finds a circular-ones order first; nullopt if there is none. Leaves carry
// the original column labels.
std::optional<QuotientPCTree> build_pc(const SparseBinaryMatrix& m);

struct Projection {
  int node = -1;
  int first = -1;
  int last = -1;

  friend bool operator==(const Projection&, const Projection&) = default;
};

// Quotient of every row by counting marked neighbours inward from its
// leaves; independent of the projections stored in t. Full and empty rows
// get node -1.
std::vector<Projection> project_rows(const QuotientPCTree& t, const SuccinctCircMatrix& s);

// Attaches quotients to t using lowest common ancestors, with rows through
// the last column complemented and relocated as needed, then settles the P/C
// kind of every internal node.
void succinct_quotients(QuotientPCTree& t, const SuccinctCircMatrix& s);

// Source matrix, rows in row-id order, columns by label.
SparseBinaryMatrix reconstruct(const QuotientPCTree& t);

// Nonempty proper column sets (as label bitmasks) generated by the tree:
// every edge side, and every union of neighbour sets at a P node. Throws
// GuardExceeded above 20 columns.
std::vector<std::uint32_t> tree_family(const QuotientPCTree& t);

// "id kind [nbr ids] {row_id:(first_nbr_id,last_nbr_id) ...}" per node.
std::string dump_tree(const QuotientPCTree& t);

}  // namespace circiso
