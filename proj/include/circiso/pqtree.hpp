#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circiso/binmat.hpp"

namespace circiso {

// Booth-Lueker PQ tree over leaves 0..n-1. Every node keeps an explicit parent
// pointer and an ordered, doubly linked child list; reductions use the full
// template catalogue (L1, P1-P6, Q1-Q3).
class PQTree {
 public:
  enum class Kind : std::uint8_t { Leaf, P, Q };

  explicit PQTree(int n_leaves);

  // Restricts the tree to orders in which `leaves` are consecutive. Returns
  // false when no such order exists; the tree is unusable afterwards.
  // Throws std::invalid_argument on out-of-range or repeated leaves.
  bool reduce(std::span<const int> leaves);

  bool valid() const { return !invalid_; }
  int n_leaves() const { return n_leaves_; }
  int root() const { return root_; }

  Kind kind(int node) const { return nodes_[node].kind; }
  int parent(int node) const { return nodes_[node].parent; }
  int leaf_value(int node) const { return nodes_[node].value; }
  int leaf_node(int leaf) const { return leaf_node_[leaf]; }
  std::vector<int> children(int node) const;
  int child_count(int node) const { return nodes_[node].n_children; }

  // Left-to-right leaf order.
  std::vector<int> frontier() const;

  // Rearranges children (P: any permutation, Q: reversal) so the frontier
  // equals `order`. Returns false if `order` is not a reachable frontier.
  bool arrange_to(std::span<const int> order);

  // Structural self-check; throws InvariantError.
  void check_invariants() const;

  std::string to_dot() const;

 private:
  enum class Label : std::uint8_t { Empty, Partial, Full };

  struct Node {
    Kind kind = Kind::Leaf;
    int parent = -1;
    int left = -1;
    int right = -1;
    int first = -1;
    int last = -1;
    int n_children = 0;
    int value = -1;
    bool alive = true;

    // Per-reduction scratch, meaningful only while stamp == stamp_.
    std::uint32_t stamp = 0;
    Label label = Label::Empty;
    bool full_at_first = false;
    int pending_children = 0;
    int pertinent_leaves = 0;
    std::vector<int> full_kids;
    std::vector<int> partial_kids;
  };

  int new_node(Kind kind);
  void touch(int x);
  Label label_of(int x) const;
  void set_label(int x, Label l);

  void unlink(int c);
  void append_child(int p, int c);
  void prepend_child(int p, int c);
  void add_at_end(int p, int c, bool at_first);
  void replace(int old_node, int new_node);
  void kill(int x);

  int make_group(std::span<const int> kids);
  void splice_in_place(int q, int child, bool full_toward_first);
  void absorb_at_end(int q, bool at_first, int other);

  int apply_nonroot(int x);
  bool apply_root(int x);

  bool template_p2(int x);
  int template_p3(int x);
  bool template_p4(int x);
  int template_p5(int x);
  bool template_p6(int x);
  bool template_q2(int x);
  bool template_q3(int x);

  std::vector<Node> nodes_;
  std::vector<int> leaf_node_;
  int n_leaves_ = 0;
  int root_ = -1;
  bool invalid_ = false;
  std::uint32_t stamp_ = 0;
};

// PQ tree of all consecutive-ones orders of m's columns, or nullopt.
std::optional<PQTree> build_pq(const SparseBinaryMatrix& m);

}  // namespace circiso
