#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circiso/binmat.hpp"
#include "circiso/pctree.hpp"

namespace circiso {

// Separator, parent placeholder, P flag / leaf label, C flag. Class ids and
// offset counts start at 2.
inline constexpr int kSeparator = -2;
inline constexpr int kParentLabel = -1;
inline constexpr int kLeafLabel = 0;
inline constexpr int kPFlag = 0;
inline constexpr int kCFlag = 1;
inline constexpr int kFirstClass = 2;

struct CanonicalCode {
  std::vector<int> code;

  // Space-separated integers.
  std::string str() const;

  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

// Index of the lexicographically least rotation; the smallest such index.
int least_rotation(std::span<const int> seq);

struct TupleSort {
  // Tuple indices in lexicographic order, a proper prefix first.
  std::vector<int> order;
  // class_id[i]: equal tuples share ids, consecutive from 2 in sorted order.
  std::vector<int> class_id;
  int n_classes = 0;
};

// LSD radix sort over variable-length tuples with entries >= -2.
TupleSort radix_sort_tuples(const std::vector<std::vector<int>>& tuples);

// A PC tree rooted at its center. When the center is an edge {a, b}, the
// root is a pseudo node with id tree->n_nodes() and neighbours (a, b), which
// replaces b in a's neighbour list and a in b's.
struct RootedPCTree {
  const QuotientPCTree* tree = nullptr;
  int root = -1;
  int pseudo = -1;
  int pseudo_a = -1;
  int pseudo_b = -1;
  std::vector<int> parent;
  // Slot of the parent in the node's own neighbour list; -1 at the root.
  std::vector<int> parent_slot;
  std::vector<int> depth;
  std::vector<std::vector<int>> levels;

  int n_nodes() const { return static_cast<int>(parent.size()); }
  int height() const { return static_cast<int>(levels.size()) - 1; }
  int degree(int u) const;
  int nbr(int u, int s) const;
  bool is_leaf(int u) const { return u != pseudo && tree->is_leaf(u); }
  // Empty for the pseudo node.
  const std::vector<QuotientRow>& quotient(int u) const;
  bool is_c(int u) const { return u != pseudo && tree->nodes[u].kind == PCNode::Kind::C; }
};

// Requires at least two nodes.
RootedPCTree root_at_center(const QuotientPCTree& t);

struct PTuple {
  int label = 0;
  int excl = 0;
  int incl = 0;

  friend bool operator==(const PTuple&, const PTuple&) = default;
  friend auto operator<=>(const PTuple&, const PTuple&) = default;
};

// Per neighbour: rows excluding only it, rows containing only it. Throws
// InvariantError on any other row.
void p_counts(const std::vector<QuotientRow>& quotient, int degree, std::vector<int>& excl,
              std::vector<int>& incl);

// Sorted neighbour tuples of a P node.
std::vector<PTuple> encode_p_quotient(const std::vector<QuotientRow>& quotient, std::span<const int> nbr_labels);

struct CTuple {
  int label = 0;
  std::vector<int> lengths;

  friend bool operator==(const CTuple&, const CTuple&) = default;
  friend auto operator<=>(const CTuple&, const CTuple&) = default;
};

struct CEncoding {
  // Least rotations of the list read in stored order (rows keyed by first
  // slot) and in reverse (rows keyed by last slot).
  std::vector<CTuple> forward_min;
  std::vector<CTuple> backward_min;
  bool forward = true;
  // Slot whose tuple heads the chosen list.
  int start = 0;

  const std::vector<CTuple>& chosen() const { return forward ? forward_min : backward_min; }
};

CEncoding encode_c_quotient(const std::vector<QuotientRow>& quotient, std::span<const int> nbr_labels);

// Flag followed by the tuples; C tuples end with the separator.
std::vector<int> flatten(const std::vector<PTuple>& tuples);
std::vector<int> flatten(const CEncoding& enc);

// Level-wise labels of a rooted tree; leaves 0, internal nodes their class.
struct TreeLabels {
  RootedPCTree rooted;
  std::vector<int> label;
  // Chosen direction and head slot of each C node.
  std::vector<char> forward;
  std::vector<int> start;
};

struct JointLabeling {
  std::vector<TreeLabels> trees;
  // Per level, deepest first: the distinct node encodings in class order.
  std::vector<std::vector<std::vector<int>>> tables;
  bool same_height = true;
};

// Labels all trees together, so equal labels at equal depths mean isomorphic
// subtrees across trees. Trees of unequal height are not labelled.
JointLabeling label_trees(std::span<const QuotientPCTree* const> trees);

// [height, then per level deepest first: number of classes, and per class
// its encoding length and encoding]. The root is the last entry.
CanonicalCode canonical_code(const QuotientPCTree& t);

// Matrix header [n_rows, n_cols, n_empty, n_full, kind] and the tree code;
// kind 1 marks n_cols <= 2, followed by the least sorted row list over column
// permutations.
CanonicalCode tree_matrix_code(const QuotientPCTree& t);
std::optional<CanonicalCode> matrix_canonical_code(const SparseBinaryMatrix& m);
CanonicalCode succinct_canonical_code(const SuccinctCircMatrix& s);

// Code of the tree with every quotient dropped.
CanonicalCode tree_shape_code(const QuotientPCTree& t);

enum class MatrixVerdict { Isomorphic, NotIsomorphic, NeitherCircularOnes };

struct MatrixIsoResult {
  MatrixVerdict verdict = MatrixVerdict::NotIsomorphic;
  std::optional<MatrixIsoCertificate> certificate;
};

MatrixIsoResult matrix_iso(const SparseBinaryMatrix& m1, const SparseBinaryMatrix& m2);
// Both inputs are circular-ones under their stored order.
MatrixIsoResult succinct_iso(const SuccinctCircMatrix& s1, const SuccinctCircMatrix& s2);
// t1, t2 are the trees of m1, m2 (leaf labels are columns of m1, m2).
MatrixIsoResult tree_iso(const QuotientPCTree& t1, const SparseBinaryMatrix& m1, const QuotientPCTree& t2,
                         const SparseBinaryMatrix& m2);

}  // namespace circiso
