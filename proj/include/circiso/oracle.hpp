#pragma once

#include <cstdint>
#include <vector>

#include "circiso/arcmodel.hpp"
#include "circiso/binmat.hpp"
#include "circiso/graph.hpp"

// Exhaustive reference implementations. They share types with the library
// but none of its algorithms, and refuse inputs above their size limits.
namespace circiso::oracle {

inline constexpr int kMaxPermutationCols = 8;
inline constexpr int kMaxFamilyCols = 7;
inline constexpr int kMaxCliqueVertices = 20;
inline constexpr int kMaxIsoVertices = 8;

bool brute_matrix_iso(const SparseBinaryMatrix& m1, const SparseBinaryMatrix& m2);
bool brute_circular_ones(const SparseBinaryMatrix& m);
bool brute_consecutive_ones(const SparseBinaryMatrix& m);

// Every column order (as a sequence of columns) with consecutive ones.
std::vector<std::vector<int>> brute_consecutive_orders(const SparseBinaryMatrix& m);

// Bitmasks of all nonempty proper column subsets that strongly overlap no
// row, ascending.
std::vector<std::uint32_t> brute_strong_overlap_family(const SparseBinaryMatrix& m);

// Maximal cliques, each sorted, in lexicographic order.
std::vector<std::vector<int>> brute_max_cliques(const Graph& g);

bool brute_graph_iso(const Graph& g1, const Graph& g2);

// Intersection graph computed from explicit per-arc gap sets.
Graph brute_arc_graph(const CircularArcModel& a);

// Arcs containing gap `gap`, from explicit gap sets.
std::vector<int> brute_arcs_at(const CircularArcModel& a, int gap);

}  // namespace circiso::oracle
