#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "circiso/binmat.hpp"

namespace circiso {

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;

  Graph() = default;
  explicit Graph(int n) : n(n), adj(n) {}
  // Throws std::invalid_argument on loops, repeated edges, or bad endpoints.
  Graph(int n, std::span<const std::pair<int, int>> edges);

  std::size_t m() const;
  bool adjacent(int u, int v) const;
  void validate() const;

  friend bool operator==(const Graph&, const Graph&) = default;
};

Graph complement(const Graph& g);
Graph relabel(const Graph& g, std::span<const int> pi);

// True iff pi is a bijection with u~v in g1 exactly when pi[u]~pi[v] in g2.
bool is_isomorphism(const Graph& g1, const Graph& g2, std::span<const int> pi);

// Rows and columns are vertices; `closed` puts 1s on the diagonal.
SparseBinaryMatrix adjacency_matrix(const Graph& g, bool closed);

// All maximal cliques (Bron-Kerbosch with pivoting), each sorted, in
// lexicographic order. Throws GuardExceeded when g.n > guard.
std::vector<std::vector<int>> maximal_cliques(const Graph& g, int guard);

// Vertex-clique incidence: row v lists the indices of cliques containing v.
SparseBinaryMatrix clique_matrix(int n_vertices, const std::vector<std::vector<int>>& cliques);

}  // namespace circiso
