#include "circiso/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "circiso/errors.hpp"

namespace circiso {

Graph::Graph(int n, std::span<const std::pair<int, int>> edges) : n(n) {
  if (n < 0) throw std::invalid_argument("graph: negative vertex count");
  adj.assign(n, {});
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("graph: self-loop at " + std::to_string(u));
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  validate();
}

std::size_t Graph::m() const {
  std::size_t deg = 0;
  for (const auto& a : adj) deg += a.size();
  return deg / 2;
}

bool Graph::adjacent(int u, int v) const { return std::binary_search(adj[u].begin(), adj[u].end(), v); }

void Graph::validate() const {
  if (static_cast<int>(adj.size()) != n) throw std::invalid_argument("graph: adjacency size mismatch");
  for (int u = 0; u < n; ++u) {
    const auto& a = adj[u];
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int v = a[i];
      if (v < 0 || v >= n) throw std::invalid_argument("graph: neighbour out of range");
      if (v == u) throw std::invalid_argument("graph: self-loop at " + std::to_string(u));
      if (i > 0 && a[i - 1] >= v) throw std::invalid_argument("graph: repeated or unsorted edge");
      if (!std::binary_search(adj[v].begin(), adj[v].end(), u))
        throw std::invalid_argument("graph: asymmetric adjacency");
    }
  }
}

Graph complement(const Graph& g) {
  Graph h(g.n);
  for (int u = 0; u < g.n; ++u) {
    auto it = g.adj[u].begin();
    for (int v = 0; v < g.n; ++v) {
      while (it != g.adj[u].end() && *it < v) ++it;
      if (v != u && (it == g.adj[u].end() || *it != v)) h.adj[u].push_back(v);
    }
  }
  return h;
}

Graph relabel(const Graph& g, std::span<const int> pi) {
  if (static_cast<int>(pi.size()) != g.n || !is_permutation_of_iota(pi))
    throw std::invalid_argument("relabel: not a vertex permutation");
  Graph h(g.n);
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u]) h.adj[pi[u]].push_back(pi[v]);
  for (auto& a : h.adj) std::sort(a.begin(), a.end());
  return h;
}

bool is_isomorphism(const Graph& g1, const Graph& g2, std::span<const int> pi) {
  if (g1.n != g2.n || static_cast<int>(pi.size()) != g1.n || !is_permutation_of_iota(pi)) return false;
  if (g1.m() != g2.m()) return false;
  for (int u = 0; u < g1.n; ++u) {
    if (g1.adj[u].size() != g2.adj[pi[u]].size()) return false;
    for (int v : g1.adj[u])
      if (!g2.adjacent(pi[u], pi[v])) return false;
  }
  return true;
}

SparseBinaryMatrix adjacency_matrix(const Graph& g, bool closed) {
  SparseBinaryMatrix m;
  m.n_rows = m.n_cols = g.n;
  m.rows.resize(g.n);
  for (int u = 0; u < g.n; ++u) {
    auto& r = m.rows[u];
    r = g.adj[u];
    if (closed) r.insert(std::lower_bound(r.begin(), r.end(), u), u);
  }
  return m;
}

namespace {

struct BronKerbosch {
  const Graph& g;
  std::vector<std::vector<int>> out;
  std::vector<int> r;

  void run(std::vector<int> p, std::vector<int> x) {
    if (p.empty()) {
      if (x.empty()) {
        out.push_back(r);
        std::sort(out.back().begin(), out.back().end());
      }
      return;
    }
    // Pivot maximizing |P ∩ N(u)|.
    int pivot = -1;
    std::size_t best = 0;
    for (const auto* set : {&p, &x})
      for (int u : *set) {
        std::size_t c = 0;
        for (int v : p) c += g.adjacent(u, v);
        if (pivot < 0 || c > best) {
          pivot = u;
          best = c;
        }
      }
    std::vector<int> candidates;
    for (int v : p)
      if (!g.adjacent(pivot, v)) candidates.push_back(v);
    for (int v : candidates) {
      std::vector<int> p2;
      std::vector<int> x2;
      for (int w : p)
        if (g.adjacent(v, w)) p2.push_back(w);
      for (int w : x)
        if (g.adjacent(v, w)) x2.push_back(w);
      r.push_back(v);
      run(std::move(p2), std::move(x2));
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  }
};

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const Graph& g, int guard) {
  if (g.n > guard)
    throw GuardExceeded("maximal clique enumeration: " + std::to_string(g.n) + " vertices exceeds guard " +
                        std::to_string(guard));
  if (g.n == 0) return {};
  BronKerbosch bk{g, {}, {}};
  std::vector<int> all(g.n);
  for (int i = 0; i < g.n; ++i) all[i] = i;
  bk.run(std::move(all), {});
  std::sort(bk.out.begin(), bk.out.end());
  return std::move(bk.out);
}

SparseBinaryMatrix clique_matrix(int n_vertices, const std::vector<std::vector<int>>& cliques) {
  SparseBinaryMatrix m;
  m.n_rows = n_vertices;
  m.n_cols = static_cast<int>(cliques.size());
  m.rows.resize(n_vertices);
  for (int k = 0; k < m.n_cols; ++k)
    for (int v : cliques[k]) m.rows[v].push_back(k);
  return m;
}

}  // namespace circiso
