#include "circiso/graphiso.hpp"

#include "circiso/canon.hpp"
#include "circiso/errors.hpp"

namespace circiso {

namespace {

GraphIsoResult make(GraphVerdict v, GraphClass c, std::string note = {}) {
  GraphIsoResult r;
  r.verdict = v;
  r.cls = c;
  r.note = std::move(note);
  return r;
}

bool counts_differ(const Graph& g1, const Graph& g2) { return g1.n != g2.n || g1.m() != g2.m(); }

// Composes a map between matrix indices with the vertex orders on each side.
std::vector<int> through(const std::vector<int>& perm, const std::vector<int>& order1,
                         const std::vector<int>& order2) {
  std::vector<int> pi(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) pi[order1[i]] = order2[perm[i]];
  return pi;
}

// Isomorphic result with a vertex map read from the row or column
// permutation, if either is one.
GraphIsoResult lift(const Graph& g1, const Graph& g2, GraphClass c, const MatrixIsoCertificate& cert,
                    const std::vector<int>& order1, const std::vector<int>& order2) {
  GraphIsoResult r = make(GraphVerdict::Isomorphic, c);
  r.matrix_certificate = cert;
  for (const auto* perm : {&cert.row_perm, &cert.col_perm}) {
    if (static_cast<int>(perm->size()) != g1.n) continue;
    auto pi = through(*perm, order1, order2);
    if (is_isomorphism(g1, g2, pi)) {
      r.vertex_map = std::move(pi);
      return r;
    }
  }
  r.note = "matrix-certificate-only";
  return r;
}

std::vector<int> identity(int n) {
  std::vector<int> id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  return id;
}

GraphIsoResult adjacency_iso(const Graph& g1, const Graph& g2, bool closed, GraphClass c) {
  if (counts_differ(g1, g2)) return make(GraphVerdict::NotIsomorphic, c, "vertex or edge counts differ");
  const auto res = matrix_iso(adjacency_matrix(g1, closed), adjacency_matrix(g2, closed));
  if (res.verdict == MatrixVerdict::NeitherCircularOnes) return make(GraphVerdict::NotInClass, c);
  if (res.verdict == MatrixVerdict::NotIsomorphic) return make(GraphVerdict::NotIsomorphic, c);
  const auto id = identity(g1.n);
  return lift(g1, g2, c, *res.certificate, id, id);
}

}  // namespace

const char* class_name(GraphClass c) {
  switch (c) {
    case GraphClass::Hca: return "hca";
    case GraphClass::Gamma: return "gamma";
    case GraphClass::ConvexRound: return "convex-round";
    case GraphClass::Pca: return "pca";
  }
  return "?";
}

GraphIsoResult hca_iso_graphs(const Graph& g1, const Graph& g2, const GraphIsoOptions& opt) {
  const GraphClass c = GraphClass::Hca;
  if (counts_differ(g1, g2)) return make(GraphVerdict::NotIsomorphic, c, "vertex or edge counts differ");
  const auto m1 = clique_matrix(g1.n, maximal_cliques(g1, opt.clique_guard));
  const auto m2 = clique_matrix(g2.n, maximal_cliques(g2, opt.clique_guard));
  const auto res = matrix_iso(m1, m2);
  if (res.verdict == MatrixVerdict::NeitherCircularOnes)
    return make(GraphVerdict::NotInClass, c, "no clique matrix has circular ones");
  if (res.verdict == MatrixVerdict::NotIsomorphic) return make(GraphVerdict::NotIsomorphic, c);
  const auto id = identity(g1.n);
  auto r = lift(g1, g2, c, *res.certificate, id, id);
  if (!r.vertex_map) throw CertificateError("clique matrix row map is not a graph isomorphism");
  return r;
}

GraphIsoResult hca_iso_models(const CircularArcModel& a1, const CircularArcModel& a2, const GraphIsoOptions& opt) {
  const GraphClass c = GraphClass::Hca;
  const Graph g1 = intersection_graph(a1);
  const Graph g2 = intersection_graph(a2);
  if (counts_differ(g1, g2)) return make(GraphVerdict::NotIsomorphic, c, "vertex or edge counts differ");
  const bool h1 = opt.trust_helly || verify_helly(a1, opt.helly_guard);
  const bool h2 = opt.trust_helly || verify_helly(a2, opt.helly_guard);
  if (!h1 || !h2) {
    auto r = hca_iso_graphs(g1, g2, opt);
    r.note = r.note.empty() ? "non-Helly model, compared by clique enumeration" : r.note;
    return r;
  }
  const auto c1 = clique_matrix_from_helly(a1);
  const auto c2 = clique_matrix_from_helly(a2);
  const auto res = succinct_iso(c1.matrix, c2.matrix);
  if (res.verdict != MatrixVerdict::Isomorphic) return make(GraphVerdict::NotIsomorphic, c);
  const auto id = identity(g1.n);
  auto r = lift(g1, g2, c, *res.certificate, id, id);
  if (!r.vertex_map) throw CertificateError("clique matrix row map is not a graph isomorphism");
  return r;
}

GraphIsoResult gamma_iso(const Graph& g1, const Graph& g2) { return adjacency_iso(g1, g2, true, GraphClass::Gamma); }

GraphIsoResult convex_round_iso(const Graph& g1, const Graph& g2) {
  return adjacency_iso(g1, g2, false, GraphClass::ConvexRound);
}

GraphIsoResult pca_iso_models(const CircularArcModel& a1, const CircularArcModel& a2) {
  const GraphClass c = GraphClass::Pca;
  const Graph g1 = intersection_graph(a1);
  const Graph g2 = intersection_graph(a2);
  if (counts_differ(g1, g2)) return make(GraphVerdict::NotIsomorphic, c, "vertex or edge counts differ");
  const bool p1 = is_proper(a1);
  const bool p2 = is_proper(a2);
  if (!p1 && !p2) return make(GraphVerdict::NotInClass, c, "neither model is proper");
  if (!p1 || !p2) return make(GraphVerdict::NotIsomorphic, c, "only one model is proper");

  CircularArcModel n1, n2;
  try {
    n1 = normalize_cover_pairs(a1);
    n2 = normalize_cover_pairs(a2);
  } catch (const ModelError& e) {
    if (e.kind != ModelError::Kind::NormalizationFailed) throw;
    auto r = gamma_iso(g1, g2);
    r.cls = c;
    r.note = std::string("cover pair kept (") + e.what() + "), compared by augmented adjacency";
    return r;
  }
  const auto res = succinct_iso(augmented_adjacency_from_proper(n1), augmented_adjacency_from_proper(n2));
  if (res.verdict != MatrixVerdict::Isomorphic) return make(GraphVerdict::NotIsomorphic, c);
  auto r = lift(g1, g2, c, *res.certificate, proper_vertex_order(n1), proper_vertex_order(n2));
  if (r.vertex_map) return r;
  auto q = gamma_iso(g1, g2);
  if (q.verdict != GraphVerdict::Isomorphic) throw InvariantError("proper models isomorphic but graphs are not");
  q.cls = c;
  return q;
}

}  // namespace circiso
