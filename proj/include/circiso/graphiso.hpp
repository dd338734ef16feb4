#pragma once

#include <optional>
#include <string>
#include <vector>

#include "circiso/arcmodel.hpp"
#include "circiso/binmat.hpp"
#include "circiso/graph.hpp"

namespace circiso {

enum class GraphClass { Hca, Gamma, ConvexRound, Pca };

enum class GraphVerdict { Isomorphic, NotIsomorphic, NotInClass };

struct GraphIsoResult {
  GraphVerdict verdict = GraphVerdict::NotIsomorphic;
  GraphClass cls = GraphClass::Hca;
  // Verified vertex bijection g1 -> g2, when one was found.
  std::optional<std::vector<int>> vertex_map;
  // Verified isomorphism of the class matrices.
  std::optional<MatrixIsoCertificate> matrix_certificate;
  std::string note;
};

struct GraphIsoOptions {
  // Largest graph whose maximal cliques are enumerated.
  int clique_guard = 20;
  // Largest model checked for the Helly property.
  int helly_guard = 20;
  // Take models as Helly without checking.
  bool trust_helly = false;
};

const char* class_name(GraphClass c);

// Helly models go through their clique matrices directly; other models fall
// back to hca_iso_graphs on their intersection graphs.
GraphIsoResult hca_iso_models(const CircularArcModel& a1, const CircularArcModel& a2,
                              const GraphIsoOptions& opt = {});
GraphIsoResult hca_iso_graphs(const Graph& g1, const Graph& g2, const GraphIsoOptions& opt = {});

// Augmented adjacency matrices; the vertex map is tried from the row and then
// the column permutation.
GraphIsoResult gamma_iso(const Graph& g1, const Graph& g2);
// Plain adjacency matrices, otherwise as gamma_iso.
GraphIsoResult convex_round_iso(const Graph& g1, const Graph& g2);

// Proper models; a model that cannot be normalized is compared through
// gamma_iso on its graph.
GraphIsoResult pca_iso_models(const CircularArcModel& a1, const CircularArcModel& a2);

}  // namespace circiso
