#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "circiso/binmat.hpp"
#include "circiso/graph.hpp"

namespace circiso {

struct Endpoint {
  enum class Side : std::uint8_t { Ccw, Cw };

  int arc = -1;
  Side side = Side::Ccw;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

// Circular-arc model as the clockwise cyclic sequence of its 2n endpoints.
// Arc i runs clockwise from its Ccw endpoint to its Cw endpoint.
//
// Points of the circle are identified with gaps: gap g lies between
// endpoints[g] and endpoints[(g + 1) % 2n]. Arc i contains the gaps from the
// position of its Ccw endpoint up to, but excluding, that of its Cw endpoint.
struct CircularArcModel {
  int n_arcs = 0;
  std::vector<Endpoint> endpoints;
  // Derived: positions of each arc's endpoints in `endpoints`.
  std::vector<int> ccw_pos;
  std::vector<int> cw_pos;

  CircularArcModel() = default;
  // Throws std::invalid_argument unless every arc appears once per side.
  CircularArcModel(int n_arcs, std::vector<Endpoint> endpoints);

  int n_gaps() const { return 2 * n_arcs; }
  bool contains_gap(int arc, int gap) const;
  // Number of gaps covered by the arc.
  int span(int arc) const;
  bool intersects(int a, int b) const;

  friend bool operator==(const CircularArcModel& a, const CircularArcModel& b) {
    return a.n_arcs == b.n_arcs && a.endpoints == b.endpoints;
  }
};

Graph intersection_graph(const CircularArcModel& a);

// Arcs containing a point, ascending.
std::vector<int> arcs_at(const CircularArcModel& a, int gap);

// Gaps where a Ccw endpoint is immediately followed by a Cw endpoint,
// ascending.
std::vector<int> intersection_segments(const CircularArcModel& a);

// `points` are distinct gaps listed in clockwise order from any start.
// sd_plus keeps the points not dominated by a later point, sd_minus those not
// dominated by an earlier one; results preserve the input order.
std::vector<int> sd_plus(const CircularArcModel& a, std::span<const int> points);
std::vector<int> sd_minus(const CircularArcModel& a, std::span<const int> points);
std::vector<int> minimal_dominating(const CircularArcModel& a, std::span<const int> points);

struct HellyCliqueMatrix {
  // Rows are arcs, columns are the surviving clique points in clockwise order.
  SuccinctCircMatrix matrix;
  std::vector<int> points;
};

// Assumes a Helly model; the result is then its clique matrix.
HellyCliqueMatrix clique_matrix_from_helly(const CircularArcModel& a);

// Every maximal clique of the intersection graph is the arc set of some
// intersection segment. Throws GuardExceeded when n_arcs > guard.
bool verify_helly(const CircularArcModel& a, int guard = 20);

bool is_proper(const CircularArcModel& a);

// Rows and columns are arcs ordered clockwise by Ccw endpoint starting from
// endpoint 0; row v is the closed neighbourhood N[v]. Throws ModelError
// (NotProper or CoversCircle) on bad input.
SuccinctCircMatrix augmented_adjacency_from_proper(const CircularArcModel& a);

// Arc ids in the vertex order used by augmented_adjacency_from_proper.
std::vector<int> proper_vertex_order(const CircularArcModel& a);

// Shrinks arcs until no two of them cover the circle, keeping the
// intersection graph and properness. Throws ModelError (NotProper or
// NormalizationFailed).
CircularArcModel normalize_cover_pairs(const CircularArcModel& a);

CircularArcModel rotate_model(const CircularArcModel& a, int shift);
// Mirror image: endpoint order reversed and sides swapped.
CircularArcModel reflect_model(const CircularArcModel& a);
// Arc i becomes arc perm[i].
CircularArcModel relabel_arcs(const CircularArcModel& a, std::span<const int> perm);

}  // namespace circiso
