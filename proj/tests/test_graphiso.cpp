#include <doctest.h>

#include <functional>

#include "circiso/errors.hpp"
#include "circiso/graphiso.hpp"
#include "circiso/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace circiso;
using fixtures::model;

namespace {

Graph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

Graph path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

Graph random_graph(gen::Rng& rng, int n, double p) {
  std::bernoulli_distribution bit(p);
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (bit(rng)) e.emplace_back(i, j);
  return Graph(n, e);
}

// Checks what an Isomorphic verdict carries.
void check_certificate(const GraphIsoResult& r, const Graph& g1, const Graph& g2, const SparseBinaryMatrix& m1,
                       const SparseBinaryMatrix& m2) {
  if (r.verdict != GraphVerdict::Isomorphic) return;
  REQUIRE(r.matrix_certificate);
  CHECK(matrices_equal_under(m1, m2, *r.matrix_certificate));
  if (r.vertex_map) CHECK(is_isomorphism(g1, g2, *r.vertex_map));
  else CHECK(r.note == "matrix-certificate-only");
}

bool gamma_class(const Graph& g) { return oracle::brute_circular_ones(adjacency_matrix(g, true)); }
bool convex_round_class(const Graph& g) { return oracle::brute_circular_ones(adjacency_matrix(g, false)); }

// HCA graphs have at most n maximal cliques.
bool hca_class(const Graph& g) {
  const auto cliques = oracle::brute_max_cliques(g);
  if (static_cast<int>(cliques.size()) > g.n) return false;
  return oracle::brute_circular_ones(clique_matrix(g.n, cliques));
}

struct Tally {
  int in_class = 0;
  int iso = 0;
};

void check_against_oracle(const GraphIsoResult& r, const Graph& g1, const Graph& g2, bool in1, bool in2,
                          Tally& t) {
  if (r.verdict == GraphVerdict::NotInClass) CHECK((!in1 && !in2));
  if (in1 && in2) {
    ++t.in_class;
    const bool iso = oracle::brute_graph_iso(g1, g2);
    t.iso += iso;
    CHECK((r.verdict == GraphVerdict::Isomorphic) == iso);
  }
  if (r.verdict == GraphVerdict::Isomorphic) CHECK(oracle::brute_graph_iso(g1, g2));
}

}  // namespace

TEST_CASE("hca on models") {
  const auto a = model(4, {0, 1, ~0, 2, ~1, 3, ~2, ~3});
  auto r = hca_iso_models(a, a);
  CHECK(r.verdict == GraphVerdict::Isomorphic);
  REQUIRE(r.vertex_map);
  CHECK(is_isomorphism(intersection_graph(a), intersection_graph(a), *r.vertex_map));

  const std::vector<int> perm{2, 0, 3, 1};
  const auto b = rotate_model(relabel_arcs(a, perm), 3);
  r = hca_iso_models(a, b);
  CHECK(r.verdict == GraphVerdict::Isomorphic);
  REQUIRE(r.vertex_map);
  CHECK(is_isomorphism(intersection_graph(a), intersection_graph(b), *r.vertex_map));

  // 4-cycle vs 4-path.
  const auto c4 = model(4, {0, ~3, 1, ~0, 2, ~1, 3, ~2});
  const auto p4 = model(4, {0, 1, ~0, 2, ~1, 3, ~2, ~3});
  CHECK(intersection_graph(c4) == cycle(4));
  CHECK(hca_iso_models(c4, p4).verdict == GraphVerdict::NotIsomorphic);
}

TEST_CASE("hca on a non-Helly model uses its graph") {
  const auto sun = fixtures::non_helly_model();
  const auto r = hca_iso_models(sun, sun);
  // The graph itself has a Helly model.
  CHECK(hca_class(intersection_graph(sun)));
  CHECK(r.verdict == GraphVerdict::Isomorphic);
  CHECK(r.vertex_map);

  const auto bad = fixtures::non_hca_model();
  CHECK_FALSE(hca_class(intersection_graph(bad)));
  CHECK(hca_iso_models(bad, bad).verdict == GraphVerdict::NotInClass);

  GraphIsoOptions small;
  small.helly_guard = 3;
  CHECK_THROWS_AS(hca_iso_models(sun, sun, small), GuardExceeded);
  small.trust_helly = true;
  CHECK_NOTHROW(hca_iso_models(model(2, {0, ~0, 1, ~1}), model(2, {0, ~0, 1, ~1}), small));
}

TEST_CASE("hca on graphs") {
  gen::Rng rng(31);
  const auto c5 = cycle(5);
  const auto c5b = relabel(c5, gen::random_permutation(rng, 5));
  auto r = hca_iso_graphs(c5, c5b);
  CHECK(r.verdict == GraphVerdict::Isomorphic);
  REQUIRE(r.vertex_map);
  CHECK(is_isomorphism(c5, c5b, *r.vertex_map));

  const Graph two_triangles(6, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK(hca_iso_graphs(cycle(6), two_triangles).verdict == GraphVerdict::NotIsomorphic);

  const auto sun = intersection_graph(fixtures::non_helly_model());
  CHECK(hca_iso_graphs(sun, sun).verdict == GraphVerdict::Isomorphic);

  GraphIsoOptions small;
  small.clique_guard = 4;
  CHECK_THROWS_AS(hca_iso_graphs(c5, c5, small), GuardExceeded);
}

TEST_CASE("gamma small cases") {
  gen::Rng rng(32);
  const auto c5 = cycle(5);
  const auto c5b = relabel(c5, gen::random_permutation(rng, 5));
  const auto r = gamma_iso(c5, c5b);
  CHECK(r.verdict == GraphVerdict::Isomorphic);
  check_certificate(r, c5, c5b, adjacency_matrix(c5, true), adjacency_matrix(c5b, true));
  CHECK(gamma_iso(c5, path(5)).verdict == GraphVerdict::NotIsomorphic);

  Graph k4_minus(4, std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  CHECK(gamma_iso(k4_minus, complete(4)).verdict == GraphVerdict::NotIsomorphic);
}

TEST_CASE("convex-round small cases") {
  gen::Rng rng(33);
  const auto co_c6 = complement(cycle(6));
  const auto other = relabel(co_c6, gen::random_permutation(rng, 6));
  const auto r = convex_round_iso(co_c6, other);
  CHECK(r.verdict == GraphVerdict::Isomorphic);
  CHECK(oracle::brute_graph_iso(co_c6, other));
  check_certificate(r, co_c6, other, adjacency_matrix(co_c6, false), adjacency_matrix(other, false));

  const Graph empty(5);
  CHECK(convex_round_iso(empty, empty).verdict == GraphVerdict::Isomorphic);

  // Both outside the class: found among random graphs by the oracle.
  int seen = 0;
  while (seen < 20) {
    const auto g1 = random_graph(rng, 7, 0.5);
    const auto g2 = relabel(g1, gen::random_permutation(rng, 7));
    if (convex_round_class(g1)) continue;
    ++seen;
    CHECK(convex_round_iso(g1, g2).verdict == GraphVerdict::NotInClass);
  }
}

TEST_CASE("pca small cases") {
  const auto a = model(5, {0, ~4, 1, ~0, 2, ~1, 3, ~2, 4, ~3});
  auto r = pca_iso_models(a, rotate_model(a, 3));
  CHECK(r.verdict == GraphVerdict::Isomorphic);
  CHECK(r.vertex_map);

  // C7 vs C7 plus a chord.
  std::vector<int> seq;
  for (int i = 0; i < 7; ++i) {
    seq.push_back(i);
    seq.push_back(~((i + 6) % 7));
  }
  const auto c7 = model(7, seq);
  CHECK(intersection_graph(c7) == cycle(7));
  const auto chord = model(7, {0, ~6, 1, ~0, 2, ~1, 3, 4, ~2, ~3, 5, ~4, 6, ~5});
  CHECK(intersection_graph(chord).m() == 8);
  CHECK(is_proper(chord));
  CHECK(pca_iso_models(c7, chord).verdict == GraphVerdict::NotIsomorphic);

  const auto nested = model(2, {0, 1, ~1, ~0});
  CHECK(pca_iso_models(nested, nested).verdict == GraphVerdict::NotInClass);
  CHECK(pca_iso_models(nested, model(2, {0, 1, ~0, ~1})).verdict == GraphVerdict::NotIsomorphic);

  // Normalization fails; the graphs are still compared.
  const auto blocked = fixtures::blocked_cover_model();
  r = pca_iso_models(blocked, model(4, {0, 1, 2, 3, ~0, ~1, ~2, ~3}));
  CHECK(r.verdict == GraphVerdict::Isomorphic);
  CHECK(r.vertex_map);

  // Neither permutation of the normalized certificate is a vertex map here.
  const auto p = model(7, {~3, 0, ~4, 1, 6, ~2, 5, ~0, ~1, 3, ~6, 4, ~5, 2});
  const auto q = model(7, {~0, 5, ~2, 6, ~3, 1, 4, ~5, 0, ~6, ~1, 2, ~4, 3});
  r = pca_iso_models(p, q);
  CHECK(r.verdict == GraphVerdict::Isomorphic);
  REQUIRE(r.vertex_map);
  CHECK(is_isomorphism(intersection_graph(p), intersection_graph(q), *r.vertex_map));
}

TEST_CASE("pca on reflected and relabelled models") {
  gen::Rng rng(34);
  for (int it = 0; it < 500; ++it) {
    const int n = gen::uniform(rng, 1, 12);
    const auto a = gen::random_proper_model(rng, n, 0.1 + 0.05 * (it % 10));
    const auto b = rotate_model(relabel_arcs(reflect_model(a), gen::random_permutation(rng, n)),
                                gen::uniform(rng, 0, 2 * n - 1));
    const auto r = pca_iso_models(a, b);
    CHECK(r.verdict == GraphVerdict::Isomorphic);
    if (r.vertex_map) CHECK(is_isomorphism(intersection_graph(a), intersection_graph(b), *r.vertex_map));
  }
}

TEST_CASE("class drivers agree with the graph oracle") {
  gen::Rng rng(35);
  auto partner = [&](const Graph& g, const std::function<Graph()>& fresh) {
    return gen::uniform(rng, 0, 1) ? relabel(g, gen::random_permutation(rng, g.n)) : fresh();
  };

  SUBCASE("hca") {
    Tally t;
    for (int it = 0; it < 800; ++it) {
      const int n = gen::uniform(rng, 1, 7);
      const auto a1 = gen::random_model(rng, n);
      auto a2 = gen::uniform(rng, 0, 1) ? rotate_model(relabel_arcs(a1, gen::random_permutation(rng, n)), 1)
                                        : gen::random_model(rng, n);
      const auto g1 = intersection_graph(a1), g2 = intersection_graph(a2);
      const auto r = hca_iso_models(a1, a2);
      check_against_oracle(r, g1, g2, hca_class(g1), hca_class(g2), t);
      if (r.verdict == GraphVerdict::Isomorphic) CHECK(r.vertex_map);
    }
    CHECK(t.in_class >= 500);
    CHECK(t.iso >= 100);
  }
  SUBCASE("hca graphs") {
    Tally t;
    for (int it = 0; it < 800; ++it) {
      const int n = gen::uniform(rng, 1, 7);
      const double p = 0.2 + 0.1 * (it % 6);
      const auto g1 = random_graph(rng, n, p);
      const auto g2 = partner(g1, [&] { return random_graph(rng, n, p); });
      const auto r = hca_iso_graphs(g1, g2);
      check_against_oracle(r, g1, g2, hca_class(g1), hca_class(g2), t);
    }
    CHECK(t.in_class >= 300);
  }
  SUBCASE("gamma") {
    Tally t;
    for (int it = 0; it < 1200; ++it) {
      const int n = gen::uniform(rng, 1, 7);
      auto fresh = [&] {
        return it % 2 ? intersection_graph(gen::random_model(rng, n)) : random_graph(rng, n, 0.5);
      };
      const auto g1 = fresh();
      const auto g2 = partner(g1, fresh);
      const auto r = gamma_iso(g1, g2);
      check_against_oracle(r, g1, g2, gamma_class(g1), gamma_class(g2), t);
      check_certificate(r, g1, g2, adjacency_matrix(g1, true), adjacency_matrix(g2, true));
    }
    CHECK(t.in_class >= 500);
  }
  SUBCASE("convex-round") {
    Tally t;
    for (int it = 0; it < 1200; ++it) {
      const int n = gen::uniform(rng, 1, 7);
      auto fresh = [&] {
        return it % 2 ? complement(intersection_graph(gen::random_model(rng, n))) : random_graph(rng, n, 0.5);
      };
      const auto g1 = fresh();
      const auto g2 = partner(g1, fresh);
      const auto r = convex_round_iso(g1, g2);
      check_against_oracle(r, g1, g2, convex_round_class(g1), convex_round_class(g2), t);
      check_certificate(r, g1, g2, adjacency_matrix(g1, false), adjacency_matrix(g2, false));
    }
    CHECK(t.in_class >= 500);
  }
  SUBCASE("pca") {
    Tally t;
    for (int it = 0; it < 800; ++it) {
      const int n = gen::uniform(rng, 1, 7);
      const double len = 0.1 + 0.1 * (it % 8);
      const auto a1 = gen::random_proper_model(rng, n, len);
      auto a2 = gen::uniform(rng, 0, 1) ? reflect_model(relabel_arcs(a1, gen::random_permutation(rng, n)))
                                        : gen::random_proper_model(rng, n, len);
      if (it % 10 == 0) a2 = gen::random_model(rng, n);
      const auto g1 = intersection_graph(a1), g2 = intersection_graph(a2);
      const auto r = pca_iso_models(a1, a2);
      check_against_oracle(r, g1, g2, is_proper(a1), is_proper(a2), t);
      if (r.verdict == GraphVerdict::Isomorphic && !r.vertex_map) CHECK(r.note == "matrix-certificate-only");
      if (r.vertex_map) CHECK(is_isomorphism(g1, g2, *r.vertex_map));
    }
    CHECK(t.in_class >= 500);
  }
}

TEST_CASE("gamma and convex-round agree under complementation") {
  gen::Rng rng(36);
  for (int it = 0; it < 1000; ++it) {
    const int n = gen::uniform(rng, 1, 8);
    const auto g1 = it % 2 ? intersection_graph(gen::random_model(rng, n)) : random_graph(rng, n, 0.5);
    const auto g2 = gen::uniform(rng, 0, 1) ? relabel(g1, gen::random_permutation(rng, n))
                                            : intersection_graph(gen::random_model(rng, n));
    CHECK(gamma_iso(g1, g2).verdict == convex_round_iso(complement(g1), complement(g2)).verdict);
  }
}

TEST_CASE("count pre-check") {
  const auto r = gamma_iso(cycle(5), path(5));
  CHECK(r.verdict == GraphVerdict::NotIsomorphic);
  CHECK(r.note == "vertex or edge counts differ");
  CHECK(hca_iso_graphs(cycle(4), cycle(5)).verdict == GraphVerdict::NotIsomorphic);
}
