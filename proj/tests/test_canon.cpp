#include <doctest.h>

#include <algorithm>
#include <set>

#include "circiso/canon.hpp"
#include "circiso/errors.hpp"
#include "circiso/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace circiso;

namespace {

std::vector<std::vector<int>> lengths_of(const std::vector<CTuple>& list) {
  std::vector<std::vector<int>> out;
  for (const auto& t : list) out.push_back(t.lengths);
  return out;
}

int brute_least_rotation(const std::vector<int>& s) {
  const int n = static_cast<int>(s.size());
  int best = 0;
  auto rot = [&](int k) {
    std::vector<int> r(n);
    for (int i = 0; i < n; ++i) r[i] = s[(k + i) % n];
    return r;
  };
  for (int k = 1; k < n; ++k)
    if (rot(k) < rot(best)) best = k;
  return best;
}

// Reverses the cyclic order at u, remapping its quotient slots and the slots
// neighbours do not store (slots are local, so only u changes).
void reverse_node(QuotientPCTree& t, int u) {
  auto& node = t.nodes[u];
  const int d = node.degree();
  std::reverse(node.nbrs.begin(), node.nbrs.end());
  for (auto& q : node.quotient) q = {q.row_id, d - 1 - q.last, d - 1 - q.first};
}

// Moves the neighbour in slot a to slot b at a P node.
void permute_p_node(QuotientPCTree& t, int u, const std::vector<int>& perm) {
  auto& node = t.nodes[u];
  std::vector<int> nb(node.nbrs.size());
  for (std::size_t s = 0; s < nb.size(); ++s) nb[perm[s]] = node.nbrs[s];
  node.nbrs = nb;
  const int d = node.degree();
  for (auto& q : node.quotient) {
    const int size = (q.last - q.first + d) % d + 1;
    if (size == 1) {
      q.first = q.last = perm[q.first];
    } else {
      const int missing = perm[(q.last + 1) % d];
      q.first = (missing + 1) % d;
      q.last = (missing + d - 1) % d;
    }
  }
}

}  // namespace

TEST_CASE("least_rotation") {
  const std::vector<int> a{2, 2, 1};
  CHECK(least_rotation(a) == 2);
  const std::vector<int> b{5, 5, 5, 5};
  CHECK(least_rotation(b) == 0);
  const std::vector<int> c{1, 0, 1, 0};
  CHECK(least_rotation(c) == 1);
  CHECK_THROWS_AS(least_rotation(std::vector<int>{}), std::invalid_argument);

  gen::Rng rng(41);
  for (int iter = 0; iter < 3000; ++iter) {
    std::vector<int> s(gen::uniform(rng, 1, 12));
    for (int& x : s) x = gen::uniform(rng, -2, 2);
    REQUIRE(least_rotation(s) == brute_least_rotation(s));
  }
}

TEST_CASE("radix_sort_tuples") {
  auto one = radix_sort_tuples({{1, 2}, {1, 2}});
  CHECK(one.n_classes == 1);
  CHECK(one.class_id == std::vector<int>{2, 2});

  auto prefix = radix_sort_tuples({{1, 0}, {1}});
  CHECK(prefix.order == std::vector<int>{1, 0});
  CHECK(prefix.class_id == std::vector<int>{3, 2});

  CHECK_THROWS_AS(radix_sort_tuples({{-3}}), std::invalid_argument);
  CHECK(radix_sort_tuples({}).order.empty());

  gen::Rng rng(43);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::vector<int>> tuples(100);
    for (auto& t : tuples) {
      t.resize(gen::uniform(rng, 0, 5));
      for (int& x : t) x = gen::uniform(rng, -2, 6);
    }
    const auto r = radix_sort_tuples(tuples);
    std::vector<int> idx(tuples.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return tuples[x] < tuples[y]; });
    REQUIRE(r.order.size() == idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) REQUIRE(tuples[r.order[k]] == tuples[idx[k]]);
    for (std::size_t x = 0; x < tuples.size(); ++x)
      for (std::size_t y = 0; y < tuples.size(); ++y) {
        REQUIRE((r.class_id[x] == r.class_id[y]) == (tuples[x] == tuples[y]));
        REQUIRE((r.class_id[x] < r.class_id[y]) == (tuples[x] < tuples[y]));
      }
  }
}

TEST_CASE("root_at_center") {
  SUBCASE("three-node path") {
    QuotientPCTree t;
    t.n_cols = 2;
    t.nodes.resize(3);
    t.nodes[0].nbrs = {2};
    t.nodes[1].nbrs = {2};
    t.nodes[2].nbrs = {0, 1};
    const auto r = root_at_center(t);
    CHECK(r.root == 2);
    CHECK(r.pseudo == -1);
    CHECK(r.height() == 1);
  }
  SUBCASE("two nodes") {
    QuotientPCTree t;
    t.n_cols = 2;
    t.nodes.resize(2);
    t.nodes[0].nbrs = {1};
    t.nodes[1].nbrs = {0};
    const auto r = root_at_center(t);
    CHECK(r.root == 2);
    CHECK(r.pseudo == 2);
    CHECK(r.degree(2) == 2);
    CHECK(r.nbr(0, 0) == 2);
    CHECK(r.parent[0] == 2);
    CHECK(r.parent[1] == 2);
  }
  SUBCASE("star") {
    auto t = build_pc(SuccinctCircMatrix(6, {}));
    const auto r = root_at_center(t);
    CHECK(r.root == 6);
    CHECK(r.levels.size() == 2);
    CHECK(r.levels[1].size() == 6);
  }
  SUBCASE("running example") {
    auto t = build_pc(fixtures::running_example());
    REQUIRE(t);
    const auto r = root_at_center(*t);
    // c is the middle of the path a - c - b.
    CHECK(r.pseudo == -1);
    CHECK(t->nodes[r.root].kind == PCNode::Kind::C);
    CHECK(t->nodes[r.root].degree() == 5);
  }
}

TEST_CASE("P node encoding of node a") {
  // Neighbours 1, 2, 3, c in slots 0..3.
  const std::vector<QuotientRow> q{
      {0, 0, 0},  // row 1: only neighbour 1
      {1, 0, 2},  // row 2: all but c
      {2, 3, 1},  // row 3: all but 3
      {3, 0, 2},  // row 4: all but c
      {4, 1, 3},  // row 5: all but 1
  };
  const std::vector<int> labels(4, 0);
  const auto tuples = encode_p_quotient(q, labels);
  CHECK(tuples == std::vector<PTuple>{{0, 0, 0}, {0, 1, 0}, {0, 1, 1}, {0, 2, 0}});
  CHECK(flatten(tuples) == std::vector<int>{0, 0, 2, 2, 0, 3, 2, 0, 3, 3, 0, 4, 2});
}

TEST_CASE("P node encoding, small cases") {
  const std::vector<int> labels(3, 0);
  CHECK(encode_p_quotient({}, labels) == std::vector<PTuple>{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  CHECK(encode_p_quotient({{0, 1, 1}}, labels) == std::vector<PTuple>{{0, 0, 0}, {0, 0, 0}, {0, 0, 1}});
  const std::vector<int> mixed{kParentLabel, 4, 2};
  CHECK(encode_p_quotient({}, mixed) == std::vector<PTuple>{{-1, 0, 0}, {2, 0, 0}, {4, 0, 0}});
  // Two of five neighbours is not a P quotient.
  CHECK_THROWS_AS(encode_p_quotient({{0, 0, 1}}, std::vector<int>(5, 0)), InvariantError);
}

TEST_CASE("C node encoding of node c") {
  // Stored order a, 4, 5, 6, b.
  const std::vector<QuotientRow> q{{10, 0, 2}, {11, 0, 1}, {12, 1, 3}, {13, 3, 0}, {14, 3, 4}};
  const std::vector<int> labels(5, 0);
  const auto enc = encode_c_quotient(q, labels);
  using L = std::vector<std::vector<int>>;
  CHECK(lengths_of(enc.forward_min) == L{{}, {2, 3}, {}, {2, 3}, {3}});
  CHECK(lengths_of(enc.backward_min) == L{{2}, {3}, {2}, {3}, {3}});
  CHECK(enc.forward);
  CHECK(enc.start == 2);
  CHECK(flatten(enc) == std::vector<int>{1, 0, -2, 0, 4, 5, -2, 0, -2, 0, 4, 5, -2, 0, 5, -2});

  // The mirror image stores the same node the other way round.
  std::vector<QuotientRow> mirrored;
  for (const auto& r : q) mirrored.push_back({r.row_id, 4 - r.last, 4 - r.first});
  const auto menc = encode_c_quotient(mirrored, labels);
  CHECK(!menc.forward);
  CHECK(menc.chosen() == enc.chosen());
  CHECK(menc.start == 2);
}

TEST_CASE("encodings of the running example tree") {
  auto t = build_pc(fixtures::running_example());
  REQUIRE(t);
  using L = std::vector<std::vector<int>>;
  int checked = 0;
  for (int u = t->n_cols; u < t->n_nodes(); ++u) {
    const auto& node = t->nodes[u];
    const std::vector<int> zeros(node.degree(), 0);
    if (node.kind == PCNode::Kind::P) {
      CHECK(encode_p_quotient(node.quotient, zeros) == std::vector<PTuple>{{0, 0, 0}, {0, 1, 0}, {0, 1, 1}, {0, 2, 0}});
      ++checked;
    } else if (std::count_if(node.nbrs.begin(), node.nbrs.end(), [&](int v) { return !t->is_leaf(v); }) == 2) {
      CHECK(lengths_of(encode_c_quotient(node.quotient, zeros).chosen()) == L{{}, {2, 3}, {}, {2, 3}, {3}});
      ++checked;
    }
  }
  CHECK(checked == 2);
}

TEST_CASE("canonical codes: basic separation") {
  auto star = [](int k) {
    std::vector<RowArc> rows;
    for (int i = 0; i < k; ++i) rows.push_back(RowArc::arc(i, i));
    return succinct_canonical_code(SuccinctCircMatrix(6, rows));
  };
  CHECK(star(4) == star(4));
  CHECK(star(4) != star(3));
  CHECK(star(6).str().find(' ') != std::string::npos);
}

TEST_CASE("canonical codes are invariant under permitted rearrangements") {
  gen::Rng rng(47);
  int c_seen = 0, p_seen = 0;
  for (int iter = 0; iter < 800; ++iter) {
    const int cols = gen::uniform(rng, 3, 12);
    const auto s = gen::random_succinct(rng, gen::uniform(rng, 0, 12), cols);
    const auto m = expand(s);
    const auto code = succinct_canonical_code(s);
    REQUIRE(matrix_canonical_code(m) == code);
    REQUIRE(matrix_canonical_code(gen::shuffle_rows(rng, m)) == code);
    REQUIRE(matrix_canonical_code(gen::scramble(rng, m).matrix) == code);

    std::vector<int> rot(cols), rev(cols);
    const int r = gen::uniform(rng, 0, cols - 1);
    for (int c = 0; c < cols; ++c) {
      rot[c] = (c + r) % cols;
      rev[c] = cols - 1 - c;
    }
    REQUIRE(matrix_canonical_code(reorder_columns(m, rot)) == code);
    REQUIRE(matrix_canonical_code(reorder_columns(m, rev)) == code);

    auto t = build_pc(s);
    const auto tree_code = canonical_code(t);
    for (int u = t.n_cols; u < t.n_nodes(); ++u) {
      auto t2 = t;
      if (t.nodes[u].kind == PCNode::Kind::C) {
        reverse_node(t2, u);
        ++c_seen;
      } else {
        permute_p_node(t2, u, gen::random_permutation(rng, t.nodes[u].degree()));
        ++p_seen;
      }
      REQUIRE(canonical_code(t2) == tree_code);
    }
  }
  CHECK(c_seen > 100);
  CHECK(p_seen > 100);
}

TEST_CASE("complementing a row keeps the tree shape code") {
  gen::Rng rng(53);
  for (int iter = 0; iter < 500; ++iter) {
    const int cols = gen::uniform(rng, 3, 10);
    auto s = gen::random_succinct(rng, gen::uniform(rng, 1, 10), cols);
    auto s2 = s;
    const int i = gen::uniform(rng, 0, s.n_rows - 1);
    s2.rows[i] = complement_row_succinct(s.rows[i], cols);
    REQUIRE(tree_shape_code(build_pc(s)) == tree_shape_code(build_pc(s2)));
  }
}

TEST_CASE("matrix_iso small examples") {
  SparseBinaryMatrix bad1(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}});
  SparseBinaryMatrix bad2(4, {{0, 2}, {1, 2}, {2, 3}, {0, 1}});
  CHECK(matrix_iso(bad1, bad2).verdict == MatrixVerdict::NeitherCircularOnes);

  SparseBinaryMatrix cyc(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  CHECK(matrix_iso(cyc, bad1).verdict == MatrixVerdict::NotIsomorphic);

  const auto same = matrix_iso(cyc, cyc);
  REQUIRE(same.verdict == MatrixVerdict::Isomorphic);
  REQUIRE(same.certificate);
  CHECK(matrices_equal_under(cyc, cyc, *same.certificate));

  SparseBinaryMatrix extra(4, {{0, 1, 2}, {1, 2}, {2, 3}, {0, 3}});
  CHECK(matrix_iso(cyc, extra).verdict == MatrixVerdict::NotIsomorphic);

  SparseBinaryMatrix two_a(2, {{0}, {0}, {1}, {}});
  SparseBinaryMatrix two_b(2, {{1}, {}, {0}, {1}});
  const auto deg = matrix_iso(two_a, two_b);
  REQUIRE(deg.verdict == MatrixVerdict::Isomorphic);
  CHECK(deg.certificate->col_perm == std::vector<int>{1, 0});
  CHECK(matrix_iso(two_a, SparseBinaryMatrix(2, {{1}, {0}, {0, 1}, {}})).verdict == MatrixVerdict::NotIsomorphic);
  CHECK(matrix_iso(SparseBinaryMatrix(0, {{}, {}}), SparseBinaryMatrix(0, {{}, {}})).verdict ==
        MatrixVerdict::Isomorphic);
}

TEST_CASE("matrix_iso agrees with the brute-force oracles") {
  gen::Rng rng(59);
  int iso = 0;
  for (int iter = 0; iter < 3000; ++iter) {
    const int cols = gen::uniform(rng, 0, 6);
    const int rows = gen::uniform(rng, 0, 6);
    SparseBinaryMatrix m1, m2;
    switch (iter % 3) {
      case 0:
        m1 = gen::random_matrix(rng, rows, cols);
        m2 = gen::random_matrix(rng, rows, cols);
        break;
      case 1:
        m1 = gen::random_circular(rng, rows, cols);
        m2 = gen::scramble(rng, m1).matrix;
        if (rows > 0 && cols > 0 && gen::uniform(rng, 0, 1)) {
          auto& r = m2.rows[gen::uniform(rng, 0, rows - 1)];
          const int c = gen::uniform(rng, 0, cols - 1);
          if (std::binary_search(r.begin(), r.end(), c))
            r.erase(std::lower_bound(r.begin(), r.end(), c));
          else
            r.insert(std::lower_bound(r.begin(), r.end(), c), c);
        }
        break;
      default:
        m1 = gen::random_circular(rng, rows, cols);
        m2 = gen::random_circular(rng, rows, cols);
    }
    const auto res = matrix_iso(m1, m2);
    const bool c1 = oracle::brute_circular_ones(m1);
    const bool c2 = oracle::brute_circular_ones(m2);
    MatrixVerdict expect = MatrixVerdict::NotIsomorphic;
    if (!c1 && !c2)
      expect = MatrixVerdict::NeitherCircularOnes;
    else if (c1 && c2 && oracle::brute_matrix_iso(m1, m2))
      expect = MatrixVerdict::Isomorphic;
    REQUIRE(res.verdict == expect);
    if (expect == MatrixVerdict::Isomorphic) {
      ++iso;
      REQUIRE(res.certificate);
      REQUIRE(matrices_equal_under(m1, m2, *res.certificate));
    }
  }
  CHECK(iso > 500);
}

TEST_CASE("succinct_iso on larger scrambled copies") {
  gen::Rng rng(61);
  for (int iter = 0; iter < 200; ++iter) {
    const int cols = gen::uniform(rng, 3, 60);
    const auto s = gen::random_succinct(rng, gen::uniform(rng, 1, 80), cols, gen::uniform(rng, 1, cols));
    const auto m = expand(s);
    const auto sc = gen::scramble(rng, m);
    const auto res = matrix_iso(m, sc.matrix);
    REQUIRE(res.verdict == MatrixVerdict::Isomorphic);
    REQUIRE(matrices_equal_under(m, sc.matrix, *res.certificate));

    // Rotating the stored order keeps the matrix succinct.
    std::vector<RowArc> rows;
    const int r = gen::uniform(rng, 1, cols - 1);
    for (const auto& a : s.rows)
      rows.push_back(a.is_arc() ? RowArc::arc((a.first + r) % cols, (a.last + r) % cols) : a);
    const SuccinctCircMatrix rotated(cols, rows);
    REQUIRE(succinct_iso(s, rotated).verdict == MatrixVerdict::Isomorphic);
  }
}
