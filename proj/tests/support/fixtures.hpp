#pragma once

#include <vector>

#include "circiso/arcmodel.hpp"
#include "circiso/binmat.hpp"

namespace fixtures {

// A 14 x 10 circular-ones matrix consistent with every property stated for
// the running example: neighbour sets {1},{2},{3},{4..10} at the P node a,
// {1,2,3},{4},{5},{6},{7..10} at the C node c, {1..6},{7},{8},{9},{10} at the
// C node b; rows 1-5 project to a, 6-9 to b, 10-14 to c; {1,2,10} strongly
// overlaps exactly rows 2, 4, 8, 10, 11, 14. Columns and rows are 1-based in
// that description and 0-based here.
inline circiso::SparseBinaryMatrix running_example() {
  auto cols = [](std::vector<int> one_based) {
    for (int& c : one_based) --c;
    return one_based;
  };
  return circiso::SparseBinaryMatrix(10, {
      cols({1}),                              // 1: only neighbour 1 at a
      cols({1, 2, 3}),                        // 2: excludes only c at a
      cols({1, 2, 4, 5, 6, 7, 8, 9, 10}),     // 3: excludes only 3 at a
      cols({1, 2, 3}),                        // 4: excludes only c at a
      cols({2, 3, 4, 5, 6, 7, 8, 9, 10}),     // 5: excludes only 1 at a
      cols({7, 8}),                           // 6
      cols({8, 9}),                           // 7
      cols({9, 10}),                          // 8
      cols({1, 2, 3, 4, 5, 6, 10}),           // 9
      cols({1, 2, 3, 4, 5}),                  // 10: a..5 at c
      cols({1, 2, 3, 4}),                     // 11: a..4 at c
      cols({4, 5, 6}),                        // 12: 4..6 at c
      cols({1, 2, 3, 6, 7, 8, 9, 10}),        // 13: 6..a at c
      cols({6, 7, 8, 9, 10}),                 // 14: 6..b at c
  });
}

// Endpoints written as arc ids, negative (~id) for the clockwise end.
inline circiso::CircularArcModel model(int n, std::vector<int> seq) {
  std::vector<circiso::Endpoint> eps;
  for (int x : seq)
    eps.push_back(x >= 0 ? circiso::Endpoint{x, circiso::Endpoint::Side::Ccw}
                         : circiso::Endpoint{~x, circiso::Endpoint::Side::Cw});
  return circiso::CircularArcModel(n, std::move(eps));
}

// Long arcs A=0, B=1, C=2 pairwise overlapping with no common point; D=3,
// E=4, F=5 sit inside the overlaps A∩B, B∩C, C∩A.
inline circiso::CircularArcModel non_helly_model() {
  return model(6, {0, 5, ~5, ~2, 1, 3, ~3, ~0, 2, 4, ~4, ~1});
}

// Three segments: the ones at gaps 1 and 7 meet arcs {0,1,3}, the one at
// gap 4 meets all four.
inline circiso::CircularArcModel nested_segments_model() {
  return model(4, {~1, 1, ~3, 2, 3, ~2, ~0, 0});
}

// Proper model of K4 in which arcs 0 and 1 cover the circle and each
// retraction nests one arc inside another.
inline circiso::CircularArcModel blocked_cover_model() {
  return model(4, {1, ~3, ~0, 3, 0, ~2, ~1, 2});
}

// A model of the net (a triangle with a pendant vertex at each corner), which
// has no Helly model.
inline circiso::CircularArcModel non_hca_model() {
  return model(6, {~0, 3, ~3, 5, ~4, 2, ~2, 0, ~5, 1, ~1, 4});
}

}  // namespace fixtures
