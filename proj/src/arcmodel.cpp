#include "circiso/arcmodel.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "circiso/errors.hpp"

namespace circiso {

namespace {

int mod(int x, int m) { return ((x % m) + m) % m; }

}  // namespace

CircularArcModel::CircularArcModel(int n, std::vector<Endpoint> eps) : n_arcs(n), endpoints(std::move(eps)) {
  if (n < 0) throw std::invalid_argument("model: negative arc count");
  if (static_cast<int>(endpoints.size()) != 2 * n)
    throw std::invalid_argument("model: expected " + std::to_string(2 * n) + " endpoints");
  ccw_pos.assign(n, -1);
  cw_pos.assign(n, -1);
  for (int p = 0; p < 2 * n; ++p) {
    const Endpoint& e = endpoints[p];
    if (e.arc < 0 || e.arc >= n) throw std::invalid_argument("model: arc id out of range");
    auto& slot = e.side == Endpoint::Side::Ccw ? ccw_pos[e.arc] : cw_pos[e.arc];
    if (slot >= 0) throw std::invalid_argument("model: arc " + std::to_string(e.arc) + " repeats an endpoint");
    slot = p;
  }
}

bool CircularArcModel::contains_gap(int arc, int gap) const {
  const int len = n_gaps();
  return mod(gap - ccw_pos[arc], len) < mod(cw_pos[arc] - ccw_pos[arc], len);
}

int CircularArcModel::span(int arc) const { return mod(cw_pos[arc] - ccw_pos[arc], n_gaps()); }

bool CircularArcModel::intersects(int a, int b) const {
  return a == b || contains_gap(a, ccw_pos[b]) || contains_gap(b, ccw_pos[a]);
}

Graph intersection_graph(const CircularArcModel& a) {
  // Two arcs meet iff one holds the other's ccw endpoint. Sweep once with the
  // set of arcs covering the current gap.
  const int n = a.n_arcs;
  std::vector<int> active;
  std::vector<int> where(n, -1);
  auto add = [&](int i) {
    where[i] = static_cast<int>(active.size());
    active.push_back(i);
  };
  auto remove = [&](int i) {
    const int w = where[i];
    where[active.back()] = w;
    active[w] = active.back();
    active.pop_back();
    where[i] = -1;
  };
  for (int i = 0; i < n; ++i)
    if (a.ccw_pos[i] > a.cw_pos[i]) add(i);
  std::vector<std::pair<int, int>> edges;
  for (const Endpoint& e : a.endpoints) {
    if (e.side == Endpoint::Side::Ccw) {
      for (int j : active)
        if (j != e.arc) edges.emplace_back(std::min(j, e.arc), std::max(j, e.arc));
      if (where[e.arc] < 0) add(e.arc);
    } else {
      remove(e.arc);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(n, edges);
}

std::vector<int> arcs_at(const CircularArcModel& a, int gap) {
  std::vector<int> out;
  for (int i = 0; i < a.n_arcs; ++i)
    if (a.contains_gap(i, gap)) out.push_back(i);
  return out;
}

std::vector<int> intersection_segments(const CircularArcModel& a) {
  std::vector<int> out;
  const int len = a.n_gaps();
  for (int g = 0; g < len; ++g)
    if (a.endpoints[g].side == Endpoint::Side::Ccw && a.endpoints[(g + 1) % len].side == Endpoint::Side::Cw)
      out.push_back(g);
  return out;
}

std::vector<int> sd_plus(const CircularArcModel& a, std::span<const int> points) {
  const int k = static_cast<int>(points.size());
  if (k <= 1) return {points.begin(), points.end()};
  const int len = a.n_gaps();
  const int pk = points[k - 1];
  // Coordinates with the gap after p_k first, so p_k is last.
  auto rel = [&](int g) { return mod(g - pk - 1, len); };
  std::vector<int> r(k);
  for (int i = 0; i < k; ++i) {
    r[i] = rel(points[i]);
    if (i > 0 && r[i] <= r[i - 1]) throw std::invalid_argument("sd_plus: points not in clockwise order");
  }
  // step_of[g]: index i with r[i] <= g < r[i + 1], or -1 before p_1.
  std::vector<int> step_of(len, -1);
  for (int i = 0, g = 0; g < len; ++g) {
    while (i < k && r[i] <= g) ++i;
    step_of[g] = i - 1;
  }

  // B: arcs avoiding p_k, bucketed by the step their last gap falls in;
  // keep the smallest start. A: arcs through p_k, sorted by wrapped end.
  std::vector<int> b_start(k, std::numeric_limits<int>::max());
  std::vector<std::vector<std::pair<int, int>>> a_by_end(len + 1);  // end + 1 -> (start, end)
  for (int i = 0; i < a.n_arcs; ++i) {
    const int s = rel(a.ccw_pos[i]);
    const int e = rel(mod(a.cw_pos[i] - 1, len));
    if (s <= e && e < len - 1) {
      const int st = step_of[e];
      if (st >= 0) b_start[st] = std::min(b_start[st], s);
    } else {
      const int wrap_end = s <= e ? -1 : e;
      a_by_end[wrap_end + 1].emplace_back(s, wrap_end);
    }
  }

  std::vector<int> kept;
  std::vector<int> stack{0};
  std::vector<std::pair<int, int>> a_stack;  // added in increasing end
  int next_end = 0;
  for (int t = 1; t < k; ++t) {
    // B for the step ending at p_t: its arcs end in [r[t-1], r[t]).
    const int s = b_start[t - 1];
    while (!stack.empty() && r[stack.back()] >= s) {
      kept.push_back(stack.back());
      stack.pop_back();
    }
    // A: arcs through p_k missing p_t, farthest clockwise end.
    while (next_end <= r[t]) {
      for (const auto& arc : a_by_end[next_end]) a_stack.push_back(arc);
      ++next_end;
    }
    while (!a_stack.empty() && a_stack.back().first <= r[t]) a_stack.pop_back();
    const int limit = a_stack.empty() ? -1 : a_stack.back().second;
    while (!stack.empty() && r[stack.back()] > limit) stack.pop_back();
    stack.push_back(t);
  }
  kept.insert(kept.end(), stack.begin(), stack.end());
  std::sort(kept.begin(), kept.end());
  std::vector<int> out;
  for (int i : kept) out.push_back(points[i]);
  return out;
}

std::vector<int> sd_minus(const CircularArcModel& a, std::span<const int> points) {
  const int len = a.n_gaps();
  const CircularArcModel m = reflect_model(a);
  std::vector<int> mirrored;
  for (auto it = points.rbegin(); it != points.rend(); ++it) mirrored.push_back(mod(len - 2 - *it, len));
  const auto kept = sd_plus(m, mirrored);
  std::vector<int> out;
  for (auto it = kept.rbegin(); it != kept.rend(); ++it) out.push_back(mod(len - 2 - *it, len));
  return out;
}

std::vector<int> minimal_dominating(const CircularArcModel& a, std::span<const int> points) {
  const auto minus = sd_minus(a, points);
  return sd_plus(a, minus);
}

HellyCliqueMatrix clique_matrix_from_helly(const CircularArcModel& a) {
  HellyCliqueMatrix out;
  const auto segments = intersection_segments(a);
  out.points = minimal_dominating(a, segments);
  const int len = a.n_gaps();
  const int m = static_cast<int>(out.points.size());

  // before[g]: surviving points at gaps < g. next_at[g]: first point index at
  // a gap >= g, cyclically; prev_at[g]: last point index at a gap <= g.
  std::vector<int> before(len + 1, 0);
  std::vector<int> index_at(len, -1);
  for (int c = 0; c < m; ++c) index_at[out.points[c]] = c;
  for (int g = 0; g < len; ++g) before[g + 1] = before[g] + (index_at[g] >= 0);
  std::vector<int> next_at(len, -1), prev_at(len, -1);
  if (m > 0) {
    int nxt = 0;
    for (int g = len - 1; g >= 0; --g) {
      if (index_at[g] >= 0) nxt = index_at[g];
      next_at[g] = nxt;
    }
    int prv = m - 1;
    for (int g = 0; g < len; ++g) {
      if (index_at[g] >= 0) prv = index_at[g];
      prev_at[g] = prv;
    }
  }

  std::vector<RowArc> rows;
  rows.reserve(a.n_arcs);
  for (int i = 0; i < a.n_arcs; ++i) {
    const int s = a.ccw_pos[i];
    const int e = mod(a.cw_pos[i] - 1, len);
    const int count = s <= e ? before[e + 1] - before[s] : (before[len] - before[s]) + before[e + 1];
    if (count == 0)
      rows.push_back(RowArc::empty());
    else if (count == m)
      rows.push_back(RowArc::full());
    else
      rows.push_back(RowArc::arc(next_at[s], prev_at[e]));
  }
  out.matrix = SuccinctCircMatrix(m, std::move(rows));
  return out;
}

bool verify_helly(const CircularArcModel& a, int guard) {
  if (a.n_arcs > guard)
    throw GuardExceeded("Helly verification: " + std::to_string(a.n_arcs) + " arcs exceeds guard " +
                        std::to_string(guard));
  const Graph g = intersection_graph(a);
  std::vector<std::vector<int>> at_points;
  for (int gap : intersection_segments(a)) at_points.push_back(arcs_at(a, gap));
  std::sort(at_points.begin(), at_points.end());
  for (const auto& clique : maximal_cliques(g, guard))
    if (!std::binary_search(at_points.begin(), at_points.end(), clique)) return false;
  return true;
}

namespace {

// Arcs on a line of length 4n: each arc twice, at its ccw position p and p+2n,
// ending at the matching cw position c (p < c < p + 2n).
struct Doubled {
  int len = 0;
  std::vector<int> arc_at;  // ccw arc at a position, or -1
  std::vector<int> end_at;  // its c

  explicit Doubled(const CircularArcModel& a) : len(2 * a.n_gaps()) {
    arc_at.assign(len, -1);
    end_at.assign(len, 0);
    for (int i = 0; i < a.n_arcs; ++i)
      for (int copy = 0; copy < 2; ++copy) {
        const int p = a.ccw_pos[i] + copy * a.n_gaps();
        arc_at[p] = i;
        end_at[p] = p + a.span(i);
      }
  }
};

// Some pair (outer, inner) with inner's arc inside outer's, or (-1, -1).
std::pair<int, int> find_containment(const CircularArcModel& a) {
  const Doubled d(a);
  // suffix minimum of c over positions >= p
  std::vector<int> best(d.len + 1, std::numeric_limits<int>::max());
  std::vector<int> who(d.len + 1, -1);
  for (int p = d.len - 1; p >= 0; --p) {
    best[p] = best[p + 1];
    who[p] = who[p + 1];
    if (d.arc_at[p] >= 0 && d.end_at[p] < best[p]) {
      best[p] = d.end_at[p];
      who[p] = d.arc_at[p];
    }
  }
  for (int i = 0; i < a.n_arcs; ++i) {
    const int p = a.ccw_pos[i];
    const int c = p + a.span(i);
    if (best[p + 1] < c) return {i, who[p + 1]};
  }
  return {-1, -1};
}

// For a proper model: a pair whose union is the circle, or (-1, -1). In a
// proper model ends increase with starts, so the last start inside an arc
// reaches farthest.
std::pair<int, int> find_cover_pair(const CircularArcModel& a) {
  const Doubled d(a);
  std::vector<int> last_start(d.len, -1);
  for (int p = 0, cur = -1; p < d.len; ++p) {
    if (d.arc_at[p] >= 0) cur = p;
    last_start[p] = cur;
  }
  for (int i = 0; i < a.n_arcs; ++i) {
    const int p = a.ccw_pos[i];
    const int c = p + a.span(i);
    const int q = last_start[c - 1];
    if (q > p && d.end_at[q] > p + a.n_gaps()) return {i, d.arc_at[q]};
  }
  return {-1, -1};
}

void require_proper(const CircularArcModel& a) {
  const auto [outer, inner] = find_containment(a);
  if (outer >= 0)
    throw ModelError(ModelError::Kind::NotProper, outer, inner,
                     "arc " + std::to_string(outer) + " contains arc " + std::to_string(inner));
}

}  // namespace

bool is_proper(const CircularArcModel& a) { return find_containment(a).first < 0; }

std::vector<int> proper_vertex_order(const CircularArcModel& a) {
  std::vector<int> order;
  for (const Endpoint& e : a.endpoints)
    if (e.side == Endpoint::Side::Ccw) order.push_back(e.arc);
  return order;
}

SuccinctCircMatrix augmented_adjacency_from_proper(const CircularArcModel& a) {
  require_proper(a);
  const auto [x, y] = find_cover_pair(a);
  if (x >= 0)
    throw ModelError(ModelError::Kind::CoversCircle, x, y,
                     "arcs " + std::to_string(x) + " and " + std::to_string(y) + " cover the circle");
  const int n = a.n_arcs;
  const int len = a.n_gaps();
  const auto order = proper_vertex_order(a);
  std::vector<int> index(n);
  for (int v = 0; v < n; ++v) index[order[v]] = v;

  // last ccw endpoint strictly before each position, first cw endpoint
  // strictly after it; two passes round the circle.
  std::vector<int> ccw_before(len, -1), cw_after(len, -1);
  for (int pass = 0, cur = -1; pass < 2; ++pass)
    for (int p = 0; p < len; ++p) {
      if (pass == 1) ccw_before[p] = cur;
      if (a.endpoints[p].side == Endpoint::Side::Ccw) cur = a.endpoints[p].arc;
    }
  for (int pass = 0, cur = -1; pass < 2; ++pass)
    for (int p = len - 1; p >= 0; --p) {
      if (pass == 1) cw_after[p] = cur;
      if (a.endpoints[p].side == Endpoint::Side::Cw) cur = a.endpoints[p].arc;
    }

  std::vector<RowArc> rows;
  rows.reserve(n);
  for (int v = 0; v < n; ++v) {
    const int arc = order[v];
    const int last = index[ccw_before[a.cw_pos[arc]]];
    const int first = index[cw_after[a.ccw_pos[arc]]];
    const int size = mod(last - first, n) + 1;
    rows.push_back(size == n ? RowArc::full() : RowArc::arc(first, last));
  }
  return SuccinctCircMatrix(n, std::move(rows));
}

namespace {

// Moves arc i's cw endpoint to just before position target.
CircularArcModel retract(const CircularArcModel& a, int i, int target) {
  std::vector<Endpoint> eps;
  eps.reserve(a.endpoints.size());
  const Endpoint moved{i, Endpoint::Side::Cw};
  for (int p = 0; p < a.n_gaps(); ++p) {
    if (p == target) eps.push_back(moved);
    if (a.endpoints[p] != moved) eps.push_back(a.endpoints[p]);
  }
  return CircularArcModel(a.n_arcs, std::move(eps));
}

}  // namespace

CircularArcModel normalize_cover_pairs(const CircularArcModel& a) {
  require_proper(a);
  const Graph g = intersection_graph(a);
  CircularArcModel cur = a;
  for (int rounds = 0; rounds <= a.n_arcs * a.n_arcs + 1; ++rounds) {
    const auto [i, j] = find_cover_pair(cur);
    if (i < 0) return cur;
    bool done = false;
    for (auto [x, y] : {std::pair{i, j}, std::pair{j, i}}) {
      CircularArcModel next = retract(cur, x, cur.ccw_pos[y]);
      if (is_proper(next) && intersection_graph(next) == g) {
        cur = std::move(next);
        done = true;
        break;
      }
    }
    if (!done)
      throw ModelError(ModelError::Kind::NormalizationFailed, i, j,
                       "arcs " + std::to_string(i) + " and " + std::to_string(j) +
                           " cover the circle and neither can be shortened");
  }
  throw ModelError(ModelError::Kind::NormalizationFailed, -1, -1, "cover-pair normalization did not settle");
}

CircularArcModel rotate_model(const CircularArcModel& a, int shift) {
  const int len = a.n_gaps();
  std::vector<Endpoint> eps(len);
  for (int p = 0; p < len; ++p) eps[p] = a.endpoints[mod(p + shift, len)];
  return CircularArcModel(a.n_arcs, std::move(eps));
}

CircularArcModel reflect_model(const CircularArcModel& a) {
  const int len = a.n_gaps();
  std::vector<Endpoint> eps(len);
  for (int p = 0; p < len; ++p) {
    Endpoint e = a.endpoints[len - 1 - p];
    e.side = e.side == Endpoint::Side::Ccw ? Endpoint::Side::Cw : Endpoint::Side::Ccw;
    eps[p] = e;
  }
  return CircularArcModel(a.n_arcs, std::move(eps));
}

CircularArcModel relabel_arcs(const CircularArcModel& a, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != a.n_arcs || !is_permutation_of_iota(perm))
    throw std::invalid_argument("relabel_arcs: not a permutation");
  std::vector<Endpoint> eps = a.endpoints;
  for (auto& e : eps) e.arc = perm[e.arc];
  return CircularArcModel(a.n_arcs, std::move(eps));
}

}  // namespace circiso
