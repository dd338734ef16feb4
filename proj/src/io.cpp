#include "circiso/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "circiso/errors.hpp"

namespace circiso {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t j = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > j) out.push_back(line.substr(j, i - j));
  }
  return out;
}

class Reader {
 public:
  explicit Reader(std::string_view text) {
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      lines_.push_back(split(text.substr(start, end - start)));
      start = end + 1;
    }
  }

  // Tokens of the next line.
  const std::vector<std::string_view>& line(const char* what) {
    if (next_ >= lines_.size()) fail("unexpected end of input, expected " + std::string(what));
    return lines_[next_++];
  }

  const std::vector<std::string_view>& line(const char* what, std::size_t n_tokens) {
    const auto& t = line(what);
    if (t.size() != n_tokens)
      fail("expected " + std::to_string(n_tokens) + " fields for " + what + ", found " + std::to_string(t.size()));
    return t;
  }

  int integer(std::string_view tok, int lo = 0) const {
    int v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) fail("not an integer: '" + std::string(tok) + "'");
    if (v < lo) fail("value " + std::to_string(v) + " below " + std::to_string(lo));
    return v;
  }

  void finish() {
    while (next_ < lines_.size())
      if (!lines_[next_++].empty()) fail("unexpected trailing content");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(next_) + ": " + msg);
  }

 private:
  std::vector<std::vector<std::string_view>> lines_;
  std::size_t next_ = 0;
};

void expect_tag(Reader& r, std::string_view tag) {
  const auto& t = r.line("tag line", 1);
  if (t[0] != tag) r.fail("expected tag '" + std::string(tag) + "', found '" + std::string(t[0]) + "'");
}

SparseBinaryMatrix sparse_body(Reader& r) {
  const auto& head = r.line("header", 2);
  const int n_rows = r.integer(head[0]);
  const int n_cols = r.integer(head[1]);
  std::vector<std::vector<int>> rows(n_rows);
  for (auto& row : rows) {
    const auto& t = r.line("row");
    if (t.empty()) r.fail("empty row line");
    const int k = r.integer(t[0]);
    if (static_cast<int>(t.size()) != k + 1) r.fail("row announces " + std::to_string(k) + " entries");
    for (int i = 1; i <= k; ++i) {
      const int c = r.integer(t[i]);
      if (c >= n_cols) r.fail("column " + std::to_string(c) + " out of range");
      if (!row.empty() && c <= row.back()) r.fail("columns not strictly increasing");
      row.push_back(c);
    }
  }
  r.finish();
  return SparseBinaryMatrix(n_cols, std::move(rows));
}

SuccinctCircMatrix succinct_body(Reader& r) {
  const auto& head = r.line("header", 2);
  const int n_rows = r.integer(head[0]);
  const int n_cols = r.integer(head[1]);
  std::vector<RowArc> rows;
  rows.reserve(n_rows);
  for (int i = 0; i < n_rows; ++i) {
    const auto& t = r.line("row");
    if (t.size() == 1 && t[0] == "F") rows.push_back(RowArc::full());
    else if (t.size() == 1 && t[0] == "E") rows.push_back(RowArc::empty());
    else if (t.size() == 2) {
      const int f = r.integer(t[0]);
      const int l = r.integer(t[1]);
      if (f >= n_cols || l >= n_cols) r.fail("column out of range");
      if ((l - f + n_cols) % n_cols + 1 == n_cols) r.fail("arc covers every column; use F");
      rows.push_back(RowArc::arc(f, l));
    } else {
      r.fail("expected F, E or 'first last'");
    }
  }
  r.finish();
  return SuccinctCircMatrix(n_cols, std::move(rows));
}

Graph graph_body(Reader& r) {
  const auto& head = r.line("header", 2);
  const int n = r.integer(head[0]);
  const int m = r.integer(head[1]);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (int i = 0; i < m; ++i) {
    const auto& t = r.line("edge", 2);
    const int u = r.integer(t[0]);
    const int v = r.integer(t[1]);
    if (u >= n || v >= n) r.fail("vertex out of range");
    if (u == v) r.fail("self-loop");
    edges.emplace_back(u, v);
  }
  r.finish();
  try {
    return Graph(n, edges);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

CircularArcModel model_body(Reader& r) {
  const auto& head = r.line("header", 1);
  const int n = r.integer(head[0]);
  std::vector<Endpoint> eps;
  eps.reserve(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < 2 * n; ++i) {
    const auto& t = r.line("endpoint", 2);
    const int arc = r.integer(t[0]);
    if (arc >= n) r.fail("arc id out of range");
    if (t[1] == "ccw") eps.push_back({arc, Endpoint::Side::Ccw});
    else if (t[1] == "cw") eps.push_back({arc, Endpoint::Side::Cw});
    else r.fail("expected ccw or cw");
  }
  r.finish();
  try {
    return CircularArcModel(n, std::move(eps));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

const char* input_tag(const Input& in) {
  static const char* const tags[] = {"sparse", "succinct", "graph", "model"};
  return tags[in.index()];
}

Input parse_input(std::string_view text) {
  Reader r(text);
  const auto& t = r.line("tag line", 1);
  if (t[0] == "sparse") return sparse_body(r);
  if (t[0] == "succinct") return succinct_body(r);
  if (t[0] == "graph") return graph_body(r);
  if (t[0] == "model") return model_body(r);
  r.fail("unknown tag '" + std::string(t[0]) + "'");
}

SparseBinaryMatrix parse_sparse(std::string_view text) {
  Reader r(text);
  expect_tag(r, "sparse");
  return sparse_body(r);
}

SuccinctCircMatrix parse_succinct(std::string_view text) {
  Reader r(text);
  expect_tag(r, "succinct");
  return succinct_body(r);
}

Graph parse_graph(std::string_view text) {
  Reader r(text);
  expect_tag(r, "graph");
  return graph_body(r);
}

CircularArcModel parse_model(std::string_view text) {
  Reader r(text);
  expect_tag(r, "model");
  return model_body(r);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_sparse(const SparseBinaryMatrix& m) {
  std::ostringstream out;
  out << "sparse\n" << m.n_rows << ' ' << m.n_cols << '\n';
  for (const auto& row : m.rows) {
    out << row.size();
    for (int c : row) out << ' ' << c;
    out << '\n';
  }
  return out.str();
}

std::string format_succinct(const SuccinctCircMatrix& s) {
  std::ostringstream out;
  out << "succinct\n" << s.n_rows << ' ' << s.n_cols << '\n';
  for (const auto& r : s.rows) {
    switch (r.kind) {
      case RowArc::Kind::Full: out << "F\n"; break;
      case RowArc::Kind::Empty: out << "E\n"; break;
      case RowArc::Kind::Arc: out << r.first << ' ' << r.last << '\n'; break;
    }
  }
  return out.str();
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << "graph\n" << g.n << ' ' << g.m() << '\n';
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u])
      if (u < v) out << u << ' ' << v << '\n';
  return out.str();
}

std::string format_model(const CircularArcModel& a) {
  std::ostringstream out;
  out << "model\n" << a.n_arcs << '\n';
  for (const auto& e : a.endpoints) out << e.arc << (e.side == Endpoint::Side::Ccw ? " ccw\n" : " cw\n");
  return out.str();
}

}  // namespace circiso
