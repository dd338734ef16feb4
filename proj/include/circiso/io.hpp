#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "circiso/arcmodel.hpp"
#include "circiso/binmat.hpp"
#include "circiso/graph.hpp"

namespace circiso {

// Every file starts with a tag line: sparse, succinct, graph or model.
//
//   sparse    "n_rows n_cols", then per row "k c1 ... ck", indices increasing
//   succinct  "n_rows n_cols", then per row "F", "E" or "f l"
//   graph     "n m", then m lines "u v"
//   model     "n", then 2n lines "arc ccw|cw" in clockwise order
using Input = std::variant<SparseBinaryMatrix, SuccinctCircMatrix, Graph, CircularArcModel>;

const char* input_tag(const Input& in);

// Throws ParseError with a line number.
Input parse_input(std::string_view text);
SparseBinaryMatrix parse_sparse(std::string_view text);
SuccinctCircMatrix parse_succinct(std::string_view text);
Graph parse_graph(std::string_view text);
CircularArcModel parse_model(std::string_view text);

// Reads a whole file; throws ParseError if it cannot be opened.
std::string read_file(const std::string& path);

std::string format_sparse(const SparseBinaryMatrix& m);
std::string format_succinct(const SuccinctCircMatrix& s);
std::string format_graph(const Graph& g);
std::string format_model(const CircularArcModel& a);

}  // namespace circiso
