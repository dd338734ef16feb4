#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "circiso/arcmodel.hpp"
#include "circiso/canon.hpp"
#include "circiso/cli.hpp"
#include "circiso/errors.hpp"
#include "circiso/graphiso.hpp"
#include "circiso/io.hpp"
#include "circiso/pctree.hpp"

namespace py = pybind11;
using namespace circiso;

namespace {

const char* verdict_name(MatrixVerdict v) {
  switch (v) {
    case MatrixVerdict::Isomorphic: return "isomorphic";
    case MatrixVerdict::NotIsomorphic: return "not_isomorphic";
    case MatrixVerdict::NeitherCircularOnes: return "not_in_class";
  }
  return "?";
}

const char* verdict_name(GraphVerdict v) {
  switch (v) {
    case GraphVerdict::Isomorphic: return "isomorphic";
    case GraphVerdict::NotIsomorphic: return "not_isomorphic";
    case GraphVerdict::NotInClass: return "not_in_class";
  }
  return "?";
}

CircularArcModel make_model(int n, const std::vector<std::pair<int, std::string>>& eps) {
  std::vector<Endpoint> out;
  for (const auto& [arc, side] : eps) {
    if (side != "ccw" && side != "cw") throw std::invalid_argument("endpoint side must be 'ccw' or 'cw'");
    out.push_back({arc, side == "ccw" ? Endpoint::Side::Ccw : Endpoint::Side::Cw});
  }
  return CircularArcModel(n, std::move(out));
}

RowArc make_row(const py::handle& h) {
  if (py::isinstance<py::str>(h)) {
    const auto s = h.cast<std::string>();
    if (s == "F") return RowArc::full();
    if (s == "E") return RowArc::empty();
    throw std::invalid_argument("succinct row must be 'F', 'E' or (first, last)");
  }
  const auto fl = h.cast<std::pair<int, int>>();
  return RowArc::arc(fl.first, fl.second);
}

py::object row_object(const RowArc& r) {
  if (r.kind == RowArc::Kind::Full) return py::str("F");
  if (r.kind == RowArc::Kind::Empty) return py::str("E");
  return py::make_tuple(r.first, r.last);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Isomorphism of circular-ones matrices and circular-arc graph classes";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<GuardExceeded>(m, "GuardExceeded", PyExc_RuntimeError);
  py::register_exception<CertificateError>(m, "CertificateError", PyExc_RuntimeError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);
  py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);

  py::class_<SparseBinaryMatrix>(m, "SparseMatrix")
      .def(py::init<int, std::vector<std::vector<int>>>(), py::arg("n_cols"), py::arg("rows"))
      .def_readonly("n_rows", &SparseBinaryMatrix::n_rows)
      .def_readonly("n_cols", &SparseBinaryMatrix::n_cols)
      .def_readonly("rows", &SparseBinaryMatrix::rows)
      .def(py::self == py::self)
      .def("__repr__", [](const SparseBinaryMatrix& s) {
        return "<SparseMatrix " + std::to_string(s.n_rows) + "x" + std::to_string(s.n_cols) + ">";
      });

  py::class_<SuccinctCircMatrix>(m, "SuccinctMatrix")
      .def(py::init([](int n_cols, const py::list& rows) {
             std::vector<RowArc> out;
             for (const auto& h : rows) out.push_back(make_row(h));
             return SuccinctCircMatrix(n_cols, std::move(out));
           }),
           py::arg("n_cols"), py::arg("rows"))
      .def_readonly("n_rows", &SuccinctCircMatrix::n_rows)
      .def_readonly("n_cols", &SuccinctCircMatrix::n_cols)
      .def_property_readonly("rows",
                             [](const SuccinctCircMatrix& s) {
                               py::list out;
                               for (const auto& r : s.rows) out.append(row_object(r));
                               return out;
                             })
      .def("expand", &expand);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) { return Graph(n, edges); }),
           py::arg("n"), py::arg("edges"))
      .def_readonly("n", &Graph::n)
      .def_property_readonly("m", &Graph::m)
      .def_readonly("adj", &Graph::adj)
      .def("adjacent", &Graph::adjacent)
      .def(py::self == py::self);

  py::class_<CircularArcModel>(m, "ArcModel")
      .def(py::init(&make_model), py::arg("n"), py::arg("endpoints"))
      .def_readonly("n_arcs", &CircularArcModel::n_arcs)
      .def_property_readonly("endpoints",
                             [](const CircularArcModel& a) {
                               py::list out;
                               for (const auto& e : a.endpoints)
                                 out.append(py::make_tuple(e.arc, e.side == Endpoint::Side::Ccw ? "ccw" : "cw"));
                               return out;
                             })
      .def("intersects", &CircularArcModel::intersects);

  py::class_<MatrixIsoCertificate>(m, "MatrixCertificate")
      .def_readonly("col_perm", &MatrixIsoCertificate::col_perm)
      .def_readonly("row_perm", &MatrixIsoCertificate::row_perm);

  py::class_<MatrixIsoResult>(m, "MatrixIsoResult")
      .def_property_readonly("verdict", [](const MatrixIsoResult& r) { return verdict_name(r.verdict); })
      .def_readonly("certificate", &MatrixIsoResult::certificate);

  py::class_<GraphIsoResult>(m, "GraphIsoResult")
      .def_property_readonly("verdict", [](const GraphIsoResult& r) { return verdict_name(r.verdict); })
      .def_property_readonly("graph_class", [](const GraphIsoResult& r) { return class_name(r.cls); })
      .def_readonly("vertex_map", &GraphIsoResult::vertex_map)
      .def_readonly("matrix_certificate", &GraphIsoResult::matrix_certificate)
      .def_readonly("note", &GraphIsoResult::note);

  m.def("matrix_iso", &matrix_iso, py::arg("m1"), py::arg("m2"));
  m.def("succinct_iso", &succinct_iso, py::arg("s1"), py::arg("s2"));
  m.def("matrices_equal_under", &matrices_equal_under, py::arg("m1"), py::arg("m2"), py::arg("certificate"));
  m.def(
      "canonical_code",
      [](const SparseBinaryMatrix& mat) -> std::optional<std::vector<int>> {
        auto c = matrix_canonical_code(mat);
        if (!c) return std::nullopt;
        return c->code;
      },
      py::arg("m"), "Canonical code of a circular-ones matrix, or None.");
  m.def(
      "circular_ones_order",
      [](const SparseBinaryMatrix& mat) -> std::optional<std::vector<int>> {
        auto t = build_pc(mat);
        if (!t) return std::nullopt;
        return t->column_label;
      },
      py::arg("m"), "A column order with circular ones, or None.");
  m.def(
      "dump_tree",
      [](const SparseBinaryMatrix& mat) -> std::optional<std::string> {
        auto t = build_pc(mat);
        if (!t) return std::nullopt;
        return dump_tree(*t);
      },
      py::arg("m"));

  m.def("intersection_graph", &intersection_graph, py::arg("model"));
  m.def("verify_helly", &verify_helly, py::arg("model"), py::arg("guard") = 20);
  m.def("is_proper", &is_proper, py::arg("model"));
  m.def(
      "clique_matrix", [](const CircularArcModel& a) { return clique_matrix_from_helly(a).matrix; },
      py::arg("model"), "Clique matrix of a Helly model, columns in circle order.");
  m.def("augmented_adjacency", &augmented_adjacency_from_proper, py::arg("model"));

  auto options = [](int guard, bool trust) {
    GraphIsoOptions o;
    o.clique_guard = o.helly_guard = guard;
    o.trust_helly = trust;
    return o;
  };
  m.def(
      "hca_iso_models",
      [options](const CircularArcModel& a, const CircularArcModel& b, int guard, bool trust) {
        return hca_iso_models(a, b, options(guard, trust));
      },
      py::arg("a1"), py::arg("a2"), py::arg("size_guard") = 20, py::arg("trust_helly") = false);
  m.def(
      "hca_iso_graphs",
      [options](const Graph& a, const Graph& b, int guard) { return hca_iso_graphs(a, b, options(guard, false)); },
      py::arg("g1"), py::arg("g2"), py::arg("size_guard") = 20);
  m.def("gamma_iso", &gamma_iso, py::arg("g1"), py::arg("g2"));
  m.def("convex_round_iso", &convex_round_iso, py::arg("g1"), py::arg("g2"));
  m.def("pca_iso_models", &pca_iso_models, py::arg("a1"), py::arg("a2"));

  m.def(
      "parse",
      [](const std::string& text) {
        return std::visit([](auto&& v) -> py::object { return py::cast(v); }, parse_input(text));
      },
      py::arg("text"), "Parse a tagged sparse, succinct, graph or model file.");
  m.def("format_sparse", &format_sparse);
  m.def("format_succinct", &format_succinct);
  m.def("format_graph", &format_graph);
  m.def("format_model", &format_model);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool; returns (exit status, stdout, stderr).");
}
