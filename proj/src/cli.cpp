#include "circiso/cli.hpp"

#include <CLI11.hpp>

#include <optional>
#include <ostream>

#include "circiso/canon.hpp"
#include "circiso/errors.hpp"
#include "circiso/graphiso.hpp"
#include "circiso/io.hpp"
#include "circiso/pctree.hpp"

namespace circiso {

namespace {

struct Flags {
  bool emit_certificate = false;
  bool emit_canonical = false;
  bool dump_tree = false;
  bool trust_helly = false;
  int size_guard = 20;
};

void print_perm(std::ostream& out, const char* name, const std::vector<int>& p) {
  out << name << ':';
  for (int x : p) out << ' ' << x;
  out << '\n';
}

// A matrix input with its tree, when it has one.
struct LoadedMatrix {
  SparseBinaryMatrix matrix;
  std::optional<QuotientPCTree> tree;
};

LoadedMatrix load_matrix(const Input& in, const std::string& path) {
  if (const auto* s = std::get_if<SuccinctCircMatrix>(&in)) return {expand(*s), build_pc(*s)};
  if (const auto* m = std::get_if<SparseBinaryMatrix>(&in)) return {*m, build_pc(*m)};
  throw ParseError(path + ": expected a sparse or succinct matrix, found " + input_tag(in));
}

int cmd_matrix_iso(const std::string& p1, const std::string& p2, const Flags& f, std::ostream& out,
                   std::ostream& err) {
  const Input i1 = parse_input(read_file(p1));
  const Input i2 = parse_input(read_file(p2));
  if (i1.index() != i2.index())
    throw ParseError(std::string("inputs differ in kind: ") + input_tag(i1) + " and " + input_tag(i2));
  const auto a = load_matrix(i1, p1);
  const auto b = load_matrix(i2, p2);

  int code = kExitNotIsomorphic;
  if (!a.tree && !b.tree) {
    out << "NOT_IN_CLASS\n";
    err << "neither matrix has the circular-ones property\n";
    code = kExitNotInClass;
  } else if (!a.tree || !b.tree) {
    out << "NOT_ISOMORPHIC\n";
    err << "only one matrix has the circular-ones property\n";
  } else {
    const auto res = tree_iso(*a.tree, a.matrix, *b.tree, b.matrix);
    if (res.verdict == MatrixVerdict::Isomorphic) {
      if (!res.certificate || !matrices_equal_under(a.matrix, b.matrix, *res.certificate))
        throw CertificateError("matrix certificate failed verification");
      out << "ISOMORPHIC\n";
      if (f.emit_certificate) {
        print_perm(out, "cols", res.certificate->col_perm);
        print_perm(out, "rows", res.certificate->row_perm);
      }
      code = kExitIsomorphic;
    } else {
      out << "NOT_ISOMORPHIC\n";
    }
  }
  if (f.emit_canonical) {
    out << "code1: " << (a.tree ? tree_matrix_code(*a.tree).str() : "-") << '\n';
    out << "code2: " << (b.tree ? tree_matrix_code(*b.tree).str() : "-") << '\n';
  }
  if (f.dump_tree) {
    if (a.tree) out << "tree1:\n" << dump_tree(*a.tree);
    if (b.tree) out << "tree2:\n" << dump_tree(*b.tree);
  }
  return code;
}

GraphIsoResult run_class(const std::string& cls, const Input& i1, const Input& i2, const Flags& f) {
  GraphIsoOptions opt;
  opt.clique_guard = f.size_guard;
  opt.helly_guard = f.size_guard;
  opt.trust_helly = f.trust_helly;
  const auto* m1 = std::get_if<CircularArcModel>(&i1);
  const auto* m2 = std::get_if<CircularArcModel>(&i2);
  const auto* g1 = std::get_if<Graph>(&i1);
  const auto* g2 = std::get_if<Graph>(&i2);

  if (cls == "pca") {
    if (!m1 || !m2) throw ParseError("pca expects two model files");
    return pca_iso_models(*m1, *m2);
  }
  if (cls == "hca") {
    if ((!m1 && !g1) || (!m2 && !g2)) throw ParseError("hca expects graph or model files");
    if (m1 && m2) return hca_iso_models(*m1, *m2, opt);
    return hca_iso_graphs(g1 ? *g1 : intersection_graph(*m1), g2 ? *g2 : intersection_graph(*m2), opt);
  }
  if (!g1 || !g2) throw ParseError(cls + " expects two graph files");
  return cls == "gamma" ? gamma_iso(*g1, *g2) : convex_round_iso(*g1, *g2);
}

int cmd_class_iso(const std::string& cls, const std::string& p1, const std::string& p2, const Flags& f,
                  std::ostream& out, std::ostream& err) {
  const Input i1 = parse_input(read_file(p1));
  const Input i2 = parse_input(read_file(p2));
  const auto r = run_class(cls, i1, i2, f);
  if (!r.note.empty() && r.note != "matrix-certificate-only") err << "note: " << r.note << '\n';
  switch (r.verdict) {
    case GraphVerdict::NotInClass:
      out << "NOT_IN_CLASS\n";
      return kExitNotInClass;
    case GraphVerdict::NotIsomorphic:
      out << "NOT_ISOMORPHIC\n";
      return kExitNotIsomorphic;
    case GraphVerdict::Isomorphic:
      break;
  }
  if (r.vertex_map) {
    const Graph h1 = std::holds_alternative<Graph>(i1) ? std::get<Graph>(i1)
                                                        : intersection_graph(std::get<CircularArcModel>(i1));
    const Graph h2 = std::holds_alternative<Graph>(i2) ? std::get<Graph>(i2)
                                                        : intersection_graph(std::get<CircularArcModel>(i2));
    if (!is_isomorphism(h1, h2, *r.vertex_map)) throw CertificateError("vertex map failed verification");
  } else if (!r.matrix_certificate) {
    throw CertificateError("isomorphic verdict without a certificate");
  }
  out << "ISOMORPHIC\n";
  if (f.emit_certificate) {
    if (r.vertex_map) {
      out << "map:";
      for (std::size_t v = 0; v < r.vertex_map->size(); ++v) out << ' ' << v << "→" << (*r.vertex_map)[v];
      out << '\n';
    } else {
      out << "matrix-certificate-only\n";
    }
  }
  return kExitIsomorphic;
}

int cmd_canonical(const std::string& path, const Flags& f, std::ostream& out, std::ostream& err) {
  const Input in = parse_input(read_file(path));
  const auto a = load_matrix(in, path);
  if (!a.tree) {
    out << "NOT_IN_CLASS\n";
    err << "matrix does not have the circular-ones property\n";
    return kExitNotInClass;
  }
  out << tree_matrix_code(*a.tree).str() << '\n';
  if (f.dump_tree) out << dump_tree(*a.tree);
  return kExitIsomorphic;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Isomorphism of circular-ones matrices and circular-arc graph classes", "circiso"};
  app.require_subcommand(1);
  Flags f;
  std::string a, b, cls;

  auto* mi = app.add_subcommand("matrix-iso", "Compare two sparse or succinct matrices");
  mi->add_option("A", a)->required();
  mi->add_option("B", b)->required();
  mi->add_flag("--emit-certificate", f.emit_certificate, "Print the column and row maps");
  mi->add_flag("--emit-canonical", f.emit_canonical, "Print both canonical codes");
  mi->add_flag("--dump-tree", f.dump_tree, "Print both PC trees");

  auto* ci = app.add_subcommand("class-iso", "Compare two graphs or models within a class");
  ci->add_option("class", cls)->required()->check(CLI::IsMember({"hca", "gamma", "convex-round", "pca"}));
  ci->add_option("A", a)->required();
  ci->add_option("B", b)->required();
  ci->add_flag("--emit-certificate", f.emit_certificate, "Print the vertex map");
  ci->add_flag("--trust-helly", f.trust_helly, "Skip the Helly check on models");
  ci->add_option("--size-guard", f.size_guard, "Largest input for exhaustive checks")->check(CLI::PositiveNumber);

  auto* cc = app.add_subcommand("canonical", "Print the canonical code of a circular-ones matrix");
  cc->add_option("A", a)->required();
  cc->add_flag("--dump-tree", f.dump_tree, "Print the PC tree");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*mi) return cmd_matrix_iso(a, b, f, out, err);
    if (*ci) return cmd_class_iso(cls, a, b, f, out, err);
    return cmd_canonical(a, f, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const GuardExceeded& e) {
    err << "size guard: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace circiso
