import os
import random
import subprocess

import pytest

import circiso

DATA = os.environ.get("CIRCISO_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "data"))


def read(name):
    with open(os.path.join(DATA, name)) as f:
        return f.read()


def scrambled(m, seed):
    rng = random.Random(seed)
    cols = list(range(m.n_cols))
    rng.shuffle(cols)
    rows = [sorted(cols[c] for c in r) for r in m.rows]
    rng.shuffle(rows)
    return circiso.SparseMatrix(m.n_cols, rows)


def test_matrix_iso_certificate():
    m = circiso.parse(read("running.sparse"))
    other = scrambled(m, 3)
    r = circiso.matrix_iso(m, other)
    assert r.verdict == "isomorphic"
    assert circiso.matrices_equal_under(m, other, r.certificate)
    assert circiso.canonical_code(m) == circiso.canonical_code(other)


def test_three_way_verdicts():
    a = circiso.parse(read("tucker_a.sparse"))
    b = circiso.parse(read("tucker_b.sparse"))
    m = circiso.parse(read("running.sparse"))
    assert circiso.matrix_iso(a, b).verdict == "not_in_class"
    assert circiso.matrix_iso(a, m).verdict == "not_isomorphic"
    assert circiso.canonical_code(a) is None
    assert circiso.circular_ones_order(a) is None
    assert sorted(circiso.circular_ones_order(m)) == list(range(10))


def test_succinct_matrices():
    s = circiso.SuccinctMatrix(5, [(0, 1), (4, 0), "F", "E"])
    assert s.rows == [(0, 1), (4, 0), "F", "E"]
    assert s.expand().rows == [[0, 1], [0, 4], [0, 1, 2, 3, 4], []]
    t = circiso.SuccinctMatrix(5, [(1, 2), "E", (0, 1), "F"])
    assert circiso.succinct_iso(s, t).verdict == "isomorphic"
    with pytest.raises(ValueError):
        circiso.SuccinctMatrix(5, ["X"])


def test_graph_classes():
    c5 = circiso.Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    p = [3, 0, 4, 1, 2]
    other = circiso.Graph(5, [(p[i], p[(i + 1) % 5]) for i in range(5)])
    for fn in (circiso.gamma_iso, circiso.convex_round_iso, circiso.hca_iso_graphs):
        r = fn(c5, other)
        assert r.verdict == "isomorphic"
    r = circiso.gamma_iso(c5, other)
    assert r.vertex_map is not None
    assert all(other.adjacent(r.vertex_map[u], r.vertex_map[v]) for u in range(5) for v in c5.adj[u])


def test_models():
    net = circiso.parse(read("net_a.model"))
    assert isinstance(net, circiso.ArcModel)
    assert not circiso.verify_helly(net)
    assert circiso.hca_iso_models(net, net).verdict == "not_in_class"
    sun = circiso.parse(read("sun.model"))
    assert circiso.hca_iso_models(sun, sun).verdict == "isomorphic"
    c7 = circiso.parse(read("c7.model"))
    c7b = circiso.parse(read("c7_relabelled.model"))
    assert circiso.is_proper(c7)
    r = circiso.pca_iso_models(c7, c7b)
    assert r.verdict == "isomorphic" and r.graph_class == "pca"
    assert circiso.augmented_adjacency(c7).n_rows == 7
    with pytest.raises(circiso.GuardExceeded):
        circiso.hca_iso_models(sun, sun, size_guard=3)


def test_clique_matrix_of_helly_model():
    a = circiso.ArcModel(3, [(0, "ccw"), (1, "ccw"), (2, "ccw"), (0, "cw"), (1, "cw"), (2, "cw")])
    assert circiso.clique_matrix(a).rows == ["F", "F", "F"]
    assert circiso.intersection_graph(a).m == 3


def test_parse_errors():
    with pytest.raises(circiso.ParseError):
        circiso.parse("sparse\n1 2\n1 5\n")
    with pytest.raises(ValueError):
        circiso.parse("matrix\n")


def test_round_trip_formats():
    m = circiso.parse(read("running.sparse"))
    assert circiso.parse(circiso.format_sparse(m)) == m
    g = circiso.parse(read("c5_a.graph"))
    assert circiso.parse(circiso.format_graph(g)) == g


def test_run_cli():
    code, out, err = circiso.run_cli(["canonical", os.path.join(DATA, "running.sparse")])
    assert code == 0 and len(out.splitlines()) == 1
    code, out, _ = circiso.run_cli(["matrix-iso", os.path.join(DATA, "tucker_a.sparse"), os.path.join(DATA, "tucker_b.sparse")])
    assert (code, out) == (2, "NOT_IN_CLASS\n")


@pytest.mark.skipif("CIRCISO_TOOL" not in os.environ, reason="tool path not given")
def test_tool_exit_codes():
    tool = os.environ["CIRCISO_TOOL"]
    def run(*args):
        return subprocess.run([tool, *args], capture_output=True, text=True)
    p = run("matrix-iso", os.path.join(DATA, "running.sparse"), os.path.join(DATA, "running_scrambled.sparse"), "--emit-certificate")
    assert p.returncode == 0 and p.stdout.startswith("ISOMORPHIC\ncols: ")
    assert run("matrix-iso", os.path.join(DATA, "running.sparse"), os.path.join(DATA, "running_altered.sparse")).returncode == 1
    assert run("class-iso", "hca", os.path.join(DATA, "net_a.model"), os.path.join(DATA, "net_b.model")).returncode == 2
    assert run("canonical", os.path.join(DATA, "bad_row.sparse")).returncode == 64
    assert run("class-iso", "hca", os.path.join(DATA, "sun.model"), os.path.join(DATA, "sun.model"), "--size-guard", "3").returncode == 65
