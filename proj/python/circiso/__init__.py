"""Isomorphism of circular-ones matrices and circular-arc graph classes."""

from ._core import (
    ArcModel,
    CertificateError,
    Graph,
    GraphIsoResult,
    GuardExceeded,
    InvariantError,
    MatrixCertificate,
    MatrixIsoResult,
    ModelError,
    ParseError,
    SparseMatrix,
    SuccinctMatrix,
    augmented_adjacency,
    canonical_code,
    circular_ones_order,
    clique_matrix,
    convex_round_iso,
    dump_tree,
    format_graph,
    format_model,
    format_sparse,
    format_succinct,
    gamma_iso,
    hca_iso_graphs,
    hca_iso_models,
    intersection_graph,
    is_proper,
    matrices_equal_under,
    matrix_iso,
    parse,
    pca_iso_models,
    run_cli,
    succinct_iso,
    verify_helly,
)

__all__ = [name for name in dir() if not name.startswith("_")]
