"""Exact-arithmetic toolkit for strongly regular graphs.

Quadratic-field numbers, graph6 I/O, SRG parameter algebra, exact spectral
certificates, clique and coloring solvers, homomorphism search and the
A/B/C/X type classification.
"""

from .classify import SrgType, batch_classify, classify_type, hasse_dot
from .exactnum import QuadNum, format_exact, quad_arith, quad_make, quad_parse, quad_sign
from .fixtures import fixture
from .graphs import Graph, complement, encode_graph6, parse_graph6, verify_srg
from .hom_engine import Hom, HomKind, classify_hom, find_homs, hull, is_core, verify_main_theorem
from .solvers import Budget, chromatic_number, enumerate_hoffman_colorings, max_clique, max_coclique
from .spectral_certs import (
    alphabeta_check,
    check_product_lemma,
    check_projector_identities,
    cosine_matrix,
    hom_matrix,
    ratio_witness,
    theta_witnesses,
)
from .srg_params import SrgParams, check_feasible, complement_params, cosines, hoffman_bound, ratio_bound, spectrum

__version__ = "0.1.0"

__all__ = [
    "Budget", "Graph", "Hom", "HomKind", "QuadNum", "SrgParams", "SrgType",
    "alphabeta_check", "batch_classify", "check_feasible", "check_product_lemma",
    "check_projector_identities", "chromatic_number", "classify_hom", "classify_type",
    "complement", "complement_params", "cosine_matrix", "cosines", "encode_graph6",
    "enumerate_hoffman_colorings", "find_homs", "fixture", "format_exact", "hasse_dot",
    "hoffman_bound", "hom_matrix", "hull", "is_core", "max_clique", "max_coclique",
    "parse_graph6", "quad_arith", "quad_make", "quad_parse", "quad_sign", "ratio_bound",
    "ratio_witness", "spectrum", "theta_witnesses", "verify_main_theorem", "verify_srg",
]
