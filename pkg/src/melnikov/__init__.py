"""Exact normal-form blocks of colored marked graphs and their certificates.

Modules:

* ``multipoly``: sparse integer polynomials with half-integer exponents;
* ``group``: the group Z^m x| Z/2, edge sets and complete marked graphs;
* ``nfmatrix``: normalized block matrices;
* ``charpoly``: characteristic polynomials and the deletion factorization;
* ``certify``: irreducibility and separation certificates, batch driver;
* ``geometry``: sites, pair sets, the geometric graph and lifting.
"""

__version__ = "0.1.0"

from .multipoly import MPoly, TPoly, Var  # noqa: E402
from .group import Edge, GElem, MarkedGraph, canonicalize, complete_graph, enumerate_edges  # noqa: E402
from .nfmatrix import build_matrix, edge_coeff, linear_form  # noqa: E402
from .charpoly import charpoly, charpoly_one_edge, graph_charpoly  # noqa: E402
from .certify import irreducible, run_suite, separated  # noqa: E402

__all__ = [
    "MPoly", "TPoly", "Var",
    "Edge", "GElem", "MarkedGraph", "canonicalize", "complete_graph", "enumerate_edges",
    "build_matrix", "edge_coeff", "linear_form",
    "charpoly", "charpoly_one_edge", "graph_charpoly",
    "irreducible", "run_suite", "separated",
]
