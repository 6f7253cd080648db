"""Exact graph complex GC2[[hbar]] and its action on BV quantum master functions."""

__version__ = "0.1.0"

from .canon import BACKEND
from .config import RunConfig
from .graphs import BasisSpec, CanonicalGraph, Graph, canonicalize, parse_graph
from .operad import GraphVector, bracket
from .complex import HbarGraphVector, cohomology_dims, differential_d, differential_delta, differential_dhbar
from .lift import find_degree0_cocycles, lift
from .superpoly import DarbouxSpace, SuperPolynomial, Truncation, bv_laplacian, odd_bracket, qme_residual
from .bv import ce_differential, flow, linearized_qme_check, phi, seeded_master_function, xi

__all__ = [
    "BACKEND",
    "BasisSpec",
    "CanonicalGraph",
    "DarbouxSpace",
    "Graph",
    "GraphVector",
    "HbarGraphVector",
    "RunConfig",
    "SuperPolynomial",
    "Truncation",
    "bracket",
    "bv_laplacian",
    "canonicalize",
    "ce_differential",
    "cohomology_dims",
    "differential_d",
    "differential_delta",
    "differential_dhbar",
    "find_degree0_cocycles",
    "flow",
    "lift",
    "linearized_qme_check",
    "odd_bracket",
    "parse_graph",
    "phi",
    "qme_residual",
    "seeded_master_function",
    "xi",
]
