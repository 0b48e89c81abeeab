"""Exact local diagonalization and blowup checks for two-term complexes."""

from .exactpoly import MonIdeal, Monomial, Poly, parse_poly, render
from .twocomplex import DiagonalForm, TwoTermComplex, determinantal_ideals, is_locally_diagonalizable
from .blowup import BlowupTree, Chart, derived_resolution, principalize
from .modgraph import build_structural_matrix, classify_singularity, validate_graph, vz_pipeline

__version__ = "0.1.0"
