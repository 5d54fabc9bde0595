"""Layered rectangle contact representations: exact and approximate solvers,
validity checking, and the hardness reduction from planar monotone 3-SAT."""

from .approx import approx_half, approx_ptas
from .dp import solve_decision, solve_exact
from .evaluate import INTEGER, RATIONAL, Representation, evaluate
from .formula import Clause, RectilinearFormula
from .model import LayeredGraph, VertexRef, validate_instance
from .oracle import brute_force
from .reduction import PLANAR_PRUNED, TRIANGULATED, build_frame, compile_formula, witness

__all__ = [
    "Clause",
    "INTEGER",
    "LayeredGraph",
    "PLANAR_PRUNED",
    "RATIONAL",
    "RectilinearFormula",
    "Representation",
    "TRIANGULATED",
    "VertexRef",
    "approx_half",
    "approx_ptas",
    "brute_force",
    "build_frame",
    "compile_formula",
    "evaluate",
    "solve_decision",
    "solve_exact",
    "validate_instance",
    "witness",
]
