"""Lexicographically first colorings, the reductions behind them, and checks."""

from .coloring import (CapExceeded, LfColorResult, SatColoringOracle, enumerate_legal_colorings,
                       is_k_colorable, is_legal_coloring, lf_coloring, list_coloring)
from .gadgets import GadgetReport, GadgetSpec, load_gadget, verify_gadget
from .model import (Coloring, NoEmbeddingError, OrderedGraph, PolynomialBound, UsageError, lex_compare,
                    sentinel, shortlex_compare, trace_faces, verify_embedding)
from .reductions import pipeline_t, rho4, rho_k, sigma
from .report import ExperimentReport
from .satlex import CnfFormula, decide_odd_min_sat, lf_sat_assignment, parse_dimacs

__all__ = [
    "CapExceeded", "CnfFormula", "Coloring", "ExperimentReport", "GadgetReport", "GadgetSpec",
    "LfColorResult", "NoEmbeddingError", "OrderedGraph", "PolynomialBound", "SatColoringOracle",
    "UsageError", "decide_odd_min_sat", "enumerate_legal_colorings", "is_k_colorable",
    "is_legal_coloring", "lex_compare", "lf_coloring", "lf_sat_assignment", "list_coloring",
    "load_gadget", "parse_dimacs", "pipeline_t", "rho4", "rho_k", "sentinel", "shortlex_compare",
    "sigma", "trace_faces", "verify_embedding", "verify_gadget",
]
