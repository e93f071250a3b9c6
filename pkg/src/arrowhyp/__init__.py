"""Exact double arrow and Sorgenfrey spaces, their interval hyperspaces,
Vietoris neighbourhoods and piecewise-affine homeomorphisms."""
from .errors import DomainError, ParseError
from .hyperspace import (
    ClosedUnion,
    DeltaTuple,
    FiniteSet,
    bridge,
    canonical_rep,
    canonicalize,
    equiv_approx,
    equiv_sim,
    rho_fin,
    varrho,
)
from .homeo import PiecewiseHomeo, compose, evaluate, image_closed_union, inverse
from .order import ARROW, SORGENFREY, ClosedInterval, OpenPiece, OpenSet, Point, Space
from .sequences import ConvergentSeq, build_seq_homeo, build_to_canonical, canonical_seq, verify_seq_map
from .vietoris import box_for_lower, box_for_upper, mem_lower, mem_upper, saturation_check

__all__ = [
    "ARROW", "SORGENFREY", "Space", "Point", "ClosedInterval", "OpenPiece", "OpenSet",
    "ClosedUnion", "DeltaTuple", "FiniteSet", "canonicalize", "varrho", "equiv_approx",
    "canonical_rep", "rho_fin", "equiv_sim", "bridge",
    "mem_lower", "mem_upper", "box_for_lower", "box_for_upper", "saturation_check",
    "PiecewiseHomeo", "compose", "inverse", "evaluate", "image_closed_union",
    "ConvergentSeq", "canonical_seq", "build_to_canonical", "build_seq_homeo", "verify_seq_map",
    "DomainError", "ParseError",
]

__version__ = "0.1.0"
