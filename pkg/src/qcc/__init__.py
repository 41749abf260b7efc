"""Quantum cyclic stabiliser codes over F2 and F4.

Polynomial arithmetic (:mod:`qcc.poly`, :mod:`qcc.gf2k`), cyclotomic
factorisation, symplectic subspaces and generating triples, the 4^m + 1
family, an oracle-driven BCH decoder and a dense Hilbert-space simulator.
"""

from .cyclic_code import CyclicStabiliserCode, GeneratingTriple, exact_distance, validate_triple
from .cyclotomic import bch_distance, cyclotomic_cosets, factor_xn_minus_1
from .errors import QCCError
from .fourm import FourMCode, construct, construct_from_cosets, enumerate_codes
from .poly import BinaryPoly, QuartPoly, parse_poly

__all__ = [
    "BinaryPoly",
    "QuartPoly",
    "parse_poly",
    "factor_xn_minus_1",
    "cyclotomic_cosets",
    "bch_distance",
    "GeneratingTriple",
    "CyclicStabiliserCode",
    "validate_triple",
    "exact_distance",
    "FourMCode",
    "construct",
    "construct_from_cosets",
    "enumerate_codes",
    "QCCError",
]

__version__ = "0.1.0"
