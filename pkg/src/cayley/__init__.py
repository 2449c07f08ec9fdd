"""Cayley polynomials: canonical forms, octonion tori and Cayley-Dickson towers."""

from .dickson import CDElement, CDSpec, associator, commutator
from .expr import Expr, Gen, Mul, ParseError, parse, parse_word
from .normalizer import CanonicalElement, evaluate_oracle, normalize_expr, normalize_word
from .rings import BaseRing, LaurentPoly, RationalFunction

__all__ = [
    "BaseRing", "CDElement", "CDSpec", "CanonicalElement", "Expr", "Gen", "LaurentPoly",
    "Mul", "ParseError", "RationalFunction", "associator", "commutator", "evaluate_oracle",
    "normalize_expr", "normalize_word", "parse", "parse_word",
]
