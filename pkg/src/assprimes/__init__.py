"""Associated primes, primary decomposition and their counterexamples.

Exact multivariate polynomial arithmetic over Q and GF(p), Groebner bases,
monomial primary decomposition, valuation-ring and integer backends, and an
executable gallery of the non-noetherian counterexamples.
"""

from .groebner import BudgetExceeded, GroebnerBasis, PolyIdeal, buchberger, eliminate, ideal
from .ideals import (MonomialIdeal, intersect, ideal_quotient, minimal_primes_monomial,
                     parse_ideal, primary_decompose_monomial, radical_monomial, s_component,
                     saturate)
from .modules import FgModule, PrimeSet, ass, ass0, ass1, parse_module
from .poly import GF, GREVLEX, LEX, QQ, Monomial, P, Polynomial, parse_polynomial

__all__ = [
    "BudgetExceeded", "GroebnerBasis", "PolyIdeal", "buchberger", "eliminate", "ideal",
    "MonomialIdeal", "intersect", "ideal_quotient", "minimal_primes_monomial", "parse_ideal",
    "primary_decompose_monomial", "radical_monomial", "s_component", "saturate",
    "FgModule", "PrimeSet", "ass", "ass0", "ass1", "parse_module",
    "GF", "GREVLEX", "LEX", "QQ", "Monomial", "P", "Polynomial", "parse_polynomial",
]
