"""Exact knot-group invariants: Fox calculus, Alexander and twisted Alexander
polynomials, Reidemeister torsion, and SL(2, F_p) representation search."""

from .fields import GF, QQ, CoeffField
from .freegroup import GroupRingElement, Word
from .laurent import LaurentPoly, RationalExpr
from .presentation import (Presentation, PresentationError, SemanticError,
                           load_presentation, parse_presentation)
from .representation import Representation, enum_sl2_reps
from .alexander import alexander_polynomial
from .twisted import twisted_alexander
from .torsion import ChainComplex, torsion

__all__ = [
    "GF", "QQ", "CoeffField", "GroupRingElement", "Word", "LaurentPoly", "RationalExpr",
    "Presentation", "PresentationError", "SemanticError", "load_presentation",
    "parse_presentation", "Representation", "enum_sl2_reps", "alexander_polynomial",
    "twisted_alexander", "ChainComplex", "torsion",
]

__version__ = "0.1.0"
