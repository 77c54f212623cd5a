"""Reidemeister torsion of based chain complexes over F(t)."""

import random
from dataclasses import dataclass
from typing import Dict, List, Optional

from .fields import CoeffField
from .laurent import LaurentPoly, RationalExpr
from .linalg import gauss_det, gauss_rank, independent_rows, is_zero_matrix, mat_mul
from .presentation import Presentation, SemanticError, alpha_coefficients, presentation_complex


class ChainComplex:
    """Finite chain complex with coordinate bases.

    ``boundaries[q]`` is the matrix of ∂_q: C_q -> C_{q-1} acting on row
    vectors, so it has dims[q] rows and dims[q-1] columns.  Entries are
    RationalExpr over ``field``.
    """

    def __init__(self, dims: Dict[int, int], boundaries: Dict[int, List[list]], field: CoeffField,
                 check: bool = True):
        self.dims = {q: d for q, d in dims.items()}
        self.field = field
        self.boundaries = {}
        zero = self.zero
        for q, M in boundaries.items():
            M = [[x if isinstance(x, RationalExpr) else RationalExpr.from_poly(x) for x in row]
                 for row in M]
            if len(M) != self.dims.get(q, 0) or any(len(row) != self.dims.get(q - 1, 0) for row in M):
                raise ValueError(f"boundary {q} has the wrong shape")
            self.boundaries[q] = M
        if check:
            for q in self.boundaries:
                if q + 1 in self.boundaries:
                    prod = mat_mul(self.boundaries[q + 1], self.boundaries[q], zero)
                    if not is_zero_matrix(prod):
                        raise ValueError(f"boundary composite d{q + 1} d{q} is not zero")

    @property
    def zero(self) -> RationalExpr:
        return RationalExpr(LaurentPoly.zero(self.field))

    @property
    def one(self) -> RationalExpr:
        return RationalExpr(LaurentPoly.one(self.field))

    def degrees(self) -> List[int]:
        return sorted(q for q, d in self.dims.items() if d)

    def boundary(self, q: int) -> List[list]:
        """∂_q, or an empty matrix of the right shape."""
        if q in self.boundaries:
            return self.boundaries[q]
        return [[self.zero] * self.dims.get(q - 1, 0) for _ in range(self.dims.get(q, 0))]

    def rank(self, q: int) -> int:
        M = self.boundaries.get(q)
        return gauss_rank(M) if M else 0

    def direct_sum(self, other: "ChainComplex") -> "ChainComplex":
        degs = set(self.dims) | set(other.dims)
        dims = {q: self.dims.get(q, 0) + other.dims.get(q, 0) for q in degs}
        bounds = {}
        for q in set(self.boundaries) | set(other.boundaries):
            A, B = self.boundary(q), other.boundary(q)
            ca, cb = self.dims.get(q - 1, 0), other.dims.get(q - 1, 0)
            rows = [list(r) + [self.zero] * cb for r in A]
            rows += [[self.zero] * ca + list(r) for r in B]
            bounds[q] = rows
        return ChainComplex(dims, bounds, self.field)


def is_acyclic(c: ChainComplex) -> bool:
    return all(c.rank(q) + c.rank(q + 1) == c.dims[q] for q in c.dims)


def _bracket(c: ChainComplex, q: int, chosen: Dict[int, List[int]], perturb: Optional[random.Random]):
    """det of [b_q ; lifts of b_{q-1}] in the coordinate basis of C_q."""
    n = c.dims.get(q, 0)
    if n == 0:
        return c.one
    up = c.boundaries.get(q + 1)
    rows = [list(up[i]) for i in chosen.get(q + 1, [])]
    lifts = []
    for j in chosen.get(q, []):
        e = [c.one if k == j else c.zero for k in range(n)]
        if perturb is not None:
            # any lift works: shift by a random element of B_q
            for b in rows:
                s = perturb.randrange(c.field.p or 7)
                if s:
                    e = [x + y * s for x, y in zip(e, b)]
        lifts.append(e)
    return gauss_det(rows + lifts, c.one)


def torsion(c: ChainComplex, rng: Optional[random.Random] = None,
            perturb_lifts: bool = False) -> RationalExpr:
    """Alternating product of bracket determinants, odd degrees on top.

    The basis of B_{q-1} is a maximal independent set of rows of ∂_q and the
    lifts are the matching coordinate vectors; ``rng`` randomizes which
    independent set is picked.
    """
    if not is_acyclic(c):
        raise SemanticError("chain complex is not acyclic")
    chosen = {}
    for q, M in c.boundaries.items():
        order = list(range(len(M)))
        if rng is not None:
            rng.shuffle(order)
        chosen[q] = independent_rows(M, order)
    out = c.one
    for q in c.degrees():
        b = _bracket(c, q, chosen, rng if perturb_lifts else None)
        out = out * b if q % 2 else out / b
    return out


@dataclass
class TorsionComparison:
    acyclic: bool
    holds: bool
    torsion: Optional[RationalExpr]
    expected: Optional[RationalExpr]


def alpha_complex(p: Presentation, field: CoeffField) -> ChainComplex:
    return presentation_complex(p, alpha_coefficients(p, field))


def milnor_check(p: Presentation, field: Optional[CoeffField] = None) -> TorsionComparison:
    """tau_alpha against Delta/(t-1)."""
    from .alexander import alexander_polynomial
    from .fields import QQ

    F = field or QQ
    c = alpha_complex(p, F)
    delta = alexander_polynomial(p).change_field(F)
    expected = RationalExpr(delta, LaurentPoly.t(F) - 1)
    if not is_acyclic(c):
        return TorsionComparison(False, False, None, expected)
    tau = torsion(c)
    return TorsionComparison(True, tau.is_associate(expected), tau, expected)


def twisted_complex(p: Presentation, rep, inverse_alpha: bool = True) -> ChainComplex:
    """Presentation complex with coefficients x -> t^(-+e) rho(x)."""
    F = rep.field
    mats = rep.matrices(p)
    e = p.exponents
    sign = -1 if inverse_alpha else 1

    def coeff(i):
        return [[LaurentPoly.monomial(F, x, sign * e[i]) for x in row] for row in mats[i]]

    return presentation_complex(p, coeff)


def twisted_torsion_check(p: Presentation, rep) -> TorsionComparison:
    """Torsion with rho (x) alpha-bar coefficients against the twisted invariant.

    The alpha-bar complex computes the twisted invariant evaluated at t^-1,
    so the comparison substitutes t -> t^-1 on the twisted side.
    """
    from .twisted import twisted_alexander

    expected = twisted_alexander(p, rep).reduced.substitute_power(-1)
    c = twisted_complex(p, rep)
    if not is_acyclic(c):
        return TorsionComparison(False, False, None, expected)
    tau = torsion(c)
    return TorsionComparison(True, tau.is_associate(expected), tau, expected)
