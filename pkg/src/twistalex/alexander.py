"""The classical Alexander matrix and polynomial of a knot presentation."""

from itertools import combinations
from math import comb
from typing import List, Optional

from .fields import QQ, CoeffField
from .fox import fox_derivative
from .freegroup import ring_map
from .laurent import (LaurentPoly, RationalExpr, _euclid_divmod, det_laurent, gcd_laurent,
                      integer_normalize, smith_normal_form)
from .presentation import Presentation, SemanticError

MAX_MINOR_SETS = 5000


class AlexanderMatrix:
    """Entries alpha(dr_i/dx_j) over Q[t, t^-1]."""

    def __init__(self, p: Presentation, entries: List[List[LaurentPoly]], field: CoeffField):
        self.presentation = p
        self.entries = entries
        self.field = field

    @property
    def shape(self):
        return len(self.entries), self.presentation.ngens

    def column_removed(self, k: int) -> List[List[LaurentPoly]]:
        return [[x for j, x in enumerate(row) if j != k] for row in self.entries]

    def minor(self, k: int) -> LaurentPoly:
        """det A_k for a deficiency-one presentation."""
        return det_laurent(self.column_removed(k), self.field)

    def check_row_identity(self) -> bool:
        F = self.field
        e = self.presentation.exponents
        for row in self.entries:
            acc = LaurentPoly.zero(F)
            for x, ej in zip(row, e):
                acc = acc + x * (LaurentPoly.monomial(F, 1, ej) - 1)
            if not acc.is_zero():
                return False
        return True


def alexander_matrix(p: Presentation, field: CoeffField = QQ) -> AlexanderMatrix:
    e = p.exponents

    def alpha(w):
        return LaurentPoly.monomial(field, 1, sum(e[g] * k for g, k in w))

    zero = LaurentPoly.zero(field)
    rows = [[ring_map(fox_derivative(r, j), alpha, zero) for j in range(p.ngens)]
            for r in p.relators]
    return AlexanderMatrix(p, rows, field)


def _pick_column(p: Presentation) -> int:
    e = p.exponents
    # prefer a meridian-like generator; any nonzero exponent works
    ones = [k for k, x in enumerate(e) if abs(x) == 1]
    if ones:
        return ones[0]
    return next(k for k, x in enumerate(e) if x)


def minor_gcd(A: AlexanderMatrix, k: int) -> LaurentPoly:
    """gcd of all maximal square minors of A with column k removed."""
    rows = A.column_removed(k)
    r = len(rows)
    c = A.presentation.ngens - 1
    F = A.field
    if r == 0 or c == 0:
        return LaurentPoly.one(F)
    m = min(r, c)
    count = comb(r, m) * comb(c, m)
    if count > MAX_MINOR_SETS:
        raise SemanticError(f"minor enumeration guard: {count} index sets")
    g = LaurentPoly.zero(F)
    for R in combinations(range(r), m):
        for C in combinations(range(c), m):
            d = det_laurent([[rows[i][j] for j in C] for i in R], F)
            if not d.is_zero():
                g = gcd_laurent([g, d])
                if g.is_constant():
                    return g
    return g


def alexander_rational(p: Presentation, k: Optional[int] = None) -> RationalExpr:
    """The presentation invariant Q_k / (t^e_k - 1), i.e. Delta/(t-1) up to units."""
    A = alexander_matrix(p)
    if k is None:
        k = _pick_column(p)
    e = p.exponents[k]
    if e == 0:
        raise SemanticError("chosen column has trivial abelianization image")
    F = A.field
    if p.deficiency == 1 and A.entries:
        q = A.minor(k)
    else:
        q = minor_gcd(A, k)
    return RationalExpr(q, LaurentPoly.monomial(F, 1, e) - 1)


def alexander_polynomial(p: Presentation) -> LaurentPoly:
    """Delta_K, integer-normalized (primitive, lowest degree 0, positive constant term)."""
    F = QQ
    inv = alexander_rational(p)
    delta = inv * RationalExpr.from_poly(LaurentPoly.t(F) - 1)
    if not delta.is_polynomial():
        raise SemanticError(f"Alexander invariant is not a polynomial multiple of 1/(t-1): {inv}")
    return integer_normalize(delta.num)


def check_symmetry(f: LaurentPoly) -> bool:
    return f.substitute_power(-1).unit_normal() == f.unit_normal()


def _kernel_presentation(A: AlexanderMatrix):
    """Rewrite the relation rows in a basis of ker(C_1 -> C_0).

    Row operations on the boundary column (t^e_j - 1) bring it to
    (g, 0, ..., 0); the same change of basis applied to the relation rows
    leaves the last n-1 coordinates as a presentation matrix of H_1.
    """
    F = A.field
    p = A.presentation
    n = p.ngens
    col = [LaurentPoly.monomial(F, 1, x) - 1 for x in p.exponents]
    # basis change B (n x n): new basis f_i = sum_j B[i][j] e_j; track B^-1 too
    B = [[LaurentPoly.one(F) if i == j else LaurentPoly.zero(F) for j in range(n)] for i in range(n)]
    Binv = [row[:] for row in B]
    while True:
        nz = [i for i in range(n) if not col[i].is_zero()]
        if len(nz) <= 1:
            break
        nz.sort(key=lambda i: col[i].span())
        piv = nz[0]
        for i in nz[1:]:
            q, _ = _euclid_divmod(col[i], col[piv])
            # f_i <- f_i - q f_piv
            col[i] = col[i] - q * col[piv]
            B[i] = [x - q * y for x, y in zip(B[i], B[piv])]
            # inverse transform: column piv of Binv gains q * column i
            for row in Binv:
                row[piv] = row[piv] + row[i] * q
    head = next(i for i in range(n) if not col[i].is_zero())
    rest = [i for i in range(n) if i != head]
    # relation row r in old coordinates -> r Binv in new coordinates
    rows = []
    for row in A.entries:
        new = []
        for c in rest:
            acc = LaurentPoly.zero(F)
            for j in range(n):
                if not row[j].is_zero() and not Binv[j][c].is_zero():
                    acc = acc + row[j] * Binv[j][c]
            new.append(acc)
        rows.append(new)
    return rows, col[head]


def order_ideal_h1(p: Presentation) -> LaurentPoly:
    """Generator of the order ideal of H_1 with Q[t, t^-1] coefficients."""
    if p.deficiency != 1:
        raise SemanticError("order ideal computation expects a deficiency-one presentation")
    A = alexander_matrix(p)
    F = A.field
    if p.ngens == 1:
        return LaurentPoly.one(F)
    rows, _ = _kernel_presentation(A)
    diag, rank = smith_normal_form(rows, F)
    if rank < len(diag):
        return LaurentPoly.zero(F)
    out = LaurentPoly.one(F)
    for d in diag:
        out = out * d
    return out.unit_normal()


def order_ideal_h0(p: Presentation) -> LaurentPoly:
    F = QQ
    col = [[LaurentPoly.monomial(F, 1, x) - 1] for x in p.exponents]
    diag, _ = smith_normal_form(col, F)
    return diag[0]
