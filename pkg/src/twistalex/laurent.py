"""Laurent polynomials in one variable ``t`` over Q or F_p, rational
expressions, and the exact matrix kernels built on them (determinant,
gcd, Smith normal form)."""

import re
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import CoeffField
from .linalg import EuclideanOps, smith_diagonal


class LaurentPoly:
    """c_0 t^low + c_1 t^(low+1) + ... with first and last coefficients nonzero.

    The zero polynomial is ``coeffs == ()`` with ``low == 0``.
    """

    __slots__ = ("field", "low", "coeffs")

    def __init__(self, field: CoeffField, coeffs: Sequence = (), low: int = 0):
        cs = [field(c) for c in coeffs]
        self._set(field, low, cs)

    def _set(self, field, low, cs):
        i = 0
        while i < len(cs) and not cs[i]:
            i += 1
        j = len(cs)
        while j > i and not cs[j - 1]:
            j -= 1
        self.field = field
        if i == j:
            self.low, self.coeffs = 0, ()
        else:
            self.low, self.coeffs = low + i, tuple(cs[i:j])

    @classmethod
    def _raw(cls, field, low, cs) -> "LaurentPoly":
        """Build from already-reduced field elements, trimming zeros."""
        obj = cls.__new__(cls)
        obj._set(field, low, cs)
        return obj

    @classmethod
    def zero(cls, field: CoeffField) -> "LaurentPoly":
        return cls._raw(field, 0, [])

    @classmethod
    def one(cls, field: CoeffField) -> "LaurentPoly":
        return cls._raw(field, 0, [field.one])

    @classmethod
    def constant(cls, field: CoeffField, c) -> "LaurentPoly":
        return cls._raw(field, 0, [field(c)])

    @classmethod
    def monomial(cls, field: CoeffField, c=1, deg: int = 0) -> "LaurentPoly":
        return cls._raw(field, deg, [field(c)])

    @classmethod
    def t(cls, field: CoeffField) -> "LaurentPoly":
        return cls.monomial(field, 1, 1)

    @classmethod
    def from_dict(cls, field: CoeffField, terms: Dict[int, object]) -> "LaurentPoly":
        terms = {d: c for d, c in terms.items() if field(c)}
        if not terms:
            return cls.zero(field)
        lo, hi = min(terms), max(terms)
        return cls(field, [terms.get(d, 0) for d in range(lo, hi + 1)], lo)

    # -- basic queries --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def span(self) -> int:
        """highest minus lowest degree (0 for the zero polynomial)."""
        return len(self.coeffs) - 1 if self.coeffs else 0

    def lc(self):
        """Coefficient of the highest-degree term."""
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def tc(self):
        """Coefficient of the lowest-degree term."""
        return self.coeffs[0] if self.coeffs else self.field.zero

    def coeff(self, d: int):
        i = d - self.low
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def terms(self) -> List[Tuple[int, object]]:
        return [(self.low + i, c) for i, c in enumerate(self.coeffs) if c]

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def is_constant(self) -> bool:
        return self.is_zero() or (len(self.coeffs) == 1 and self.low == 0)

    # -- arithmetic -----------------------------------------------------

    def _lift(self, other) -> Optional["LaurentPoly"]:
        if isinstance(other, LaurentPoly):
            if other.field != self.field:
                raise ValueError(f"mixed fields {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(self.field, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        F = self.field
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        cs = [F.zero] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            cs[self.low - lo + i] = c
        off = other.low - lo
        for i, c in enumerate(other.coeffs):
            cs[off + i] = F.add(cs[off + i], c)
        return LaurentPoly._raw(F, lo, cs)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return LaurentPoly._raw(F, self.low, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return LaurentPoly.zero(self.field)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(b) == 1:
            c = b[0]
            return LaurentPoly._raw(F, self.low + other.low, [F.mul(x, c) for x in a])
        if len(a) == 1:
            c = a[0]
            return LaurentPoly._raw(F, self.low + other.low, [F.mul(c, x) for x in b])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return LaurentPoly._raw(F, self.low + other.low, [F.reduce(c) for c in out])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            F = self.field
            return LaurentPoly.monomial(F, F.inv(self.coeffs[0]), -self.low) ** (-n)
        result = LaurentPoly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.field, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.field == other.field and self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.low, self.coeffs))

    def shift(self, s: int) -> "LaurentPoly":
        """Multiply by t^s."""
        if not self.coeffs:
            return self
        return LaurentPoly._raw(self.field, self.low + s, list(self.coeffs))

    def scale(self, c) -> "LaurentPoly":
        F = self.field
        c = F(c)
        return LaurentPoly._raw(F, self.low, [F.mul(c, x) for x in self.coeffs])

    def __call__(self, x):
        """Evaluate at a nonzero field element."""
        F = self.field
        x = F(x)
        if not self.coeffs:
            return F.zero
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        if self.low >= 0:
            return F.mul(acc, F.reduce(x ** self.low) if F.p == 0 else pow(x, self.low, F.p))
        xi = F.inv(x)
        return F.mul(acc, xi ** (-self.low) if F.p == 0 else pow(xi, -self.low, F.p))

    def substitute_scale(self, a) -> "LaurentPoly":
        """f(a t) for a nonzero field element a."""
        F = self.field
        a = F(a)
        if not self.coeffs:
            return self
        out = []
        ai = F.inv(a)
        for i, c in enumerate(self.coeffs):
            d = self.low + i
            if d >= 0:
                pw = a ** d if F.p == 0 else pow(a, d, F.p)
            else:
                pw = ai ** (-d) if F.p == 0 else pow(ai, -d, F.p)
            out.append(F.mul(c, pw))
        return LaurentPoly._raw(F, self.low, out)

    def substitute_power(self, k: int) -> "LaurentPoly":
        """f(t^k); k = -1 gives the reversed polynomial f(t^-1)."""
        if k == 0:
            F = self.field
            return LaurentPoly.constant(F, F.reduce(sum(self.coeffs)) if self.coeffs else 0)
        return LaurentPoly.from_dict(self.field, {d * k: c for d, c in self.terms()})

    def change_field(self, F: CoeffField) -> "LaurentPoly":
        """Reduce a Q-polynomial with p-integral coefficients into F."""
        return LaurentPoly(F, list(self.coeffs), self.low)

    # -- division -------------------------------------------------------

    def _poly_divmod(self, d: "LaurentPoly"):
        """Coefficient lists (q, r) of the division of the shifted
        polynomials, i.e. with both lowest degrees moved to 0."""
        F = self.field
        a = list(self.coeffs)
        b = d.coeffs
        inv_lead = F.inv(b[-1])
        nb = len(b)
        if len(a) < nb:
            return [], a
        q = [F.zero] * (len(a) - nb + 1)
        for i in range(len(a) - nb, -1, -1):
            c = F.mul(a[i + nb - 1], inv_lead)
            q[i] = c
            if c:
                for j in range(nb):
                    a[i + j] = F.sub(a[i + j], F.mul(c, b[j]))
        return q, a[:nb - 1]

    def exact_div(self, d: "LaurentPoly") -> Optional["LaurentPoly"]:
        """self / d as a Laurent polynomial, or None when d does not divide."""
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        q, r = self._poly_divmod(d)
        if any(r):
            return None
        return LaurentPoly._raw(self.field, self.low - d.low, q)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(self.field.inv(self.field(other)))
        if isinstance(other, LaurentPoly):
            q = self.exact_div(other)
            if q is None:
                raise ValueError(f"{other} does not divide {self}")
            return q
        return NotImplemented

    # -- normalization and display -----------------------------------

    def unit_normal(self) -> "LaurentPoly":
        """Canonical associate: lowest degree 0, leading coefficient 1."""
        if not self.coeffs:
            return self
        F = self.field
        inv = F.inv(self.coeffs[-1])
        return LaurentPoly._raw(F, 0, [F.mul(inv, c) for c in self.coeffs])

    def is_associate(self, other: "LaurentPoly") -> bool:
        return self.unit_normal() == other.unit_normal()

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r}, {self.field!r})"

    def to_pairs(self) -> List[list]:
        """Canonical JSON encoding: ascending [degree, coefficient] pairs."""
        F = self.field
        return [[d, F.encode(c)] for d, c in self.terms()]


# -- free functions ------------------------------------------------------

def unit_normal(f: LaurentPoly) -> LaurentPoly:
    return f.unit_normal()


def _euclid_divmod(a: LaurentPoly, b: LaurentPoly):
    """a = q b + r with span(r) < span(b), the Euclidean function of F[t, t^-1]."""
    F = a.field
    if a.is_zero():
        return a, a
    q, r = a._poly_divmod(b)
    return (LaurentPoly._raw(F, a.low - b.low, q), LaurentPoly._raw(F, a.low, r))


def _to_poly(f: LaurentPoly) -> LaurentPoly:
    return f.shift(-f.low) if f.coeffs else f


def gcd_laurent(fs: Sequence[LaurentPoly]) -> LaurentPoly:
    """gcd of Laurent polynomials, in unit normal form (0 for all-zero input)."""
    fs = list(fs)
    if not fs:
        raise ValueError("gcd of an empty list")
    g = LaurentPoly.zero(fs[0].field)
    for f in fs:
        a, b = _to_poly(g), _to_poly(f)
        while not b.is_zero():
            a, b = b, _euclid_divmod(a, b)[1]
        g = a.unit_normal()
        if g.is_constant() and not g.is_zero():
            break
    return g


def divides(d: LaurentPoly, f: LaurentPoly) -> bool:
    if d.is_zero():
        return f.is_zero()
    return f.exact_div(d) is not None


def det_laurent(M: Sequence[Sequence[LaurentPoly]], field: Optional[CoeffField] = None) -> LaurentPoly:
    """Exact determinant by fraction-free elimination.

    Each row is first shifted by a power of t so its entries are ordinary
    polynomials; Bareiss elimination then runs in F[t], and the shifts are
    restored at the end.
    """
    n = len(M)
    if n == 0:
        if field is None:
            raise ValueError("field required for the 0x0 determinant")
        return LaurentPoly.one(field)
    F = M[0][0].field
    shift = 0
    A = []
    for row in M:
        lows = [e.low for e in row if not e.is_zero()]
        if not lows:
            return LaurentPoly.zero(F)
        s = min(lows)
        shift += s
        A.append([e.shift(-s) for e in row])
    sign = 1
    prev = LaurentPoly.one(F)
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not A[i][k].is_zero()), None)
            if swap is None:
                return LaurentPoly.zero(F)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                num = akk * row_i[j] - aik * row_k[j]
                row_i[j] = num.exact_div(prev) if k else num
                if row_i[j] is None:
                    raise ArithmeticError("Bareiss division was not exact")
            row_i[k] = LaurentPoly.zero(F)
        prev = akk
    det = A[n - 1][n - 1].shift(shift)
    return -det if sign < 0 else det


def _laurent_ops(F: CoeffField) -> EuclideanOps:
    return EuclideanOps(
        is_zero=lambda a: a.is_zero(),
        size=lambda a: a.span(),
        divmod_=_euclid_divmod,
        normalize=lambda a: a.unit_normal(),
        zero=LaurentPoly.zero(F),
        one=LaurentPoly.one(F),
    )


def smith_normal_form(M: Sequence[Sequence[LaurentPoly]], field: Optional[CoeffField] = None):
    """Smith normal form over F[t, t^-1]; returns (diagonal, rank).

    Rows are shifted into F[t] first (t is a unit), so the Euclidean
    algorithm runs over the polynomial ring.  Diagonal entries are in unit
    normal form and form a divisibility chain.
    """
    if not M or not M[0]:
        return [], 0
    F = field or M[0][0].field
    rows = []
    for row in M:
        lows = [e.low for e in row if not e.is_zero()]
        s = min(lows) if lows else 0
        rows.append([e.shift(-s) for e in row])
    diag = smith_diagonal(rows, _laurent_ops(F))
    rank = sum(1 for d in diag if not d.is_zero())
    return diag, rank


# -- rational expressions -------------------------------------------------

class RationalExpr:
    """num/den with gcd removed and den in unit normal form.

    The canonical form makes ``==`` an exact equality of rational
    functions.  Elements of the fraction field F(t) are represented this
    way throughout the torsion code.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: Optional[LaurentPoly] = None):
        F = num.field
        if den is None:
            den = LaurentPoly.one(F)
        if den.is_zero():
            raise ZeroDivisionError("rational expression with zero denominator")
        if num.is_zero():
            self.num, self.den = num, LaurentPoly.one(F)
            return
        g = gcd_laurent([num, den])
        if not (g.is_constant()):
            num = num.exact_div(g)
            den = den.exact_div(g)
        # fold the unit of den into num
        c = den.coeffs[-1]
        s = den.low
        unit_inv = F.inv(c)
        self.num = num.scale(unit_inv).shift(-s)
        self.den = den.unit_normal()

    @property
    def field(self) -> CoeffField:
        return self.num.field

    @classmethod
    def from_poly(cls, f: LaurentPoly) -> "RationalExpr":
        obj = cls.__new__(cls)
        obj.num, obj.den = f, LaurentPoly.one(f.field)
        return obj

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> Optional[LaurentPoly]:
        return self.num if self.is_polynomial() else None

    def _lift(self, other):
        if isinstance(other, RationalExpr):
            return other
        if isinstance(other, LaurentPoly):
            return RationalExpr.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return RationalExpr.from_poly(LaurentPoly.constant(self.field, other))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return RationalExpr(self.num + o.num, self.den)
        return RationalExpr(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        obj = RationalExpr.__new__(RationalExpr)
        obj.num, obj.den = -self.num, self.den
        return obj

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return RationalExpr.from_poly(LaurentPoly.zero(self.field))
        if self.is_polynomial() and o.is_polynomial():
            # den is 1 for both
            return RationalExpr.from_poly(self.num * o.num)
        return RationalExpr(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalExpr":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational expression")
        return RationalExpr(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def unit_normal(self) -> Tuple[LaurentPoly, LaurentPoly]:
        """(numerator, denominator) both in unit normal form."""
        return self.num.unit_normal(), self.den

    def is_associate(self, other: "RationalExpr") -> bool:
        return self.unit_normal() == other.unit_normal()

    def substitute_power(self, k: int) -> "RationalExpr":
        return RationalExpr(self.num.substitute_power(k), self.den.substitute_power(k))

    def __str__(self):
        if self.is_polynomial():
            return format_poly(self.num)
        return f"({format_poly(self.num)}) / ({format_poly(self.den)})"

    def __repr__(self):
        return f"RationalExpr({self})"


# -- text format -----------------------------------------------------------

def format_poly(f: LaurentPoly, descending: bool = False) -> str:
    """Ascending-degree text, e.g. ``t^-2 - 3*t^-1 + 6 - 3*t + t^2``."""
    if f.is_zero():
        return "0"
    F = f.field
    out = []
    terms = f.terms()
    for d, c in (reversed(terms) if descending else terms):
        s = F.format(c)
        neg = s.startswith("-")
        mag = s[1:] if neg else s
        if d == 0:
            body = mag
        else:
            mono = "t" if d == 1 else f"t^{d}"
            body = mono if mag == "1" else f"{mag}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TERM = re.compile(r"^\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?(t(?:\^(-?\d+))?)?\s*$")


def parse_poly(text: str, field: CoeffField) -> LaurentPoly:
    """Inverse of :func:`format_poly` (also accepts any term order)."""
    text = text.strip()
    if text == "0":
        return LaurentPoly.zero(field)
    pieces = re.findall(r"[+-]?[^+-]+", text.replace("^-", "^~"))
    terms: Dict[int, object] = {}
    for piece in pieces:
        piece = piece.replace("^~", "^-")
        m = _TERM.match(piece)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"cannot parse polynomial term {piece!r}")
        sign, coef, mono, power = m.groups()
        c = field(coef) if coef else field.one
        if sign == "-":
            c = field.neg(c)
        d = 0 if mono is None else (1 if power is None else int(power))
        terms[d] = field.add(terms.get(d, field.zero), c)
    return LaurentPoly.from_dict(field, terms)


def integer_normalize(f: LaurentPoly) -> LaurentPoly:
    """Primitive integer representative over Q: lowest degree 0, content
    removed, lowest coefficient positive."""
    if f.field.p != 0:
        raise ValueError("integer normalization needs rational coefficients")
    if f.is_zero():
        return f
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    content = 0
    for x in ints:
        content = gcd(content, x)
    ints = [x // content for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    return LaurentPoly(f.field, ints, 0)


def poly_from_pairs(field: CoeffField, pairs) -> LaurentPoly:
    return LaurentPoly.from_dict(field, {int(d): field(c) for d, c in pairs})


# -- square matrices of Laurent polynomials -----------------------------

def lmat_identity(F: CoeffField, n: int) -> List[List[LaurentPoly]]:
    one, zero = LaurentPoly.one(F), LaurentPoly.zero(F)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def lmat_mul(A, B) -> List[List[LaurentPoly]]:
    n, m, k = len(A), len(B), len(B[0])
    F = A[0][0].field
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = LaurentPoly.zero(F)
            for l in range(m):
                a, b = A[i][l], B[l][j]
                if a.coeffs and b.coeffs:
                    acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


def lmat_inverse(A) -> List[List[LaurentPoly]]:
    """Inverse over F[t, t^-1]; requires a monomial determinant."""
    n = len(A)
    d = det_laurent(A)
    if not d.is_monomial():
        raise ValueError(f"matrix is not invertible over the Laurent ring (det = {d})")
    if n == 1:
        return [[d ** -1]]
    dinv = d ** -1
    inv = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [[A[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
            cof = det_laurent(minor)
            if (i + j) % 2:
                cof = -cof
            row.append(cof * dinv)
        inv.append(row)
    return inv
