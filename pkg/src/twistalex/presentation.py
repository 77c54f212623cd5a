"""Finite presentations: the ``.pres`` text format, abelianization,
Tietze moves, and the cellular chain complex of the presentation 2-complex.

File format, one statement per line::

    # comment
    name 3_1
    gens x y
    rel x y x = y x y

A word is a whitespace-separated list of terms ``ident`` or ``ident^k``
(``1`` denotes the empty word).  ``u = v`` is stored as the relator u v^-1.
"""

import re
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .fields import QQ
from .fox import fox_derivative
from .freegroup import GroupRingElement, Word
from .linalg import INTEGER_OPS, fmat_nullspace, smith_diagonal


class PresentationError(ValueError):
    """Malformed input text (exit code 2 at the command line)."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


class SemanticError(ValueError):
    """Well-formed input that is not a usable knot presentation (exit code 3)."""


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_TERM = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^([+-]?\d+))?$")


class Presentation:
    """Immutable group presentation with named generators."""

    def __init__(self, generators: Sequence[str], relators: Sequence[Word], name: str = ""):
        self.name = name
        self.generators = tuple(generators)
        self.relators = tuple(Word(r) for r in relators)
        if len(set(self.generators)) != len(self.generators):
            raise SemanticError("duplicate generator names")
        n = len(self.generators)
        for r in self.relators:
            for g, _ in r:
                if not 0 <= g < n:
                    raise SemanticError(f"relator uses generator index {g} outside 0..{n - 1}")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def deficiency(self) -> int:
        return len(self.generators) - len(self.relators)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise SemanticError(f"unknown generator {name!r}") from None

    def __eq__(self, other):
        return (isinstance(other, Presentation) and self.name == other.name
                and self.generators == other.generators and self.relators == other.relators)

    def __hash__(self):
        return hash((self.name, self.generators, self.relators))

    def __repr__(self):
        rels = ", ".join(r.format(self.generators) for r in self.relators)
        return f"<{', '.join(self.generators)} | {rels}>"

    @cached_property
    def exponents(self) -> Tuple[int, ...]:
        return abelianization(self)

    @cached_property
    def wirtinger(self) -> bool:
        """All generators map to t and every relator has total exponent zero."""
        try:
            e = self.exponents
        except SemanticError:
            return False
        return all(x == 1 for x in e) and all(
            sum(k for _, k in r) == 0 for r in self.relators)

    def parse_word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format_word(self, w: Word) -> str:
        return w.format(self.generators)

    def alpha(self, w: Word) -> int:
        """Exponent of t in the abelianization image of w."""
        e = self.exponents
        return sum(e[g] * k for g, k in w)


# -- parsing -----------------------------------------------------------------

def parse_word(text: str, names: Sequence[str], line: int = 0, offset: int = 0) -> Word:
    runs = []
    lookup = {n: i for i, n in enumerate(names)}
    for m in re.finditer(r"\S+", text):
        tok = m.group(0)
        col = offset + m.start() + 1
        if tok == "1":
            continue
        tm = _TERM.match(tok)
        if not tm:
            raise PresentationError(f"bad word term {tok!r}", line, col)
        ident, power = tm.group(1), tm.group(2)
        if ident not in lookup:
            raise PresentationError(f"unknown generator {ident!r}", line, col)
        k = int(power) if power is not None else 1
        runs.append((lookup[ident], k))
    return Word(runs)


def parse_presentation(text: str, require_knot: bool = True) -> Presentation:
    """Parse ``.pres`` text.

    With ``require_knot`` the deficiency must be at least one.
    """
    name = ""
    gens: Optional[List[str]] = None
    rels: List[Word] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        kw, _, rest = stripped.partition(" ")
        rest_col = indent + len(kw) + 2  # 1-based column where ``rest`` starts
        if kw == "name":
            name = rest.strip()
            if not name:
                raise PresentationError("empty name", lineno, rest_col)
        elif kw == "gens":
            if gens is not None:
                raise PresentationError("generators declared twice", lineno, indent + 1)
            gens = []
            for m in re.finditer(r"\S+", rest):
                tok = m.group(0)
                if not _IDENT.match(tok):
                    raise PresentationError(f"bad generator name {tok!r}", lineno, rest_col + m.start())
                if tok in gens:
                    raise PresentationError(f"duplicate generator {tok!r}", lineno, rest_col + m.start())
                gens.append(tok)
        elif kw == "rel":
            if gens is None:
                raise PresentationError("relator before generator declaration", lineno, indent + 1)
            lhs, eq, rhs = rest.partition("=")
            if not lhs.strip():
                raise PresentationError("empty relator side", lineno, rest_col)
            u = parse_word(lhs, gens, lineno, rest_col - 1)
            if eq:
                if not rhs.strip():
                    raise PresentationError("empty right-hand side", lineno, rest_col + len(lhs) + 1)
                if "=" in rhs:
                    col = rest_col + len(lhs) + 1 + rhs.index("=")
                    raise PresentationError("more than one '=' in a relator", lineno, col)
                v = parse_word(rhs, gens, lineno, rest_col + len(lhs))
                u = u * v.inverse()
            rels.append(u)
        else:
            raise PresentationError(f"unknown statement {kw!r}", lineno, indent + 1)
    if gens is None:
        raise PresentationError("missing 'gens' line")
    p = Presentation(gens, rels, name)
    if require_knot and p.deficiency < 1:
        raise SemanticError(
            f"deficiency {p.deficiency} < 1: a knot presentation needs more generators than relators")
    return p


def load_presentation(path: str, require_knot: bool = True) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read(), require_knot)


def serialize_presentation(p: Presentation) -> str:
    lines = []
    if p.name:
        lines.append(f"name {p.name}")
    lines.append("gens " + " ".join(p.generators))
    for r in p.relators:
        lines.append("rel " + r.format(p.generators))
    return "\n".join(lines) + "\n"


# -- abelianization ----------------------------------------------------------

def exponent_matrix(p: Presentation) -> List[List[int]]:
    return [[r.exponent_sum(j) for j in range(p.ngens)] for r in p.relators]


def abelianization(p: Presentation) -> Tuple[int, ...]:
    """Exponents e_i with alpha(x_i) = t^e_i, first nonzero e_i positive."""
    n = p.ngens
    M = exponent_matrix(p)
    diag = smith_diagonal(M, INTEGER_OPS) if M else []
    rank = sum(1 for d in diag if d)
    if rank != n - 1 or any(d not in (0, 1) for d in diag):
        raise SemanticError("abelianization is not infinite cyclic")
    kernel = fmat_nullspace(QQ, [[Fraction(x) for x in row] for row in M], n) if M else \
        [[Fraction(1) if i == 0 else Fraction(0) for i in range(n)]]
    (v,) = kernel
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


# -- Tietze moves ------------------------------------------------------------

Factor = Tuple[Word, int, int]


def conjugate_product(p: Presentation, factors: Sequence[Factor]) -> Word:
    """Product of w r_i^eps w^-1 over the factors."""
    out = Word()
    for w, i, eps in factors:
        if not 0 <= i < len(p.relators):
            raise SemanticError(f"relator index {i} out of range")
        if eps not in (1, -1):
            raise SemanticError("exponent of a relator factor must be +1 or -1")
        out = out * w * (p.relators[i] ** eps) * w.inverse()
    return out


def tietze_add_consequence(p: Presentation, factors: Sequence[Factor]) -> Presentation:
    """Append the consequence prod w_k r_{i_k}^{eps_k} w_k^-1 as a new relator."""
    r = conjugate_product(p, factors)
    return Presentation(p.generators, p.relators + (r,), p.name)


def tietze_remove_consequence(p: Presentation, i: int, factors: Sequence[Factor]) -> Presentation:
    """Delete relator i, given a certificate expressing it through the others.

    ``factors`` index into the relator list with relator i removed.
    """
    rest = Presentation(p.generators, p.relators[:i] + p.relators[i + 1:], p.name)
    if conjugate_product(rest, factors) != p.relators[i]:
        raise SemanticError(f"certificate does not express relator {i} as a consequence")
    return rest


def _fresh_name(names: Sequence[str]) -> str:
    k = len(names) + 1
    while f"x{k}" in names:
        k += 1
    return f"x{k}"


def tietze_add_generator(p: Presentation, w: Word, name: Optional[str] = None) -> Presentation:
    """New generator z with relator z w^-1."""
    name = name or _fresh_name(p.generators)
    n = p.ngens
    return Presentation(p.generators + (name,), p.relators + (Word.gen(n) * w.inverse(),), p.name)


def tietze_invert_relator(p: Presentation, i: int) -> Presentation:
    rels = list(p.relators)
    rels[i] = rels[i].inverse()
    return Presentation(p.generators, rels, p.name)


def tietze_conjugate_relator(p: Presentation, i: int, w: Word) -> Presentation:
    rels = list(p.relators)
    rels[i] = w * rels[i] * w.inverse()
    return Presentation(p.generators, rels, p.name)


def tietze_multiply_relators(p: Presentation, i: int, k: int) -> Presentation:
    """Replace r_i by r_i r_k (i != k)."""
    if i == k:
        raise SemanticError("a relator cannot be multiplied by itself in this move")
    rels = list(p.relators)
    rels[i] = rels[i] * rels[k]
    return Presentation(p.generators, rels, p.name)


# -- presentation 2-complex ----------------------------------------------------

def presentation_complex(p: Presentation, coeff: Callable[[int], list]):
    """Based chain complex C_2 -> C_1 -> C_0 of the presentation 2-complex.

    ``coeff(i)`` is the l x l matrix (LaurentPoly entries) attached to
    generator i.  Boundaries use row vectors: ∂_2 has the block
    coeff(∂r_i/∂x_j) in block position (i, j), ∂_1 has coeff(x_j) - I in
    block row j.
    """
    from .laurent import LaurentPoly, RationalExpr, lmat_identity, lmat_inverse, lmat_mul
    from .torsion import ChainComplex

    n = p.ngens
    gens = [coeff(i) for i in range(n)]
    if not gens:
        raise SemanticError("presentation without generators")
    l = len(gens[0])
    F = gens[0][0][0].field
    invs = {}
    for i, A in enumerate(gens):
        try:
            invs[i] = lmat_inverse(A)
        except ValueError as exc:
            raise SemanticError(f"image of generator {p.generators[i]} is not invertible") from exc
    ident = lmat_identity(F, l)
    cache: Dict[Word, list] = {Word(): ident}

    def image(w: Word):
        if w in cache:
            return cache[w]
        out = ident
        for g, k in w:
            base = gens[g] if k > 0 else invs[g]
            for _ in range(abs(k)):
                out = lmat_mul(out, base)
        cache[w] = out
        return out

    def element_image(e: GroupRingElement):
        acc = [[LaurentPoly.zero(F)] * l for _ in range(l)]
        for w, c in e.items():
            M = image(w)
            acc = [[a + m * c for a, m in zip(ra, rm)] for ra, rm in zip(acc, M)]
        return acc

    def to_rat(rows):
        return [[RationalExpr.from_poly(x) for x in row] for row in rows]

    d1 = []
    for j in range(n):
        block = [[gens[j][a][b] - (1 if a == b else 0) for b in range(l)] for a in range(l)]
        d1.extend(block)
    d2 = []
    for r in p.relators:
        blocks = [element_image(fox_derivative(r, j)) for j in range(n)]
        for a in range(l):
            d2.append([blocks[j][a][b] for j in range(n) for b in range(l)])
    dims = {0: l, 1: n * l, 2: len(p.relators) * l}
    bounds = {1: to_rat(d1)}
    if p.relators:
        bounds[2] = to_rat(d2)
    return ChainComplex(dims, bounds, F)


def alpha_coefficients(p: Presentation, field=QQ):
    """coeff map x_i -> (t^e_i) as 1x1 matrices."""
    from .laurent import LaurentPoly
    e = p.exponents
    return lambda i: [[LaurentPoly.monomial(field, 1, e[i])]]
