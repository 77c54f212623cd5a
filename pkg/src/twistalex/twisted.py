"""Twisted Alexander polynomials and the criteria built on them."""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .alexander import alexander_polynomial
from .fields import CoeffField
from .fox import fox_derivative
from .freegroup import Word, ring_map
from .laurent import LaurentPoly, RationalExpr, det_laurent, divides
from .linalg import fmat_identity, fmat_mul
from .presentation import Presentation, SemanticError
from .representation import (Representation, WordEvaluator, is_abelian_rep,
                             verify_representation)


class _LMat:
    """Square matrix of Laurent polynomials supporting + and integer scaling."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = rows

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return _LMat([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    __radd__ = __add__

    def __rmul__(self, c: int):
        return _LMat([[a * c for a in row] for row in self.rows])


def _phi(p: Presentation, rep: Representation):
    """Word -> t^alpha(w) rho(w) as an _LMat."""
    F = rep.field
    ev = WordEvaluator(F, rep.matrices(p))
    e = p.exponents

    def f(w: Word) -> _LMat:
        d = sum(e[g] * k for g, k in w)
        M = ev(w)
        return _LMat([[LaurentPoly.monomial(F, x, d) for x in row] for row in M])

    return f


def twisted_matrix(p: Presentation, rep: Representation) -> List[List[List[List[LaurentPoly]]]]:
    """Grid of blocks Phi(dr_i/dx_j); blocks are dim x dim lists."""
    if p.deficiency != 1:
        raise SemanticError("twisted invariant is implemented for deficiency-one presentations only")
    f = _phi(p, rep)
    zero = _LMat([[LaurentPoly.zero(rep.field)] * rep.dim for _ in range(rep.dim)])
    return [[ring_map(fox_derivative(r, j), f, zero).rows for j in range(p.ngens)]
            for r in p.relators]


def _flatten_without(blocks, k: int, dim: int) -> List[List[LaurentPoly]]:
    out = []
    for brow in blocks:
        for a in range(dim):
            row = []
            for j, blk in enumerate(brow):
                if j != k:
                    row.extend(blk[a])
            out.append(row)
    return out


def _denominators(p: Presentation, rep: Representation) -> List[LaurentPoly]:
    F = rep.field
    e = p.exponents
    dens = []
    for m, ej in zip(rep.matrices(p), e):
        M = [[LaurentPoly.monomial(F, x, ej) - (1 if a == b else 0) for b, x in enumerate(row)]
             for a, row in enumerate(m)]
        dens.append(det_laurent(M, F))
    return dens


@dataclass
class TwistedResult:
    numerator: LaurentPoly
    denominator: LaurentPoly
    column: int
    reduced: RationalExpr
    polynomial: Optional[LaurentPoly]
    dim: int
    field: CoeffField
    cross_checked: bool = False

    def __str__(self):
        return str(self.reduced)


def twisted_alexander(p: Presentation, rep: Representation, verify: bool = False,
                      column: Optional[int] = None) -> TwistedResult:
    """det A_{rho,k} / det Phi(x_k - 1) for the smallest usable column k."""
    if not verify_representation(p, rep):
        raise SemanticError("images do not satisfy the relators")
    blocks = twisted_matrix(p, rep)
    dens = _denominators(p, rep)
    F = rep.field
    if column is None:
        column = next((k for k, d in enumerate(dens) if not d.is_zero()), None)
        if column is None:
            raise ArithmeticError("every denominator det(Phi(x_k - 1)) vanished")
    elif dens[column].is_zero():
        raise SemanticError(f"denominator for column {column} is zero")
    num = det_laurent(_flatten_without(blocks, column, rep.dim), F)
    den = dens[column]
    reduced = RationalExpr(num, den)
    poly = reduced.num if reduced.is_polynomial() else None
    res = TwistedResult(num, den, column, reduced, poly, rep.dim, F)
    if (poly is None and rep.dim == 2 and rep.unimodular and not num.is_zero()
            and not is_abelian_rep(rep, p)):
        raise AssertionError(f"bug: nonabelian SL(2) representation gave non-polynomial {reduced}")
    if verify:
        if not cross_column_check(p, rep, blocks, dens):
            raise AssertionError("bug: cross-column identity failed")
        res.cross_checked = True
    return res


def cross_column_check(p: Presentation, rep: Representation, blocks=None, dens=None) -> bool:
    """num_k den_j == num_j den_k for all usable columns (up to sign in odd dimension)."""
    if blocks is None:
        blocks = twisted_matrix(p, rep)
    if dens is None:
        dens = _denominators(p, rep)
    F = rep.field
    nums = [det_laurent(_flatten_without(blocks, k, rep.dim), F) for k in range(p.ngens)]
    for k in range(p.ngens):
        for j in range(k + 1, p.ngens):
            lhs, rhs = nums[k] * dens[j], nums[j] * dens[k]
            if lhs != rhs and (rep.dim % 2 == 0 or lhs != -rhs):
                return False
    return True


# -- standard representations --------------------------------------------------

def trivial_rep(p: Presentation, field: CoeffField, dim: int = 2) -> Representation:
    ident = fmat_identity(field, dim)
    return Representation(field, {g: ident for g in p.generators}, dim)


def _power(F: CoeffField, a, k: int):
    if F.p == 0:
        return F.reduce(a ** k)
    return pow(a, k % (F.p - 1), F.p) if a else 0


def abelian_rep(p: Presentation, a, field: CoeffField) -> Representation:
    """x_i -> diag(a^e_i, a^-e_i), the abelian representation through t -> a."""
    a = field(a)
    images = {}
    for g, ei in zip(p.generators, p.exponents):
        images[g] = ((_power(field, a, ei), 0), (0, _power(field, a, -ei)))
    return Representation(field, images, 2)


def _delta_in(p: Presentation, F: CoeffField) -> LaurentPoly:
    return alexander_polynomial(p).change_field(F)


def trivial_identity_check(p: Presentation, field: CoeffField) -> bool:
    """Twisted invariant of the 2-dim trivial rep against (Delta/(t-1))^2."""
    res = twisted_alexander(p, trivial_rep(p, field))
    delta = _delta_in(p, field)
    t1 = LaurentPoly.t(field) - 1
    expected = RationalExpr(delta * delta, t1 * t1)
    return res.reduced.is_associate(expected)


def abelian_identity_check(p: Presentation, a, field: CoeffField) -> bool:
    """Twisted invariant of diag(a, 1/a) against Delta(at)/(at-1) * Delta(t/a)/(t/a-1)."""
    a = field(a)
    if a == field.zero:
        raise SemanticError("a must be nonzero")
    res = twisted_alexander(p, abelian_rep(p, a, field))
    delta = _delta_in(p, field)
    t = LaurentPoly.t(field)
    ai = field.inv(a)
    left = RationalExpr(delta.substitute_scale(a), t.scale(a) - 1)
    right = RationalExpr(delta.substitute_scale(ai), t.scale(ai) - 1)
    return res.reduced.is_associate(left * right)


# -- fiberedness ------------------------------------------------------------------

def check_monic(res: TwistedResult) -> bool:
    """Leading coefficients of the stored numerator and denominator.

    Over Q both must be +-1.  Over F_p every nonzero constant is a unit, so
    the test degrades to lc(num) = +-lc(den); see :func:`monic_is_exact`.
    """
    if res.numerator.is_zero():
        return False
    F = res.field
    a, b = res.numerator.lc(), res.denominator.lc()
    if F.p == 0:
        return a in (1, -1) and b in (1, -1)
    return a == b or a == F.neg(b)


def monic_is_exact(res: TwistedResult) -> bool:
    return res.field.p == 0


@dataclass
class DegreeGenus:
    degree: int
    genus: Optional[Fraction]
    degenerate: bool


def degree_and_genus(res: TwistedResult, dim: Optional[int] = None) -> DegreeGenus:
    """degree = span(num) - span(den); genus estimate (degree + l) / (2 l)."""
    l = dim or res.dim
    if res.numerator.is_zero():
        return DegreeGenus(0, None, True)
    degree = res.numerator.span() - res.denominator.span()
    if res.polynomial is not None:
        return DegreeGenus(degree, Fraction(degree + l, 2 * l), False)
    if degree == -l and res.reduced.num.is_monomial():
        # the pattern 1 / prod(lambda_i t - 1) of the trivial knot
        return DegreeGenus(degree, Fraction(0), True)
    return DegreeGenus(degree, None, True)


# -- epimorphisms ------------------------------------------------------------------

def _cyclic_reduce(letters: List) -> List:
    out = []
    for x in letters:
        if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
            out.pop()
        else:
            out.append(x)
    while len(out) >= 2 and out[0][0] == out[-1][0] and out[0][1] == -out[-1][1]:
        out = out[1:-1]
    return out


def _invert_letters(letters):
    return [(g, -s) for g, s in reversed(letters)]


def _eliminate_generators(relators: List[List], word: List):
    """Tietze-eliminate generators that occur exactly once in some relator."""
    rels = [list(r) for r in relators]
    word = list(word)
    while True:
        found = None
        for ri, r in enumerate(rels):
            counts: Dict[int, int] = {}
            for g, _ in r:
                counts[g] = counts.get(g, 0) + 1
            for g, c in counts.items():
                if c == 1:
                    found = (ri, g)
                    break
            if found:
                break
        if not found:
            return rels, word
        ri, g = found
        r = rels.pop(ri)
        i = next(k for k, (h, _) in enumerate(r) if h == g)
        u, s, v = r[:i], r[i][1], r[i + 1:]
        value = _invert_letters(u) + _invert_letters(v)  # g^s
        if s < 0:
            value = _invert_letters(value)

        def subst(letters):
            out = []
            for h, e in letters:
                if h == g:
                    out.extend(value if e > 0 else _invert_letters(value))
                else:
                    out.append((h, e))
            return _cyclic_reduce(out) if out else out

        rels = [subst(x) for x in rels]
        rels = [x for x in rels if x]
        word = subst(word)


def reduces_to_identity(word: Word, p: Presentation, max_steps: int = 2000) -> bool:
    """Sound (not complete) certificate that ``word`` is trivial in the group.

    Generators defined by a relator are eliminated first; the remaining
    cyclic word is then shortened by replacing more than half of a
    relator rotation with the inverse of its complement.
    """
    rels, w = _eliminate_generators([r.letters() for r in p.relators], word.letters())
    w = _cyclic_reduce(w)
    pieces = []
    for r in rels:
        for base in (r, _invert_letters(r)):
            for k in range(len(base)):
                rot = base[k:] + base[:k]
                for cut in range(len(rot) // 2 + 1, len(rot) + 1):
                    pieces.append((rot[:cut], _invert_letters(rot[cut:])))
    seen = set()
    frontier = [tuple(w)]
    steps = 0
    while frontier and steps < max_steps:
        cur = frontier.pop()
        if not cur:
            return True
        if cur in seen:
            continue
        seen.add(cur)
        steps += 1
        L = len(cur)
        for left, repl in pieces:
            m = len(left)
            if m > L:
                continue
            for i in range(L):
                if all(cur[(i + j) % L] == left[j] for j in range(m)):
                    rest = [cur[(i + m + j) % L] for j in range(L - m)]
                    frontier.append(tuple(_cyclic_reduce(list(repl) + rest)))
    return False


def parse_map(pairs: Dict[str, str], source: Presentation, target: Presentation) -> Dict[str, Word]:
    phi = {}
    for g in source.generators:
        if g not in pairs:
            raise SemanticError(f"map has no image for generator {g}")
        phi[g] = target.parse_word(pairs[g])
    extra = set(pairs) - set(source.generators)
    if extra:
        raise SemanticError(f"map names unknown generators {sorted(extra)}")
    return phi


def compose_rep(source: Presentation, target: Presentation, phi: Dict[str, Word],
                rep: Representation) -> Representation:
    ev = WordEvaluator(rep.field, rep.matrices(target))
    return Representation(rep.field, {g: ev(phi[g]) for g in source.generators}, rep.dim)


def _generated_order(F, mats, limit: int = 200000) -> Optional[int]:
    if F.p == 0:
        return None
    ident = fmat_identity(F, len(mats[0]))
    seen = {ident}
    frontier = [ident]
    while frontier:
        x = frontier.pop()
        for m in mats:
            y = fmat_mul(F, x, m)
            if y not in seen:
                seen.add(y)
                if len(seen) > limit:
                    return None
                frontier.append(y)
    return len(seen)


@dataclass
class DivisibilityReport:
    holds: bool
    classical: bool
    numerator_divides: bool
    certified: bool
    meridional: bool
    surjective_evidence: Optional[bool]
    source: Optional[TwistedResult] = None
    target: Optional[TwistedResult] = None
    notes: List[str] = dc_field(default_factory=list)

    def __bool__(self):
        return self.holds


def divisibility_report(p1: Presentation, p2: Presentation, phi: Dict[str, Word],
                        rep: Representation, evidence: Sequence[Representation] = ()) -> DivisibilityReport:
    """Check that phi: G(p1) -> G(p2) is a homomorphism and that the twisted
    invariant of rep composed with phi is divisible by that of rep."""
    notes = []
    images = [phi[g] for g in p1.generators]
    certified = True
    checks = [rep] + [r for r in evidence if verify_representation(p2, r)]
    for i, r in enumerate(p1.relators):
        img = Word(())
        for g, k in r:
            img = img * images[g] ** k
        ok = reduces_to_identity(img, p2)
        for ev_rep in checks:
            ev = WordEvaluator(ev_rep.field, ev_rep.matrices(p2))
            if ev(img) != fmat_identity(ev_rep.field, ev_rep.dim):
                raise SemanticError(f"not a homomorphism certificate: relator {i + 1} survives")
        if not ok:
            certified = False
            notes.append(f"relator {i + 1}: no rewriting certificate; checked on representations only")
    e1, e2 = p1.exponents, p2.exponents
    meridional = all(sum(e2[g] * k for g, k in w) == e for w, e in zip(images, e1))
    if not meridional:
        raise SemanticError("map does not preserve the abelianization")
    composed = compose_rep(p1, p2, phi, rep)
    t1 = twisted_alexander(p1, composed)
    t2 = twisted_alexander(p2, rep)
    if t2.reduced.is_zero():
        holds = t1.reduced.is_zero()
    else:
        holds = (t1.reduced / t2.reduced).is_polynomial()
    classical = divides(alexander_polynomial(p2), alexander_polynomial(p1))
    n1 = _generated_order(rep.field, composed.matrices(p1))
    n2 = _generated_order(rep.field, rep.matrices(p2))
    surj = None if n1 is None or n2 is None else n1 == n2
    return DivisibilityReport(holds, classical, divides(t2.numerator, t1.numerator), certified,
                              meridional, surj, t1, t2, notes)


def divisibility_check(p1: Presentation, p2: Presentation, phi: Dict[str, Word],
                       rep: Representation, evidence: Sequence[Representation] = ()) -> bool:
    return divisibility_report(p1, p2, phi, rep, evidence).holds
