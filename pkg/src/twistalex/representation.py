"""Matrix representations of presented groups over Q and F_p."""

import json
import random
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import QQ, CoeffField
from .freegroup import Word
from .linalg import (Matrix, fmat, fmat_det, fmat_identity, fmat_inv, fmat_mul,
                     fmat_nullspace, fmat_trace)
from .presentation import Presentation, SemanticError


class Representation:
    """Generator name -> invertible square matrix over a coefficient field."""

    def __init__(self, field: CoeffField, images: Dict[str, Sequence[Sequence]], dim: Optional[int] = None):
        self.field = field
        self.images: Dict[str, Matrix] = {k: fmat(field, v) for k, v in images.items()}
        dims = {len(m) for m in self.images.values()}
        if dim is None:
            if len(dims) != 1:
                raise SemanticError("cannot infer dimension of representation")
            dim = dims.pop()
        self.dim = dim
        for name, m in self.images.items():
            if len(m) != dim or any(len(row) != dim for row in m):
                raise SemanticError(f"image of {name} is not {dim}x{dim}")
            if not fmat_det(field, m):
                raise SemanticError(f"image of {name} is singular")
        self.unimodular = all(fmat_det(field, m) == field.one for m in self.images.values())

    def matrices(self, p: Presentation) -> List[Matrix]:
        out = []
        for g in p.generators:
            if g not in self.images:
                raise SemanticError(f"generator {g} has no image")
            out.append(self.images[g])
        return out

    def conjugate(self, P: Sequence[Sequence]) -> "Representation":
        F = self.field
        P = fmat(F, P)
        Pi = fmat_inv(F, P)
        return Representation(F, {k: fmat_mul(F, fmat_mul(F, P, m), Pi) for k, m in self.images.items()})

    def __eq__(self, other):
        return (isinstance(other, Representation) and self.field == other.field
                and self.images == other.images)

    def __repr__(self):
        return f"Representation({self.field!r}, {self.images!r})"

    def to_json(self) -> dict:
        F = self.field
        return {
            "field": F.to_json(),
            "dim": self.dim,
            "images": {k: [[F.encode(x) for x in row] for row in m]
                       for k, m in sorted(self.images.items())},
        }

    @classmethod
    def from_json(cls, d: dict) -> "Representation":
        try:
            F = CoeffField.from_json(d["field"])
            return cls(F, d["images"], d.get("dim"))
        except (KeyError, TypeError) as exc:
            raise SemanticError(f"malformed representation JSON: {exc}") from exc


def load_representation(path: str) -> Representation:
    with open(path, encoding="utf-8") as fh:
        return Representation.from_json(json.load(fh))


class WordEvaluator:
    """Evaluates words under a list of generator matrices, caching inverses."""

    def __init__(self, field: CoeffField, mats: Sequence[Matrix]):
        self.field = field
        self.mats = list(mats)
        self.invs = [fmat_inv(field, m) for m in self.mats]
        self.dim = len(self.mats[0]) if self.mats else 0
        self._cache: Dict[Word, Matrix] = {}

    def __call__(self, w: Word) -> Matrix:
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        F = self.field
        out = fmat_identity(F, self.dim)
        for g, k in w:
            base = self.mats[g] if k > 0 else self.invs[g]
            for _ in range(abs(k)):
                out = fmat_mul(F, out, base)
        self._cache[w] = out
        return out


def verify_representation(p: Presentation, r: Representation) -> bool:
    F = r.field
    ev = WordEvaluator(F, r.matrices(p))
    ident = fmat_identity(F, r.dim)
    return all(ev(rel) == ident for rel in p.relators)


def is_abelian_rep(r: Representation, p: Optional[Presentation] = None) -> bool:
    F = r.field
    mats = r.matrices(p) if p is not None else list(r.images.values())
    for i, a in enumerate(mats):
        for b in mats[i + 1:]:
            if fmat_mul(F, a, b) != fmat_mul(F, b, a):
                return False
    return True


def _quadratic_roots(F: CoeffField, tr, det) -> List:
    """Roots in F of x^2 - tr x + det."""
    if F.p == 2:
        return [x for x in (0, 1) if (x * x - tr * x + det) % 2 == 0]
    disc = F.sub(F.mul(tr, tr), F.mul(F(4), det))
    s = F.sqrt(disc)
    if s is None:
        return []
    half = F.inv(F(2))
    return sorted({F.mul(F.add(tr, s), half), F.mul(F.sub(tr, s), half)})


def _is_eigenvector(F, M: Matrix, v) -> bool:
    w = [F.add(F.mul(M[0][0], v[0]), F.mul(M[0][1], v[1])),
         F.add(F.mul(M[1][0], v[0]), F.mul(M[1][1], v[1]))]
    return F.sub(F.mul(v[0], w[1]), F.mul(v[1], w[0])) == F.zero


def is_irreducible(r: Representation, p: Optional[Presentation] = None) -> bool:
    """No common eigenvector over F or its quadratic extension (2-dim only)."""
    if r.dim != 2:
        raise ValueError("irreducibility test is implemented for 2-dimensional representations")
    F = r.field
    mats = r.matrices(p) if p is not None else list(r.images.values())
    nonscalar = [m for m in mats if m[0][1] or m[1][0] or m[0][0] != m[1][1]]
    if not nonscalar:
        return False
    A = nonscalar[0]
    roots = _quadratic_roots(F, fmat_trace(F, A), fmat_det(F, A))
    if roots:
        for lam in roots:
            shifted = [[F.sub(A[0][0], lam), A[0][1]], [A[1][0], F.sub(A[1][1], lam)]]
            for v in fmat_nullspace(F, shifted, 2):
                if all(_is_eigenvector(F, m, v) for m in mats):
                    return False
        return True
    # eigenlines of A are Galois-conjugate, so a common one forces commuting with A
    return not all(fmat_mul(F, A, m) == fmat_mul(F, m, A) for m in mats)


# -- SL(2, F_p) search --------------------------------------------------------

def _m2mul(p, a, b):
    return ((a[0] * b[0] + a[1] * b[2]) % p, (a[0] * b[1] + a[1] * b[3]) % p,
            (a[2] * b[0] + a[3] * b[2]) % p, (a[2] * b[1] + a[3] * b[3]) % p)


def _m2inv(p, a):
    # determinant one
    return (a[3], (-a[1]) % p, (-a[2]) % p, a[0])


_I2 = (1, 0, 0, 1)


def sl2_elements(p: int) -> List[Tuple[int, int, int, int]]:
    return [(a, b, c, d) for a, b, c, d in product(range(p), repeat=4) if (a * d - b * c) % p == 1]


def _eval2(p, assign, letters):
    out = _I2
    for g, s in letters:
        m = assign[g] if s > 0 else _m2inv(p, assign[g])
        out = _m2mul(p, out, m)
    return out


def _raw_search(pres: Presentation, p: int, first: Optional[Sequence[Tuple]] = None) -> List[Tuple]:
    """Depth-first search with relator propagation; ``first`` restricts the
    first generator chosen to a list of candidates."""
    n = pres.ngens
    elements = sl2_elements(p)
    rels = [r.letters() for r in pres.relators]
    results = []

    def propagate(assign):
        changed = True
        while changed:
            changed = False
            for letters in rels:
                unknown = {g for g, _ in letters if assign[g] is None}
                if not unknown:
                    if _eval2(p, assign, letters) != _I2:
                        return False
                    continue
                if len(unknown) == 1:
                    (g,) = unknown
                    pos = [i for i, (h, _) in enumerate(letters) if h == g]
                    if len(pos) != 1:
                        continue
                    i = pos[0]
                    # u g^s v = 1  =>  g^s = u^-1 v^-1
                    u = _eval2(p, assign, letters[:i])
                    v = _eval2(p, assign, letters[i + 1:])
                    val = _m2mul(p, _m2inv(p, u), _m2inv(p, v))
                    assign[g] = val if letters[i][1] > 0 else _m2inv(p, val)
                    changed = True
        return True

    def dfs(assign, depth):
        assign = list(assign)
        if not propagate(assign):
            return
        try:
            g = assign.index(None)
        except ValueError:
            results.append(tuple(assign))
            return
        for m in (first if depth == 0 and first is not None else elements):
            assign[g] = m
            dfs(assign, depth + 1)
        assign[g] = None

    dfs([None] * n, 0)
    return results


def _normal_form_search(pres: Presentation, p: int) -> List[Tuple]:
    rels = [r.letters() for r in pres.relators]
    out = []
    for s in range(1, p):
        si = pow(s, -1, p)
        X = (s, 1, 0, si)
        for u in range(1, p):
            Y = (s, 0, u, si)
            if all(_eval2(p, (X, Y), rel) == _I2 for rel in rels):
                out.append((X, Y))
    # abelian family: X = Y running over conjugacy-class representatives
    for M in _class_representatives(p):
        if all(_eval2(p, (M, M), rel) == _I2 for rel in rels):
            out.append((M, M))
    return out


def _class_representatives(p: int) -> List[Tuple]:
    gens = [(1, 1, 0, 1), (0, p - 1, 1, 0)]
    seen = set()
    reps = []
    for m in sl2_elements(p):
        if m in seen:
            continue
        reps.append(m)
        stack = [m]
        seen.add(m)
        while stack:
            x = stack.pop()
            for g in gens:
                y = _m2mul(p, _m2mul(p, g, x), _m2inv(p, g))
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return reps


def _primitive_root(p: int) -> int:
    return next(g for g in range(1, p) if len({pow(g, k, p) for k in range(p - 1)}) == p - 1)


def _orbit_representatives(tuples: Sequence[Tuple], p: int) -> List[Tuple]:
    """Smallest member of each GL(2, F_p)-conjugation orbit."""
    g = _primitive_root(p)
    conj = [((1, 1, 0, 1), (1, p - 1, 0, 1)), ((0, p - 1, 1, 0), (0, 1, p - 1, 0)),
            ((g, 0, 0, 1), (pow(g, -1, p), 0, 0, 1))]
    seen = set()
    reps = []
    for tup in sorted(tuples):
        if tup in seen:
            continue
        reps.append(tup)
        seen.add(tup)
        stack = [tup]
        while stack:
            x = stack.pop()
            for a, ai in conj:
                y = tuple(_m2mul(p, _m2mul(p, a, m), ai) for m in x)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return reps


def normal_form_applies(pres: Presentation) -> bool:
    """Two generators with equal abelianization exponent."""
    try:
        e = pres.exponents
    except SemanticError:
        return False
    return pres.ngens == 2 and e[0] == e[1]


def enum_sl2_reps(pres: Presentation, prime: int, irreducible_only: bool = False,
                  up_to_conjugacy: bool = False, limit: Optional[int] = None,
                  max_prime: int = 13, trace=None, normal_form: bool = False) -> List[Representation]:
    """SL(2, F_p) representations, sorted lexicographically.

    The default search is exhaustive; ``up_to_conjugacy`` keeps the smallest
    member of each GL(2, F_p)-conjugation orbit.  ``normal_form`` instead
    solves for X = [[s,1],[0,1/s]], Y = [[s,0],[u,1/s]] (plus abelian X = Y)
    on two-generator presentations with equal exponents.  That is fast but
    misses representations whose meridian image has no eigenvalue in F_p.
    ``trace`` keeps only representations with that trace on the first
    generator.
    """
    if prime > max_prime:
        raise SemanticError(f"search-space guard: p = {prime} exceeds {max_prime}")
    F = CoeffField(prime)
    if normal_form:
        if not normal_form_applies(pres):
            raise SemanticError("normal form needs two generators with equal exponent")
        tuples = _normal_form_search(pres, prime)
    else:
        if up_to_conjugacy:
            # every orbit meets a tuple whose first chosen image is a class representative
            tuples = _raw_search(pres, prime, _class_representatives(prime))
            tuples = _orbit_representatives(set(tuples), prime)
        else:
            tuples = _raw_search(pres, prime)
    tuples = sorted(set(tuples))
    out = []
    for tup in tuples:
        if trace is not None and tup and (tup[0][0] + tup[0][3]) % prime != F(trace):
            continue
        images = {g: ((m[0], m[1]), (m[2], m[3])) for g, m in zip(pres.generators, tup)}
        rep = Representation(F, images, 2)
        if irreducible_only and not is_irreducible(rep, pres):
            continue
        out.append(rep)
        if limit is not None and len(out) >= limit:
            break
    return out


def normal_form_parameters(rep: Representation, pres: Presentation) -> Optional[Tuple[int, int]]:
    """(s, u) if the representation is in the two-generator normal form."""
    X, Y = rep.matrices(pres)
    if X[1][0] == 0 and X[0][1] == 1 and Y[0][1] == 0 and Y[0][0] == X[0][0] and Y[1][0]:
        return X[0][0], Y[1][0]
    return None


# -- finite quotients -----------------------------------------------------

class FiniteQuotient:
    """Multiplication table of a finite group plus generator images."""

    def __init__(self, table: Sequence[Sequence[int]], images: Dict[str, int], check: bool = True,
                 seed: int = 0):
        self.table = [list(row) for row in table]
        self.order = len(self.table)
        self.images = dict(images)
        if check:
            self._check(seed)

    def _check(self, seed: int):
        n = self.order
        T = self.table
        if any(len(row) != n or any(not 0 <= x < n for x in row) for row in T):
            raise SemanticError("table is not a square table on 0..order-1")
        ident = next((e for e in range(n) if all(T[e][x] == x and T[x][e] == x for x in range(n))), None)
        if ident is None:
            raise SemanticError("table has no identity element")
        self.identity = ident
        for x in range(n):
            if ident not in T[x]:
                raise SemanticError(f"element {x} has no inverse")
        rng = random.Random(seed)
        triples = product(range(n), repeat=3) if n <= 24 else (
            (rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(4000))
        for a, b, c in triples:
            if T[T[a][b]][c] != T[a][T[b][c]]:
                raise SemanticError("table is not associative")
        for k, v in self.images.items():
            if not 0 <= v < n:
                raise SemanticError(f"image of {k} is not an element")

    def inverse(self, x: int) -> int:
        return self.table[x].index(self.identity)

    def generated(self) -> set:
        T = self.table
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(self.images.values())
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = T[x][g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen

    def evaluate(self, pres: Presentation, w: Word) -> int:
        T = self.table
        out = self.identity
        for g, k in w:
            x = self.images[pres.generators[g]]
            if k < 0:
                x = self.inverse(x)
            for _ in range(abs(k)):
                out = T[out][x]
        return out

    def to_json(self) -> dict:
        return {"order": self.order, "table": self.table, "images": dict(sorted(self.images.items()))}

    @classmethod
    def from_json(cls, d: dict) -> "FiniteQuotient":
        q = cls(d["table"], d["images"])
        if q.order != d["order"]:
            raise SemanticError("declared order does not match the table")
        return q


def load_quotient(path: str) -> FiniteQuotient:
    with open(path, encoding="utf-8") as fh:
        return FiniteQuotient.from_json(json.load(fh))


def quotient_from_permutations(images: Dict[str, Sequence[int]]) -> FiniteQuotient:
    """Close a set of permutations into a group and tabulate it."""
    perms = {k: tuple(v) for k, v in images.items()}
    degree = len(next(iter(perms.values())))
    ident = tuple(range(degree))

    def compose(a, b):  # apply b first, then a
        return tuple(a[b[i]] for i in range(degree))

    elements = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elements):
        x = elements[i]
        for g in perms.values():
            y = compose(x, g)
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
        i += 1
    table = [[index[compose(a, b)] for b in elements] for a in elements]
    return FiniteQuotient(table, {k: index[v] for k, v in perms.items()})


def verify_quotient(pres: Presentation, q: FiniteQuotient) -> bool:
    return all(q.evaluate(pres, r) == q.identity for r in pres.relators)


def regular_rep(q: FiniteQuotient) -> Representation:
    """Left-multiplication permutation matrices over Q."""
    if len(q.generated()) != q.order:
        raise SemanticError("generator images do not generate the quotient")
    n = q.order
    images = {}
    for name, g in q.images.items():
        m = [[0] * n for _ in range(n)]
        for h in range(n):
            m[q.table[g][h]][h] = 1
        images[name] = m
    return Representation(QQ, images, n)


# -- affine extension searches ----------------------------------------------

def _affine_system(pres: Presentation, F: CoeffField, linear: Sequence[Matrix]) -> List[list]:
    """Rows of the linear system making x_i -> [[L_i, b_i], [0, 1]] a representation.

    ``linear`` are the d x d blocks L_i; unknowns are the stacked b_i in F^(d n).
    The translation part of a word is tracked as a d x (d n) matrix.
    """
    n = pres.ngens
    d = len(linear[0])
    N = d * n
    invs = [fmat_inv(F, L) for L in linear]
    rows = []
    for r in pres.relators:
        M = fmat_identity(F, d)
        T = [[F.zero] * N for _ in range(d)]
        for g, k in r:
            for _ in range(abs(k)):
                if k > 0:
                    Lg = linear[g]
                    Tg = [[F.one if c == d * g + a else F.zero for c in range(N)] for a in range(d)]
                else:
                    Lg = invs[g]
                    # translation of the inverse is -L^-1 b_g
                    Tg = [[F.zero] * N for _ in range(d)]
                    for a in range(d):
                        for c in range(d):
                            Tg[a][d * g + c] = F.neg(invs[g][a][c])
                # (M, T) * (Lg, Tg) = (M Lg, M Tg + T)
                newT = []
                for a in range(d):
                    row = list(T[a])
                    for c in range(d):
                        if M[a][c]:
                            m = M[a][c]
                            row = [F.add(x, F.mul(m, y)) for x, y in zip(row, Tg[c])]
                    newT.append(row)
                T = newT
                M = fmat_mul(F, M, Lg)
        if M != fmat_identity(F, d):
            raise SemanticError("linear part of a relator is not the identity")
        rows.extend(T)
    return rows


def _in_span(F, vectors, v) -> bool:
    from .linalg import fmat_rank
    if not vectors:
        return not any(v)
    return fmat_rank(F, tuple(tuple(x) for x in vectors)) == fmat_rank(
        F, tuple(tuple(x) for x in vectors + [v]))


def derham_extension_search(pres: Presentation, a, field: CoeffField) -> Optional[List]:
    """A non-trivial extension x_i -> [[a, b_i], [0, 1]], or None.

    Solutions b = c (1, ..., 1) come from conjugating the diagonal
    representation and always exist; a witness is a kernel vector outside
    that line.
    """
    if not pres.wirtinger:
        raise SemanticError("extension search needs a presentation with every generator a meridian")
    F = field
    a = F(a)
    if a == F.zero or a == F.one:
        raise SemanticError("a must differ from 0 and 1")
    n = pres.ngens
    rows = _affine_system(pres, F, [((a,),)] * n)
    kernel = fmat_nullspace(F, rows, n)
    ones = [F.one] * n
    for v in kernel:
        if not _in_span(F, [ones], v):
            return v
    return None


def wada_extension_check(pres: Presentation, rep: Representation, a) -> bool:
    """Does x_i -> [[a^e_i X_i, b_i], [0, 1]] extend beyond coboundaries?

    Coboundaries b_i = (a^e_i X_i - I) c span a 2-dimensional solution
    space; the answer is whether the kernel is larger.
    """
    if rep.dim != 2:
        raise SemanticError("extension check needs a 2-dimensional representation")
    F = rep.field
    a = F(a)
    if a == F.zero:
        raise SemanticError("a must be nonzero")
    e = pres.exponents
    mats = rep.matrices(pres)
    linear = []
    for m, ei in zip(mats, e):
        c = F.reduce(a ** ei) if F.p == 0 else pow(a, ei % (F.p - 1), F.p)
        linear.append(tuple(tuple(F.mul(c, x) for x in row) for row in m))
    first = linear[0]
    shifted = ((F.sub(first[0][0], 1), first[0][1]), (first[1][0], F.sub(first[1][1], 1)))
    if fmat_det(F, shifted) == F.zero:
        raise SemanticError("a is an eigenvalue of the first generator image")
    rows = _affine_system(pres, F, linear)
    kernel = fmat_nullspace(F, rows, 2 * pres.ngens)
    return len(kernel) > 2
