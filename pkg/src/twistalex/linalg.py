"""Small exact linear-algebra kernels.

Two flavours live here.  ``fmat_*`` functions work on constant matrices
(tuples of tuples) over a :class:`CoeffField`, where elements are bare ints
or Fractions and the field object does the arithmetic.  The generic
helpers work on matrices (lists of lists) whose entries carry their own
arithmetic, such as Laurent polynomials or rational functions.
"""

from typing import Callable, List, Optional, Sequence, Tuple

Matrix = Tuple[Tuple, ...]


# -- constant matrices over a CoeffField ---------------------------------

def fmat(F, rows) -> Matrix:
    return tuple(tuple(F(x) for x in row) for row in rows)


def fmat_identity(F, n: int) -> Matrix:
    return tuple(tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n))


def fmat_mul(F, A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    return tuple(
        tuple(F.reduce(sum(a * b for a, b in zip(row, col))) for col in cols)
        for row in A
    )


def fmat_add(F, A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(F.add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def fmat_scale(F, c, A: Matrix) -> Matrix:
    return tuple(tuple(F.mul(c, a) for a in row) for row in A)


def fmat_transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def _row_reduce(F, rows: List[list]):
    """In-place reduced row echelon form; returns (pivot columns, swaps parity, det factor)."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    sign = 1
    scale = F.one
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        inv = F.inv(rows[r][c])
        scale = F.mul(scale, rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots, sign, scale


def fmat_det(F, A: Matrix):
    n = len(A)
    if n == 0:
        return F.one
    rows = [list(r) for r in A]
    pivots, sign, scale = _row_reduce(F, rows)
    if len(pivots) < n:
        return F.zero
    return scale if sign == 1 else F.neg(scale)


def fmat_rank(F, A: Matrix) -> int:
    if not A or not A[0]:
        return 0
    rows = [list(r) for r in A]
    return len(_row_reduce(F, rows)[0])


def fmat_inv(F, A: Matrix) -> Matrix:
    n = len(A)
    rows = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(A)]
    pivots, _, _ = _row_reduce(F, rows)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(r[n:]) for r in rows)


def fmat_nullspace(F, A: Sequence[Sequence], ncols: Optional[int] = None) -> List[list]:
    """Basis of {v : A v = 0} as a list of column vectors."""
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    if not A:
        return [[F.one if i == j else F.zero for i in range(n)] for j in range(n)]
    rows = [list(r) for r in A]
    pivots, _, _ = _row_reduce(F, rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * n
        v[f] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(rows[i][f])
        basis.append(v)
    return basis


def fmat_pow(F, A: Matrix, k: int, inverse: Optional[Matrix] = None) -> Matrix:
    if k < 0:
        A = inverse if inverse is not None else fmat_inv(F, A)
        k = -k
    result = fmat_identity(F, len(A))
    base = A
    while k:
        if k & 1:
            result = fmat_mul(F, result, base)
        k >>= 1
        if k:
            base = fmat_mul(F, base, base)
    return result


def fmat_trace(F, A: Matrix):
    return F.reduce(sum(A[i][i] for i in range(len(A))))


# -- matrices with self-arithmetic entries --------------------------------

def mat_mul(A: List[list], B: List[list], zero) -> List[list]:
    if not A:
        return []
    cols = list(zip(*B)) if B else []
    if not cols:
        return [[] for _ in A]
    out = []
    for row in A:
        new = []
        for col in cols:
            acc = zero
            for a, b in zip(row, col):
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            new.append(acc)
        out.append(new)
    return out


def is_zero_matrix(A: List[list]) -> bool:
    return all(x.is_zero() for row in A for x in row)


def _eliminate(rows: List[list], one):
    """Gaussian elimination over a field whose elements divide exactly.

    Returns (rank, determinant of the leading square block when full rank).
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    det = one
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            if det is not None:
                det = -det
        p = rows[r][c]
        if det is not None:
            det = det * p
        for i in range(r + 1, m):
            if not rows[i][c].is_zero():
                f = rows[i][c] / p
                rows[i] = [x - f * y if not y.is_zero() else x for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == m:
            break
    return r, det


def gauss_rank(M: List[list]) -> int:
    if not M or not M[0]:
        return 0
    return _eliminate([list(r) for r in M], None)[0]


def gauss_det(M: List[list], one):
    n = len(M)
    if n == 0:
        return one
    rank, det = _eliminate([list(r) for r in M], one)
    return det if rank == n else one - one


def independent_rows(M: List[list], order: Optional[Sequence[int]] = None) -> List[int]:
    """Greedy maximal set of linearly independent rows, scanned in ``order``."""
    if order is None:
        order = range(len(M))
    basis: List[Tuple[int, list]] = []  # (pivot column, reduced row)
    chosen = []
    for i in order:
        v = list(M[i])
        for pc, b in basis:
            if not v[pc].is_zero():
                f = v[pc] / b[pc]
                v = [x - f * y if not y.is_zero() else x for x, y in zip(v, b)]
        pc = next((c for c, x in enumerate(v) if not x.is_zero()), None)
        if pc is not None:
            basis.append((pc, v))
            chosen.append(i)
    return sorted(chosen)


# -- Smith normal form over a Euclidean domain ----------------------------

class EuclideanOps:
    """Hooks describing a Euclidean domain for :func:`smith_diagonal`."""

    def __init__(self, is_zero: Callable, size: Callable, divmod_: Callable,
                 normalize: Callable, zero, one):
        self.is_zero = is_zero
        self.size = size
        self.divmod = divmod_
        self.normalize = normalize
        self.zero = zero
        self.one = one


def smith_diagonal(M: List[list], ops: EuclideanOps) -> List:
    """Diagonal of the Smith normal form, length min(rows, cols), zeros last."""
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if A else 0
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(ops.size(A[i][j]), i, j) for i in range(t, m) for j in range(t, n)
              if not ops.is_zero(A[i][j])]
        if not nz:
            break
        _, pi, pj = min(nz)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            piv = A[t][t]
            for i in range(t + 1, m):
                if not ops.is_zero(A[i][t]):
                    q, r = ops.divmod(A[i][t], piv)
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if not ops.is_zero(r):
                        done = False
            for j in range(t + 1, n):
                if not ops.is_zero(A[t][j]):
                    q, r = ops.divmod(A[t][j], piv)
                    for row in A:
                        row[j] = row[j] - q * row[t]
                    if not ops.is_zero(r):
                        done = False
            if not done:
                # move the smallest nonzero entry of row/column t to the pivot
                cand = [(ops.size(A[i][t]), i, t) for i in range(t, m) if not ops.is_zero(A[i][t])]
                cand += [(ops.size(A[t][j]), t, j) for j in range(t, n) if not ops.is_zero(A[t][j])]
                _, pi, pj = min(cand)
                A[t], A[pi] = A[pi], A[t]
                for row in A:
                    row[t], row[pj] = row[pj], row[t]
                continue
            # pivot must divide every remaining entry
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if not ops.is_zero(ops.divmod(A[i][j], A[t][t])[1]):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
        diag.append(ops.normalize(A[t][t]))
        t += 1
    diag.extend([ops.zero] * (min(m, n) - len(diag)))
    return diag


INTEGER_OPS = EuclideanOps(
    is_zero=lambda a: a == 0,
    size=abs,
    divmod_=lambda a, b: (a // b, a - (a // b) * b),
    normalize=abs,
    zero=0,
    one=1,
)
