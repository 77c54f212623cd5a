"""Fox free differentials."""

from typing import Dict, List, Union

from .freegroup import GroupRingElement, Word


def _run_derivative(prefix: Word, g: int, k: int, out: Dict[Word, int]) -> None:
    # d(x^k)/dx = 1 + x + ... + x^(k-1) for k > 0, -(x^-1 + ... + x^k) for k < 0
    if k > 0:
        exps, sign = range(0, k), 1
    else:
        exps, sign = range(k, 0), -1
    for m in exps:
        w = prefix * Word.gen(g, m)
        c = out.get(w, 0) + sign
        if c:
            out[w] = c
        else:
            del out[w]


def _word_derivative(w: Word, j: int) -> Dict[Word, int]:
    out: Dict[Word, int] = {}
    prefix = Word()
    for g, k in w:
        if g == j:
            _run_derivative(prefix, g, k, out)
        prefix = prefix * Word.gen(g, k)
    return out


def fox_derivative(w: Union[Word, GroupRingElement], j: int) -> GroupRingElement:
    """The Fox derivative of a word or group-ring element with respect to generator ``j``."""
    if isinstance(w, Word):
        res = GroupRingElement()
        res.terms = _word_derivative(w, j)
        return res
    total: Dict[Word, int] = {}
    for word, c in w.items():
        for v, d in _word_derivative(word, j).items():
            s = total.get(v, 0) + c * d
            if s:
                total[v] = s
            else:
                total.pop(v, None)
    res = GroupRingElement()
    res.terms = total
    return res


def fox_jacobian(relators: List[Word], ngens: int) -> List[List[GroupRingElement]]:
    """Matrix of Fox derivatives, rows indexed by relators, columns by generators."""
    return [[fox_derivative(r, j) for j in range(ngens)] for r in relators]


def check_fundamental_formula(w: Word, ngens: int = None) -> bool:
    """Check w - 1 == sum_j (dw/dx_j)(x_j - 1) exactly."""
    if ngens is None:
        ngens = max((g for g, _ in w), default=-1) + 1
    rhs = GroupRingElement()
    for j in range(ngens):
        rhs = rhs + fox_derivative(w, j) * (GroupRingElement.of(Word.gen(j)) - 1)
    return GroupRingElement.of(w) - 1 == rhs
