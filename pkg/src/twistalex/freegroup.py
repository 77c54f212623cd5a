"""Reduced words in a free group and the integral group ring.

A word is a tuple of ``(generator index, exponent)`` runs.  Construction
always freely reduces, so two equal group elements are equal tuples.
"""

import random
from typing import Callable, Dict, Iterable, List, Tuple


def _reduce(runs: Iterable[Tuple[int, int]]) -> List[Tuple[int, int]]:
    out: List[Tuple[int, int]] = []
    for g, k in runs:
        if k == 0:
            continue
        if out and out[-1][0] == g:
            k += out[-1][1]
            out.pop()
            if k:
                out.append((g, k))
        else:
            out.append((g, k))
    return out


class Word(tuple):
    """Freely reduced word, stored as exponent runs."""

    __slots__ = ()

    def __new__(cls, runs=()):
        return tuple.__new__(cls, _reduce(runs))

    @classmethod
    def gen(cls, g: int, k: int = 1) -> "Word":
        return cls(((g, k),))

    @classmethod
    def from_letters(cls, letters: Iterable[Tuple[int, int]]) -> "Word":
        return cls(letters)

    def letters(self) -> List[Tuple[int, int]]:
        """Expand into single letters ``(g, +1)`` / ``(g, -1)``."""
        out = []
        for g, k in self:
            s = 1 if k > 0 else -1
            out.extend([(g, s)] * abs(k))
        return out

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if not self:
            return other
        if not other:
            return self
        return Word(tuple.__add__(self, other))

    def inverse(self) -> "Word":
        return Word((g, -k) for g, k in reversed(self))

    __invert__ = inverse

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        out = Word()
        for _ in range(abs(n)):
            out = out * base
        return out

    def length(self) -> int:
        return sum(abs(k) for _, k in self)

    def exponent_sum(self, g: int) -> int:
        return sum(k for h, k in self if h == g)

    def generators(self) -> set:
        return {g for g, _ in self}

    def __repr__(self):
        if not self:
            return "Word()"
        return "Word(" + " ".join(f"x{g}^{k}" for g, k in self) + ")"

    def format(self, names) -> str:
        if not self:
            return "1"
        return " ".join(names[g] if k == 1 else f"{names[g]}^{k}" for g, k in self)


def word_multiply(a: Word, b: Word) -> Word:
    return a * b


class GroupRingElement:
    """Finite Z-linear combination of words with no zero coefficients stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: Dict[Word, int] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for w, c in items:
                if not isinstance(w, Word):
                    w = Word(w)
                c = clean.get(w, 0) + c
                if c:
                    clean[w] = c
                else:
                    clean.pop(w, None)
        self.terms = clean

    @classmethod
    def one(cls) -> "GroupRingElement":
        return cls({Word(): 1})

    @classmethod
    def zero(cls) -> "GroupRingElement":
        return cls()

    @classmethod
    def of(cls, w: Word, c: int = 1) -> "GroupRingElement":
        return cls({w: c})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingElement({Word(): other})
        if isinstance(other, Word):
            other = GroupRingElement({other: 1})
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _coerce(self, other):
        if isinstance(other, GroupRingElement):
            return other
        if isinstance(other, Word):
            return GroupRingElement({other: 1})
        if isinstance(other, int):
            return GroupRingElement({Word(): other})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            c = out.get(w, 0) + c
            if c:
                out[w] = c
            else:
                del out[w]
        res = GroupRingElement()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = GroupRingElement()
        res.terms = {w: -c for w, c in self.terms.items()}
        return res

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement({w: c * other for w, c in self.terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: Dict[Word, int] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                w = a * b
                c = out.get(w, 0) + ca * cb
                if c:
                    out[w] = c
                else:
                    out.pop(w, None)
        res = GroupRingElement()
        res.terms = out
        return res

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda wc: (len(wc[0]), wc[0])):
            parts.append(f"{c}*{w!r}")
        return " + ".join(parts)


def ring_multiply(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    return a * b


def ring_add(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    return a + b


def ring_map(e: GroupRingElement, f: Callable[[Word], object], zero=0):
    """Linear extension of ``f`` to the group ring.

    ``f`` should be multiplicative on words; targets only need ``+`` and
    multiplication by an int.  ``zero`` is returned for the zero element.
    """
    acc = zero
    for w, c in e.terms.items():
        img = f(w)
        acc = acc + (img if c == 1 else c * img)
    return acc


def random_word(rng: random.Random, ngens: int, max_len: int) -> Word:
    n = rng.randint(0, max_len)
    return Word((rng.randrange(ngens), rng.choice((1, -1))) for _ in range(n))
