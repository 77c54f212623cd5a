"""Coefficient fields: the rationals and prime fields F_p.

Elements are plain Python values.  Over Q they are ``Fraction`` instances,
over F_p they are ints in ``range(p)``.  All arithmetic goes through the
field object so that callers never have to remember to reduce mod p.
"""

from fractions import Fraction
from math import isqrt


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class CoeffField:
    """Either Q (``p == 0``) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p != 0:
            if not isinstance(p, int) or p >= 2 ** 31 or not _is_prime(p):
                raise ValueError(f"field characteristic must be a prime below 2^31, got {p}")
        self.p = p

    @classmethod
    def rationals(cls) -> "CoeffField":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "CoeffField":
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __eq__(self, other):
        return isinstance(other, CoeffField) and other.p == self.p

    def __hash__(self):
        return hash(("CoeffField", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    # -- elements -------------------------------------------------------

    def __call__(self, x):
        """Coerce an int, Fraction or string such as ``"3/2"`` into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def add(self, a, b):
        return a + b if self.p == 0 else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p == 0 else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p == 0 else (a * b) % self.p

    def neg(self, a):
        return -a if self.p == 0 else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p == 0 else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def reduce(self, a):
        """Bring an unreduced int (F_p) or Fraction (Q) into canonical form."""
        return a if self.p == 0 else a % self.p

    def elements(self):
        if self.p == 0:
            raise ValueError("Q is infinite")
        return range(self.p)

    def sqrt(self, a):
        """A square root of ``a`` in the field, or None."""
        if self.p == 0:
            if a < 0:
                return None
            n, d = a.numerator, a.denominator
            rn, rd = isqrt(n), isqrt(d)
            return Fraction(rn, rd) if rn * rn == n and rd * rd == d else None
        a %= self.p
        if a == 0 or self.p == 2:
            return a
        if pow(a, (self.p - 1) // 2, self.p) != 1:
            return None
        for r in range(1, self.p):
            if r * r % self.p == a:
                return r
        return None  # unreachable for prime p

    def to_json(self) -> dict:
        return {"type": "Q"} if self.p == 0 else {"type": "Fp", "p": self.p}

    @classmethod
    def from_json(cls, d: dict) -> "CoeffField":
        kind = d.get("type")
        if kind == "Q":
            return cls(0)
        if kind == "Fp":
            return cls(int(d["p"]))
        raise ValueError(f"unknown field type {kind!r}")

    def format(self, a) -> str:
        """Human form: rationals as ``a/b``, F_p elements in the symmetric range."""
        if self.p == 0:
            return str(a)
        return str(a - self.p if a > self.p // 2 else a)

    def encode(self, a):
        """JSON form of a field element."""
        if self.p:
            return a
        return a.numerator if a.denominator == 1 else str(a)


QQ = CoeffField(0)


def GF(p: int) -> CoeffField:
    return CoeffField(p)
