"""Q[t]: the characteristic-zero lane (exact rationals)."""

from __future__ import annotations

from fractions import Fraction


class QPoly:
    __slots__ = ("cs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.cs = cs

    @staticmethod
    def zero() -> "QPoly":
        return QPoly([])

    @staticmethod
    def one() -> "QPoly":
        return QPoly([1])

    @staticmethod
    def t() -> "QPoly":
        return QPoly([0, 1])

    @property
    def degree(self) -> int:
        return len(self.cs) - 1

    def is_zero(self) -> bool:
        return not self.cs

    def coeff(self, k: int) -> Fraction:
        return self.cs[k] if 0 <= k < len(self.cs) else Fraction(0)

    def __add__(self, other):
        n = max(len(self.cs), len(other.cs))
        return QPoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.cs), len(other.cs))
        return QPoly([self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self):
        return QPoly([-c for c in self.cs])

    def __mul__(self, other):
        if not self.cs or not other.cs:
            return QPoly.zero()
        out = [Fraction(0)] * (len(self.cs) + len(other.cs) - 1)
        for i, a in enumerate(self.cs):
            for j, b in enumerate(other.cs):
                out[i + j] += a * b
        return QPoly(out)

    def scale(self, c) -> "QPoly":
        c = Fraction(c)
        return QPoly([a * c for a in self.cs])

    def derivative(self) -> "QPoly":
        return QPoly([i * self.cs[i] for i in range(1, len(self.cs))])

    def __eq__(self, other):
        return isinstance(other, QPoly) and self.cs == other.cs

    def __hash__(self):
        return hash(tuple(self.cs))

    def __repr__(self):
        return f"QPoly({self.cs})"


class QPolyRing:
    """Ring adapter for Q[t]."""

    zero = QPoly.zero()
    one = QPoly.one()

    @staticmethod
    def of(n) -> QPoly:
        return QPoly([n])

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def mul_int(self, a, c):
        return a.scale(c)

    def is_zero(self, a):
        return a.is_zero()

    def inv(self, a):
        if a.degree != 0:
            raise ZeroDivisionError("non-unit in Q[t]")
        return QPoly([1 / a.cs[0]])

    def __eq__(self, other):
        return isinstance(other, QPolyRing)

    def __hash__(self):
        return hash("QPolyRing")
