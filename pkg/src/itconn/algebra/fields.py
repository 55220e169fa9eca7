"""Prime fields F_p with exact arithmetic (2 <= p <= 97)."""

from __future__ import annotations

from fractions import Fraction

SUPPORTED_PRIME_BOUND = 97


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> int:
    if not (2 <= p <= SUPPORTED_PRIME_BOUND and is_prime(p)):
        raise ValueError(f"modulus must be a prime in [2, {SUPPORTED_PRIME_BOUND}], got {p}")
    return p


class Fp:
    """An element of F_p, kept reduced to 0 <= value < p."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = p
        self.value = value % p

    def _same(self, other: "Fp") -> None:
        if self.p != other.p:
            raise ValueError(f"mixed moduli {self.p} and {other.p}")

    def __add__(self, other):
        self._same(other)
        return Fp(self.value + other.value, self.p)

    def __sub__(self, other):
        self._same(other)
        return Fp(self.value - other.value, self.p)

    def __mul__(self, other):
        self._same(other)
        return Fp(self.value * other.value, self.p)

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __truediv__(self, other):
        self._same(other)
        if other.value == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return Fp(self.value * pow(other.value, -1, self.p), self.p)

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return Fp(pow(self.value, -1, self.p), self.p)

    def __pow__(self, k: int):
        return Fp(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.p
        return isinstance(other, Fp) and self.p == other.p and self.value == other.value

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class PrimeField:
    """Field adapter for F_p, used by the generic linear algebra."""

    def __init__(self, p: int):
        self.p = check_prime(p)
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    def of(self, n: int) -> Fp:
        return Fp(n, self.p)

    def elements(self):
        return [Fp(v, self.p) for v in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class RationalField:
    """Field adapter for exact rationals (the char-0 lane)."""

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def of(n) -> Fraction:
        return Fraction(n)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "RationalField()"


QQ = RationalField()
