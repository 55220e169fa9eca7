"""Sparse multivariate polynomials over F_p (the rings K[t_1..t_m]).

Only what the higher-differential and connection layers need: exact
arithmetic, per-variable Hasse components, substitution into an arbitrary
commutative ring, and the unit test in the localisation at (t_1,...,t_m).
"""

from __future__ import annotations

from .fields import check_prime
from .frob import binom_int


class MPoly:
    __slots__ = ("p", "m", "terms")

    def __init__(self, terms: dict, p: int, m: int, *, _trusted: bool = False):
        self.p = p
        self.m = m
        if _trusted:
            self.terms = terms
        else:
            check_prime(p)
            clean = {}
            for e, c in terms.items():
                c %= p
                if c:
                    if len(e) != m:
                        raise ValueError("exponent arity mismatch")
                    clean[tuple(e)] = c
            self.terms = clean

    @staticmethod
    def zero(p: int, m: int) -> "MPoly":
        return MPoly({}, p, m, _trusted=True)

    @staticmethod
    def one(p: int, m: int) -> "MPoly":
        return MPoly({(0,) * m: 1}, p, m, _trusted=True)

    @staticmethod
    def const(c: int, p: int, m: int) -> "MPoly":
        c %= p
        return MPoly({(0,) * m: c} if c else {}, p, m, _trusted=True)

    @staticmethod
    def gen(j: int, p: int, m: int) -> "MPoly":
        """The variable t_{j+1} (0-based index j)."""
        e = [0] * m
        e[j] = 1
        return MPoly({tuple(e): 1}, p, m, _trusted=True)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(x == 0 for x in e) for e in self.terms)

    def constant_value(self) -> int:
        return self.terms.get((0,) * self.m, 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_unit_local(self) -> bool:
        """Unit in the localisation at (t_1,...,t_m): nonzero constant term."""
        return self.constant_value() != 0

    def __add__(self, other: "MPoly") -> "MPoly":
        p = self.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MPoly(out, p, self.m, _trusted=True)

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __neg__(self) -> "MPoly":
        p = self.p
        return MPoly({e: (-c) % p for e, c in self.terms.items()}, p, self.m, _trusted=True)

    def __mul__(self, other: "MPoly") -> "MPoly":
        p = self.p
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = (out.get(e, 0) + c1 * c2) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return MPoly(out, p, self.m, _trusted=True)

    def scale(self, c: int) -> "MPoly":
        c %= self.p
        if c == 0:
            return MPoly.zero(self.p, self.m)
        return MPoly({e: (a * c) % self.p for e, a in self.terms.items()}, self.p, self.m, _trusted=True)

    def __pow__(self, n: int) -> "MPoly":
        result = MPoly.one(self.p, self.m)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def hasse(self, j: int, k: int) -> "MPoly":
        """phi_{t_{j+1}}^{(k)}: C(e_j, k)-weighted shift in the j-th variable."""
        p = self.p
        out: dict = {}
        for e, c in self.terms.items():
            if e[j] >= k:
                b = binom_int(e[j], k, p)
                if b:
                    ne = list(e)
                    ne[j] -= k
                    ne = tuple(ne)
                    v = (out.get(ne, 0) + c * b) % p
                    if v:
                        out[ne] = v
                    else:
                        out.pop(ne, None)
        return MPoly(out, p, self.m, _trusted=True)

    def substitute(self, ring, images: list):
        """Evaluate at images[j] inside a commutative ring adapter.

        `ring` provides zero/one/add/mul (and mul_int for F_p scaling).
        """
        cache = [{0: ring.one} for _ in range(self.m)]

        def power(j, n):
            c = cache[j]
            if n not in c:
                c[n] = ring.mul(power(j, n - 1), images[j])
            return c[n]

        acc = ring.zero
        for e, c in self.terms.items():
            term = ring.one
            for j, n in enumerate(e):
                if n:
                    term = ring.mul(term, power(j, n))
            acc = ring.add(acc, ring.mul_int(term, c))
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, MPoly)
            and self.p == other.p
            and self.m == other.m
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.p, self.m, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MPoly({self.terms}, {self.p}, {self.m})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = [] if c == 1 and any(e) else [str(c)]
            for j, n in enumerate(e):
                v = "t" if self.m == 1 else f"t{j + 1}"
                if n == 1:
                    factors.append(v)
                elif n > 1:
                    factors.append(f"{v}^{n}")
            parts.append("*".join(factors) if factors else "1")
        return "+".join(parts)


class MPolyRing:
    """Ring adapter for K[t_1..t_m] over F_p."""

    def __init__(self, p: int, m: int):
        self.p = check_prime(p)
        self.m = m
        self.zero = MPoly.zero(p, m)
        self.one = MPoly.one(p, m)

    def of(self, n: int) -> MPoly:
        return MPoly.const(n, self.p, self.m)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def mul_int(self, a, c: int):
        return a.scale(c)

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a.is_zero()

    def inv(self, a):
        c = a.constant_value()
        if not a.is_constant() or c == 0:
            raise ZeroDivisionError("non-unit in polynomial ring")
        return MPoly.const(pow(c, -1, self.p), self.p, self.m)

    def __eq__(self, other):
        return isinstance(other, MPolyRing) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash(("MPolyRing", self.p, self.m))

    def __repr__(self):
        return f"MPolyRing({self.p}, {self.m})"
