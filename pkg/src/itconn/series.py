"""Truncated power series R[[T]]/T^{N+1} over an arbitrary coefficient ring.

The coefficient ring is a small adapter object providing zero/one and
add/sub/mul/mul_int/is_zero (plus inv for rings where series inversion is
needed). The same class backs every R[[T]]-valued computation in the
package: generator images of higher derivations, torsor coactions, the
theta-series of the Galois workbench.
"""

from __future__ import annotations

from .errors import DescriptorMismatch


class FieldRing:
    """Adapt a field (zero/one + element dunders) to the ring protocol."""

    def __init__(self, field):
        self.field = field
        self.zero = field.zero
        self.one = field.one

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def mul_int(self, a, c: int):
        if c == 0:
            return self.zero
        acc = self.zero
        base = a if c > 0 else -a
        for _ in range(abs(c)):
            acc = acc + base
        return acc

    def is_zero(self, a):
        return a == self.zero

    def inv(self, a):
        return self.one / a

    def __eq__(self, other):
        return isinstance(other, FieldRing) and self.field == other.field

    def __hash__(self):
        return hash(("FieldRing", self.field))


class TSeries:
    __slots__ = ("ring", "coeffs", "order")

    def __init__(self, ring, coeffs, order: int):
        self.ring = ring
        self.order = order
        cs = list(coeffs)
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        while len(cs) < order + 1:
            cs.append(ring.zero)
        self.coeffs = cs

    @staticmethod
    def const(ring, c, order: int) -> "TSeries":
        return TSeries(ring, [c], order)

    @staticmethod
    def zero(ring, order: int) -> "TSeries":
        return TSeries(ring, [], order)

    @staticmethod
    def one(ring, order: int) -> "TSeries":
        return TSeries(ring, [ring.one], order)

    def _check(self, other: "TSeries"):
        if self.order != other.order or self.ring != other.ring:
            raise DescriptorMismatch("series truncation or coefficient ring mismatch")

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k <= self.order else self.ring.zero

    def __add__(self, other):
        self._check(other)
        r = self.ring
        return TSeries(r, [r.add(a, b) for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other):
        self._check(other)
        r = self.ring
        return TSeries(r, [r.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __neg__(self):
        r = self.ring
        return TSeries(r, [r.neg(a) for a in self.coeffs], self.order)

    def __mul__(self, other):
        self._check(other)
        r = self.ring
        n = self.order
        out = [r.zero] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if r.is_zero(a):
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not r.is_zero(b):
                    out[i + j] = r.add(out[i + j], r.mul(a, b))
        return TSeries(r, out, n)

    def scale_coeff(self, c) -> "TSeries":
        r = self.ring
        return TSeries(r, [r.mul(c, a) for a in self.coeffs], self.order)

    def mul_int(self, c: int) -> "TSeries":
        r = self.ring
        return TSeries(r, [r.mul_int(a, c) for a in self.coeffs], self.order)

    def scale_action(self, powers: list) -> "TSeries":
        """Component k multiplied by powers[k] (the K-action a.g uses a^k)."""
        r = self.ring
        return TSeries(r, [r.mul(powers[k], a) for k, a in enumerate(self.coeffs)], self.order)

    def shift(self, k: int) -> "TSeries":
        """Multiply by T^k."""
        if k == 0:
            return self
        return TSeries(self.ring, [self.ring.zero] * k + self.coeffs, self.order)

    def __pow__(self, n: int) -> "TSeries":
        result = TSeries.one(self.ring, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "TSeries":
        """Multiplicative inverse; requires an invertible degree-0 part."""
        r = self.ring
        inv0 = r.inv(self.coeffs[0])
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = r.zero
            for i in range(k):
                acc = r.add(acc, r.mul(out[i], self.coeffs[k - i]))
            out.append(r.neg(r.mul(inv0, acc)))
        return TSeries(r, out, self.order)

    def map_coeffs(self, fn, ring=None) -> "TSeries":
        return TSeries(ring or self.ring, [fn(a) for a in self.coeffs], self.order)

    def truncate(self, order: int) -> "TSeries":
        return TSeries(self.ring, self.coeffs[: order + 1], order)

    def is_zero(self) -> bool:
        r = self.ring
        return all(r.is_zero(a) for a in self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, TSeries)
            and self.order == other.order
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order, tuple(map(str, self.coeffs))))

    def __repr__(self):
        terms = [f"({c})*T^{k}" for k, c in enumerate(self.coeffs) if not self.ring.is_zero(c)]
        return " + ".join(terms) if terms else "0"
