"""Monogenic extensions F_p(t)[y]/(m(y)) with exact arithmetic.

Used by the Newton lifting of higher derivations to formally etale
extensions. The minimal polynomial is monic with rational-function
coefficients; elements are reduced representatives of degree < deg m.
"""

from __future__ import annotations

from ..errors import NotEtale
from .ratfunc import RatFunc, RatFuncField


def _poly_divmod(num: list, den: list, field) -> tuple[list, list]:
    """Dense division of coefficient lists over a field (X-polynomials)."""
    rem = num[:]
    q = [field.zero] * max(len(rem) - len(den) + 1, 0)
    inv_lead = field.one / den[-1]
    for i in range(len(rem) - 1, len(den) - 2, -1):
        c = rem[i]
        if c != field.zero:
            f = c * inv_lead
            q[i - len(den) + 1] = f
            for j, dj in enumerate(den):
                rem[i - len(den) + 1 + j] = rem[i - len(den) + 1 + j] - f * dj
    while rem and rem[-1] == field.zero:
        rem.pop()
    while q and q[-1] == field.zero:
        q.pop()
    return q, rem


def _trimmed(cs: list, field) -> list:
    out = cs[:]
    while out and out[-1] == field.zero:
        out.pop()
    return out


def _poly_xgcd(a: list, b: list, field):
    r0, r1 = _trimmed(a, field), _trimmed(b, field)
    u0, u1 = [field.one], []
    v0, v1 = [], [field.one]

    def sub(x, y):
        out = x[:] + [field.zero] * (len(y) - len(x))
        for i, c in enumerate(y):
            out[i] = out[i] - c
        while out and out[-1] == field.zero:
            out.pop()
        return out

    def mul(x, y):
        if not x or not y:
            return []
        out = [field.zero] * (len(x) + len(y) - 1)
        for i, xi in enumerate(x):
            for j, yj in enumerate(y):
                out[i + j] = out[i + j] + xi * yj
        while out and out[-1] == field.zero:
            out.pop()
        return out

    while r1:
        q, r = _poly_divmod(r0, r1, field)
        r0, r1 = r1, r
        u0, u1 = u1, sub(u0, mul(q, u1))
        v0, v1 = v1, sub(v0, mul(q, v1))
    return r0, u0, v0


class ExtRing:
    """F_p(t)[y]/(m), m monic of degree d >= 1."""

    def __init__(self, p: int, minpoly: list[RatFunc]):
        self.p = p
        self.base = RatFuncField(p)
        if len(minpoly) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        lead = minpoly[-1]
        if not lead.is_one():
            minpoly = [c / lead for c in minpoly]
        self.minpoly = list(minpoly)
        self.deg = len(minpoly) - 1
        self.zero = ExtElem(self, [self.base.zero] * self.deg)
        self.one = ExtElem(self, [self.base.one] + [self.base.zero] * (self.deg - 1))

    def of_base(self, c: RatFunc) -> "ExtElem":
        return ExtElem(self, [c] + [self.base.zero] * (self.deg - 1))

    def of(self, n: int) -> "ExtElem":
        return self.of_base(self.base.of(n))

    def gen(self) -> "ExtElem":
        cs = [self.base.zero] * self.deg
        if self.deg == 1:
            # y = -m_0 in the degree-one case X - r
            return self.of_base(-self.minpoly[0])
        cs[1] = self.base.one
        return ExtElem(self, cs)

    def minpoly_derivative(self) -> list[RatFunc]:
        return [self.minpoly[i].scale(i) for i in range(1, len(self.minpoly))]

    def check_etale(self):
        """m'(y) must be a unit, i.e. gcd(m, m') = 1."""
        g, _, _ = _poly_xgcd(self.minpoly, self.minpoly_derivative(), self.base)
        if len(g) != 1:
            raise NotEtale("minimal polynomial shares a root with its derivative")

    # ring adapter protocol ---------------------------------------------------

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def mul_int(self, a, c: int):
        return a.scale_int(c)

    def is_zero(self, a):
        return a.is_zero()

    def inv(self, a):
        return a.inverse()

    def __eq__(self, other):
        return isinstance(other, ExtRing) and self.p == other.p and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(("ExtRing", self.p, tuple(map(str, self.minpoly))))

    def __repr__(self):
        return f"ExtRing(p={self.p}, deg={self.deg})"


class ExtElem:
    __slots__ = ("ring", "cs")

    def __init__(self, ring: ExtRing, cs: list[RatFunc]):
        self.ring = ring
        cs = list(cs)
        while len(cs) < ring.deg:
            cs.append(ring.base.zero)
        if len(cs) > ring.deg:
            _, cs = _poly_divmod(cs, ring.minpoly, ring.base)
            while len(cs) < ring.deg:
                cs.append(ring.base.zero)
        self.cs = cs

    def __add__(self, other):
        return ExtElem(self.ring, [a + b for a, b in zip(self.cs, other.cs)])

    def __sub__(self, other):
        return ExtElem(self.ring, [a - b for a, b in zip(self.cs, other.cs)])

    def __neg__(self):
        return ExtElem(self.ring, [-a for a in self.cs])

    def __mul__(self, other):
        base = self.ring.base
        out = [base.zero] * (2 * self.ring.deg - 1)
        for i, a in enumerate(self.cs):
            if not a.is_zero():
                for j, b in enumerate(other.cs):
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
        return ExtElem(self.ring, out)

    def scale(self, c: RatFunc):
        return ExtElem(self.ring, [a * c for a in self.cs])

    def scale_int(self, c: int):
        return ExtElem(self.ring, [a.scale(c) for a in self.cs])

    def inverse(self):
        g, u, _ = _poly_xgcd(self.cs, self.ring.minpoly, self.ring.base)
        if len(g) != 1:
            raise ZeroDivisionError("element not invertible in extension ring")
        inv_g = g[0].inverse()
        return ExtElem(self.ring, [c * inv_g for c in u])

    def is_zero(self):
        return all(c.is_zero() for c in self.cs)

    def __eq__(self, other):
        return isinstance(other, ExtElem) and self.ring == other.ring and self.cs == other.cs

    def __hash__(self):
        return hash(tuple(map(str, self.cs)))

    def __repr__(self):
        parts = [f"({c})*y^{i}" if i else f"({c})" for i, c in enumerate(self.cs) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"
