"""Dense univariate polynomials over F_p.

Coefficients are plain ints kept reduced mod p; the zero polynomial has
degree -1 (the degree sentinel). This is the hot path of the whole
package, so the representation stays primitive.
"""

from __future__ import annotations

import numpy as np

from .fields import check_prime

_NUMPY_MUL_THRESHOLD = 48
_NUMPY_DIV_THRESHOLD = 96


def _trim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


class Poly:
    __slots__ = ("p", "cs", "_arr")

    def __init__(self, coeffs, p: int, *, _trusted: bool = False):
        self.p = p
        self._arr = None
        if _trusted:
            self.cs = coeffs
        else:
            check_prime(p)
            self.cs = _trim([c % p for c in coeffs])

    def _np(self):
        """Cached int64 coefficient array (instances are immutable)."""
        if self._arr is None:
            self._arr = np.asarray(self.cs, dtype=np.int64)
        return self._arr

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(p: int) -> "Poly":
        return Poly([], p, _trusted=True)

    @staticmethod
    def one(p: int) -> "Poly":
        return Poly([1], p, _trusted=True)

    @staticmethod
    def const(c: int, p: int) -> "Poly":
        return Poly([c % p], p)

    @staticmethod
    def t(p: int) -> "Poly":
        return Poly([0, 1], p, _trusted=True)

    @staticmethod
    def monomial(c: int, k: int, p: int) -> "Poly":
        c %= p
        if c == 0:
            return Poly.zero(p)
        return Poly([0] * k + [c], p, _trusted=True)

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.cs) - 1

    def is_zero(self) -> bool:
        return not self.cs

    def is_one(self) -> bool:
        return self.cs == [1]

    def is_constant(self) -> bool:
        return len(self.cs) <= 1

    def constant_value(self) -> int:
        return self.cs[0] if self.cs else 0

    def lead(self) -> int:
        if not self.cs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.cs[-1]

    def coeff(self, k: int) -> int:
        return self.cs[k] if 0 <= k < len(self.cs) else 0

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        p = self.p
        a, b = self.cs, other.cs
        if len(a) < len(b):
            a, b = b, a
        if len(a) > _NUMPY_MUL_THRESHOLD:
            first = self if a is self.cs else other
            second = other if a is self.cs else self
            arr = first._np().copy()
            arr[: len(b)] += second._np()
            return Poly(_trim((arr % p).tolist()), p, _trusted=True)
        out = a[:]
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
        return Poly(_trim(out), p, _trusted=True)

    def __sub__(self, other: "Poly") -> "Poly":
        p = self.p
        n = max(len(self.cs), len(other.cs))
        if n > _NUMPY_MUL_THRESHOLD:
            arr = np.zeros(n, dtype=np.int64)
            arr[: len(self.cs)] += self._np()
            arr[: len(other.cs)] -= other._np()
            return Poly(_trim((arr % p).tolist()), p, _trusted=True)
        out = [0] * n
        for i, c in enumerate(self.cs):
            out[i] = c
        for i, c in enumerate(other.cs):
            out[i] = (out[i] - c) % p
        return Poly(_trim(out), p, _trusted=True)

    def __neg__(self) -> "Poly":
        p = self.p
        return Poly([(-c) % p for c in self.cs], p, _trusted=True)

    def __mul__(self, other: "Poly") -> "Poly":
        p = self.p
        a, b = self.cs, other.cs
        if not a or not b:
            return Poly.zero(p)
        if len(a) + len(b) > _NUMPY_MUL_THRESHOLD:
            # dense convolution in C; coefficients < p <= 97 keep the exact
            # products far inside the int64 range
            conv = np.convolve(self._np(), other._np())
            return Poly(_trim((conv % p).tolist()), p, _trusted=True)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly(_trim([c % p for c in out]), p, _trusted=True)

    def scale(self, c: int) -> "Poly":
        c %= self.p
        if c == 0:
            return Poly.zero(self.p)
        p = self.p
        return Poly([(a * c) % p for a in self.cs], p, _trusted=True)

    def shift(self, k: int) -> "Poly":
        """Multiply by t^k."""
        if not self.cs:
            return self
        return Poly([0] * k + self.cs, self.p, _trusted=True)

    def __pow__(self, n: int) -> "Poly":
        result = Poly.one(self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        db = other.degree
        inv_lead = pow(other.cs[-1], -1, p)
        # the vectorised path only pays off when the divisor is large too
        if len(self.cs) > _NUMPY_DIV_THRESHOLD and db > 24:
            rem = self._np().copy()
            brr = other._np()
            q = [0] * max(len(rem) - db, 0)
            for i in range(len(rem) - 1, db - 1, -1):
                c = int(rem[i]) % p
                if c:
                    f = (c * inv_lead) % p
                    q[i - db] = f
                    rem[i - db : i + 1] -= f * brr
                    if i % 64 == 0:
                        rem %= p
            return (
                Poly(_trim(q), p, _trusted=True),
                Poly(_trim((rem % p).tolist()), p, _trusted=True),
            )
        rem = self.cs[:]
        q = [0] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] % p
            if c:
                f = (c * inv_lead) % p
                q[i - db] = f
                for j, bj in enumerate(other.cs):
                    rem[i - db + j] = (rem[i - db + j] - f * bj) % p
        return Poly(_trim(q), p, _trusted=True), Poly(_trim([c % p for c in rem]), p, _trusted=True)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(pow(self.cs[-1], -1, self.p))

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: "Poly") -> tuple["Poly", "Poly", "Poly"]:
        """Return (g, u, v) with u*self + v*other = g, g monic."""
        p = self.p
        r0, r1 = self, other
        u0, u1 = Poly.one(p), Poly.zero(p)
        v0, v1 = Poly.zero(p), Poly.one(p)
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            u0, u1 = u1, u0 - q * u1
            v0, v1 = v1, v0 - q * v1
        if r0.is_zero():
            return r0, u0, v0
        c = pow(r0.cs[-1], -1, p)
        return r0.scale(c), u0.scale(c), v0.scale(c)

    # -- evaluation and Hasse components -----------------------------------

    def eval(self, x: int) -> int:
        acc = 0
        for c in reversed(self.cs):
            acc = (acc * x + c) % self.p
        return acc

    def hasse(self, k: int, binom) -> "Poly":
        """k-th Hasse derivative: coefficient of T^k in f(t+T).

        `binom(n, k)` must return C(n, k) mod p (see frob.binomial_mod_p).
        """
        p = self.p
        out = [0] * max(len(self.cs) - k, 0)
        for m in range(k, len(self.cs)):
            c = self.cs[m]
            if c:
                b = binom(m, k)
                if b:
                    out[m - k] = (c * b) % p
        return Poly(_trim(out), p, _trusted=True)

    # -- misc --------------------------------------------------------------

    def map_exponents(self, fn) -> "Poly":
        out: dict[int, int] = {}
        for m, c in enumerate(self.cs):
            if c:
                out[fn(m)] = c
        if not out:
            return Poly.zero(self.p)
        cs = [0] * (max(out) + 1)
        for m, c in out.items():
            cs[m] = c
        return Poly(cs, self.p, _trusted=True)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.p == other.p and self.cs == other.cs

    def __hash__(self):
        return hash((self.p, tuple(self.cs)))

    def __repr__(self):
        return f"Poly({self.cs}, {self.p})"

    def __str__(self):
        return render_poly(self)


def render_poly(f: Poly, var: str = "t") -> str:
    if f.is_zero():
        return "0"
    parts = []
    for m in range(f.degree, -1, -1):
        c = f.coeff(m)
        if not c:
            continue
        if m == 0:
            parts.append(str(c))
        elif m == 1:
            parts.append(var if c == 1 else f"{c}*{var}")
        else:
            parts.append(f"{var}^{m}" if c == 1 else f"{c}*{var}^{m}")
    return "+".join(parts)
