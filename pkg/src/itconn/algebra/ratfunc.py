"""F_p(t): canonical rational functions and their Hasse components.

Canonical form: denominator monic and coprime to the numerator, so
equality is literal equality of the two polynomials.
"""

from __future__ import annotations

from ..errors import NotAPthPower
from .fields import check_prime
from .frob import binom_int, poly_pth_root
from .poly import Poly


class RatFunc:
    __slots__ = ("num", "den", "p")

    def __init__(self, num: Poly, den: Poly | None = None, *, _canonical: bool = False):
        p = num.p
        self.p = p
        if den is None:
            den = Poly.one(p)
        if _canonical:
            self.num, self.den = num, den
            return
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = Poly.zero(p), Poly.one(p)
            return
        g = num.gcd(den)
        if not g.is_one():
            num = num // g
            den = den // g
        lead_inv = pow(den.lead(), -1, p)
        if lead_inv != 1:
            num = num.scale(lead_inv)
            den = den.scale(lead_inv)
        self.num, self.den = num, den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(p: int) -> "RatFunc":
        return RatFunc(Poly.zero(p), Poly.one(p), _canonical=True)

    @staticmethod
    def one(p: int) -> "RatFunc":
        return RatFunc(Poly.one(p), Poly.one(p), _canonical=True)

    @staticmethod
    def const(c: int, p: int) -> "RatFunc":
        return RatFunc(Poly.const(c, p), Poly.one(p), _canonical=True)

    @staticmethod
    def t(p: int) -> "RatFunc":
        return RatFunc(Poly.t(p), Poly.one(p), _canonical=True)

    @staticmethod
    def from_poly(f: Poly) -> "RatFunc":
        return RatFunc(f, Poly.one(f.p), _canonical=True)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _canonical=True)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def inverse(self) -> "RatFunc":
        return RatFunc.one(self.p) / self

    def scale(self, c: int) -> "RatFunc":
        return RatFunc(self.num.scale(c), self.den, _canonical=(c % self.p != 0))

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n, _canonical=True)

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.p == other.p
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self):
        from .parse import render_ratfunc

        return render_ratfunc(self)

    # -- Hasse components of phi_t -----------------------------------------

    def hasse_series(self, order: int) -> list["RatFunc"]:
        """Components [phi_t^{(0)}(f), ..., phi_t^{(order)}(f)].

        phi_t(f)(T) = f(t+T) = N(T)/D(T) with N, D the Hasse expansions of
        numerator and denominator; the quotient is expanded by the series
        division recurrence q_k = (n_k - sum_{i<k} q_i d_{k-i}) / d_0.
        """
        p = self.p
        binom = lambda n, k: binom_int(n, k, p)
        ncs = [self.num.hasse(k, binom) for k in range(order + 1)]
        dcs = [self.den.hasse(k, binom) for k in range(order + 1)]
        d0 = RatFunc.from_poly(self.den)
        out: list[RatFunc] = []
        for k in range(order + 1):
            acc = RatFunc.from_poly(ncs[k])
            for i in range(k):
                if not out[i].is_zero() and not dcs[k - i].is_zero():
                    acc = acc - out[i] * RatFunc.from_poly(dcs[k - i])
            out.append(acc / d0)
        return out

    def hasse(self, k: int) -> "RatFunc":
        """phi_t^{(k)}(f): the k-th Hasse component at the generator t."""
        return self.hasse_series(k)[k]

    # -- Frobenius structure -------------------------------------------------

    def pth_root(self) -> "RatFunc":
        """g with g^p = f, or NotAPthPower.

        Over F_p the coefficient Frobenius is the identity, so only the
        exponents have to be divisible by p (numerator and monic denominator
        separately, canonical form makes this well defined).
        """
        p = self.p
        return RatFunc(poly_pth_root(self.num, p), poly_pth_root(self.den, p), _canonical=True)

    def is_pth_power(self) -> bool:
        try:
            self.pth_root()
            return True
        except NotAPthPower:
            return False

    def pl_root(self, l: int) -> "RatFunc":
        g = self
        for _ in range(l):
            g = g.pth_root()
        return g

    def frobenius_expand(self, l: int) -> list["RatFunc"]:
        """Coordinates (c_0, ..., c_{q-1}), q = p^l, with f = sum c_a t^a.

        Each c_a is a q-th power in F_p(t) (a coordinate of f in the basis
        {1, t, ..., t^{q-1}} of F over F^q). Computed by making the
        denominator a q-th power: f = (num * den^{q-1}) / den^q, then
        splitting the numerator by exponent residues mod q.
        """
        p = self.p
        q = p**l
        if q == 1:
            return [self]
        if self.is_zero():
            return [RatFunc.zero(p)] * q
        den_q = self.den**q
        big = self.num * self.den ** (q - 1)
        buckets: list[list[int]] = [[] for _ in range(q)]
        for m, c in enumerate(big.cs):
            a = m % q
            idx = m // q
            b = buckets[a]
            while len(b) <= idx:
                b.append(0)
            b[idx] = c
        out = []
        for a in range(q):
            ga = Poly(buckets[a], p).map_exponents(lambda e: e * q)
            out.append(RatFunc(ga, den_q))
        return out

    def frobenius_coords_rooted(self, l: int) -> list["RatFunc"]:
        """Like frobenius_expand but with each coordinate replaced by its
        p^l-th root (exact linear-algebra form over F^{p^l} identified with F)."""
        return [c.pl_root(l) for c in self.frobenius_expand(l)]

    def eval_at_zero(self) -> int:
        d0 = self.den.coeff(0)
        if d0 == 0:
            from ..errors import PoleAtOrigin

            raise PoleAtOrigin("denominator vanishes at t = 0")
        return (self.num.coeff(0) * pow(d0, -1, self.p)) % self.p

    def series_at_zero(self, order: int) -> list[int]:
        """Power series coefficients [f_0, ..., f_order] at t = 0."""
        p = self.p
        d0 = self.den.coeff(0)
        if d0 == 0:
            from ..errors import PoleAtOrigin

            raise PoleAtOrigin("denominator vanishes at t = 0")
        inv_d0 = pow(d0, -1, p)
        out = []
        for k in range(order + 1):
            acc = self.num.coeff(k)
            for i in range(k):
                acc -= out[i] * self.den.coeff(k - i)
            out.append((acc * inv_d0) % p)
        return out


class RatFuncField:
    """Field adapter for F_p(t)."""

    def __init__(self, p: int):
        self.p = check_prime(p)
        self.zero = RatFunc.zero(p)
        self.one = RatFunc.one(p)

    def of(self, n: int) -> RatFunc:
        return RatFunc.const(n, self.p)

    def __eq__(self, other):
        return isinstance(other, RatFuncField) and self.p == other.p

    def __hash__(self):
        return hash(("RatFuncField", self.p))

    def __repr__(self):
        return f"RatFuncField({self.p})"
