"""Theta-rings for the finite Galois examples.

R is presented by generators over the base theta-field: either inseparable
(r_i^{p^{e_i}} = u_i with u_i a fresh transcendental in the coefficient
ring, theta acting diagonally r -> r*g(T) or additively r -> r + d(T)) or
group-like (an invertible s with Laurent exponents, diagonal action). The
p-power coefficients of the action come from digit data; everything else
is derived through the iteration rule, and both well-definedness and
iterativity are re-checked, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra.frob import binom_int, lowest_nonzero_digit
from ..algebra.ratfunc import RatFunc, RatFuncField
from ..errors import IterativityFailure
from ..series import TSeries
from .laurent import Coef

DIAGONAL = "diagonal"
ADDITIVE = "additive"
GROUPLIKE = "grouplike"


@dataclass
class GenSpec:
    name: str
    kind: str  # diagonal | additive | grouplike
    power: int = 1  # e_i: the relation r^{p^e} = u (inseparable kinds)
    coeffs: list = field(default_factory=list)  # c_l = theta^{(p^l)} datum, l < L


def derive_scalar_family(p: int, L: int, kind: str, powers: list[RatFunc]) -> list[RatFunc]:
    """All gamma_k (diagonal) or delta_k (additive) for k < p^L from the
    p-power data, via the lowest-nonzero-digit split of the index."""
    bound = p**L
    fam: list[RatFunc] = [RatFunc.one(p) if kind != ADDITIVE else RatFunc.zero(p)]
    theta_cache: dict[int, list[RatFunc]] = {}
    for m in range(1, bound):
        l, digit = lowest_nonzero_digit(m, p)
        if m == p**l:
            fam.append(powers[l])
            continue
        inv = pow(digit, -1, p)
        if kind == ADDITIVE:
            if l not in theta_cache:
                theta_cache[l] = powers[l].hasse_series(bound - 1)
            fam.append(theta_cache[l][m - p**l].scale(inv))
        else:
            if l not in theta_cache:
                theta_cache[l] = powers[l].hasse_series(bound - 1)
            i_total = m - p**l
            acc = RatFunc.zero(p)
            for i in range(i_total + 1):
                acc = acc + theta_cache[l][i] * fam[i_total - i]
            fam.append(acc.scale(inv))
    return fam


def scalar_family_compatible(p: int, L: int, kind: str, fam: list[RatFunc]) -> tuple:
    """First failing pair of the iteration rule, or None."""
    bound = p**L
    theta_cache = [f.hasse_series(bound - 1) for f in fam]
    for k in range(1, bound):
        for l in range(1, bound - k):
            c = binom_int(k + l, l, p)
            if kind == ADDITIVE:
                lhs = fam[k + l].scale(c)
                rhs = theta_cache[k][l]
            else:
                lhs = fam[k + l].scale(c)
                rhs = RatFunc.zero(p)
                for i in range(l + 1):
                    rhs = rhs + theta_cache[k][i] * fam[l - i]
            if lhs != rhs:
                return (k, l)
    return None


class RElem:
    """Element of R: RatFunc coefficients on (u-exponents, r-exponents)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: "ThetaRing", terms: dict, *, _trusted=False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            for (ue, re), c in terms.items():
                if not c.is_zero():
                    key = ring.reduce_monomial(tuple(ue), tuple(re))
                    _accumulate(clean, key, c)
            self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            _accumulate(out, key, c)
        return RElem(self.ring, out, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RElem(self.ring, {k: -c for k, c in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        ring = self.ring
        out: dict = {}
        for (u1, r1), c1 in self.terms.items():
            for (u2, r2), c2 in other.terms.items():
                ue = tuple(a + b for a, b in zip(u1, u2))
                re = tuple(a + b for a, b in zip(r1, r2))
                key = ring.reduce_monomial(ue, re)
                _accumulate(out, key, c1 * c2)
        return RElem(ring, out, _trusted=True)

    def scale_rat(self, f: RatFunc):
        if f.is_zero():
            return RElem(self.ring, {}, _trusted=True)
        return RElem(self.ring, {k: c * f for k, c in self.terms.items()}, _trusted=True)

    def scale_int(self, n: int):
        return self.scale_rat(RatFunc.const(n, self.ring.p))

    def inverse(self):
        """Inverse of a monomial: r_i^{-e} = r_i^{q_i - e} u_i^{-1} for the
        inseparable generators (0 < e < q_i), Laurent negation otherwise."""
        if len(self.terms) != 1:
            raise ZeroDivisionError("only monomials are directly invertible")
        ((ue, re), c), = self.terms.items()
        ring = self.ring
        new_u = [-x for x in ue]
        new_r = list(re)
        for i, e in enumerate(re):
            if ring.gens[i].kind == GROUPLIKE:
                new_r[i] = -e
            elif e:
                q = ring.p ** ring.gens[i].power
                new_r[i] = q - e
                new_u[ring.u_index[i]] -= 1
        return RElem(ring, {(tuple(new_u), tuple(new_r)): c.inverse()}, _trusted=True)

    def __eq__(self, other):
        return isinstance(other, RElem) and self.ring is other.ring and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        parts = []
        for (ue, re) in sorted(self.terms):
            c = self.terms[(ue, re)]
            factors = []
            for i, x in enumerate(ue):
                if x:
                    factors.append(f"u{i + 1}" if x == 1 else f"u{i + 1}^{x}")
            for i, x in enumerate(re):
                if x:
                    nm = ring.gens[i].name
                    factors.append(nm if x == 1 else f"{nm}^{x}")
            mono = "*".join(factors) if factors else "1"
            cs = str(c)
            parts.append(mono if cs == "1" else (f"({cs})*{mono}" if mono != "1" else cs))
        return " + ".join(parts)


def _accumulate(d: dict, key, c: RatFunc):
    prev = d.get(key)
    c = c if prev is None else prev + c
    if c.is_zero():
        d.pop(key, None)
    else:
        d[key] = c


class RRing:
    """Ring adapter so TSeries can run over RElem."""

    def __init__(self, ring: "ThetaRing"):
        self.ring = ring
        self.zero = RElem(ring, {}, _trusted=True)
        self.one = ring.one()

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def mul_int(self, a, c):
        return a.scale_int(c)

    def is_zero(self, a):
        return a.is_zero()

    def inv(self, a):
        return a.inverse()

    def __eq__(self, other):
        return isinstance(other, RRing) and self.ring is other.ring

    def __hash__(self):
        return hash(id(self.ring))


class ThetaRing:
    """R = F[r_1..r_m] with an iterable truncated theta-action."""

    def __init__(self, p: int, L: int, gens: list[GenSpec]):
        self.p = p
        self.L = L
        self.order = p**L - 1
        self.gens = gens
        # one transcendental u_i per inseparable generator
        self.u_index: dict[int, int] = {}
        for i, g in enumerate(gens):
            if g.kind != GROUPLIKE:
                self.u_index[i] = len(self.u_index)
        self.s = len(self.u_index)
        self.rring = RRing(self)
        # scalar families gamma/delta per generator
        self.families: list[list[RatFunc]] = []
        for g in gens:
            fam = derive_scalar_family(p, L, g.kind, g.coeffs)
            failure = scalar_family_compatible(p, L, g.kind, fam)
            if failure is not None:
                raise IterativityFailure(
                    f"digit data for {g.name} violates the iteration rule at {failure}"
                )
            self.families.append(fam)
        self._theta_gen_cache: dict = {}
        self._theta_pow_cache: dict = {}

    # -- element constructors ------------------------------------------------

    def zero(self) -> RElem:
        return RElem(self, {}, _trusted=True)

    def one(self) -> RElem:
        key = ((0,) * self.s, (0,) * len(self.gens))
        return RElem(self, {key: RatFunc.one(self.p)}, _trusted=True)

    def of_rat(self, f: RatFunc) -> RElem:
        if f.is_zero():
            return self.zero()
        key = ((0,) * self.s, (0,) * len(self.gens))
        return RElem(self, {key: f}, _trusted=True)

    def gen(self, i: int, power: int = 1) -> RElem:
        ue = [0] * self.s
        re = [0] * len(self.gens)
        re[i] = power
        key = self.reduce_monomial(tuple(ue), tuple(re))
        return RElem(self, {key: RatFunc.one(self.p)}, _trusted=True)

    def u_elem(self, i: int, power: int = 1) -> RElem:
        ue = [0] * self.s
        ue[self.u_index[i]] = power
        key = (tuple(ue), (0,) * len(self.gens))
        return RElem(self, {key: RatFunc.one(self.p)}, _trusted=True)

    def monomial(self, ue: tuple, re: tuple) -> RElem:
        key = self.reduce_monomial(ue, re)
        return RElem(self, {key: RatFunc.one(self.p)}, _trusted=True)

    def reduce_monomial(self, ue: tuple, re: tuple) -> tuple:
        """Carry r_i^{q_i} -> u_i for the inseparable generators."""
        ue = list(ue)
        re = list(re)
        for i, g in enumerate(self.gens):
            if g.kind == GROUPLIKE:
                continue
            q = self.p**g.power
            if re[i] >= q or re[i] < 0:
                carry = re[i] // q
                re[i] -= carry * q
                ue[self.u_index[i]] += carry
        return (tuple(ue), tuple(re))

    def basis_monomials(self, window: int = 0) -> list[RElem]:
        """The monomial basis of R over F: r^e with e_i < q_i, or Laurent
        powers within [-window, window] for group-like generators."""
        boxes = []
        for g in self.gens:
            if g.kind == GROUPLIKE:
                boxes.append(range(-window, window + 1))
            else:
                boxes.append(range(self.p**g.power))
        out = []

        def rec(i, current):
            if i == len(boxes):
                out.append(self.monomial((0,) * self.s, tuple(current)))
                return
            for e in boxes[i]:
                rec(i + 1, current + [e])

        rec(0, [])
        return out

    # -- the theta action ------------------------------------------------------

    def theta_of_gen(self, i: int) -> TSeries:
        if i in self._theta_gen_cache:
            return self._theta_gen_cache[i]
        g = self.gens[i]
        fam = self.families[i]
        if g.kind == ADDITIVE:
            coeffs = [self.gen(i)] + [self.of_rat(fam[k]) for k in range(1, self.order + 1)]
        else:
            coeffs = [self.gen(i).scale_rat(fam[k]) if k else self.gen(i) for k in range(self.order + 1)]
        series = TSeries(self.rring, coeffs, self.order)
        self._theta_gen_cache[i] = series
        return series

    def theta_of_u(self, i: int) -> TSeries:
        key = ("u", i)
        if key in self._theta_gen_cache:
            return self._theta_gen_cache[key]
        g = self.gens[i]
        q = self.p**g.power
        fam = self.families[i]
        if g.kind == ADDITIVE:
            # (r + d(T))^q = r^q + d(T)^q
            coeffs = [self.u_elem(i)]
            for k in range(1, self.order + 1):
                if k % q == 0:
                    coeffs.append(self.of_rat(fam[k // q] ** q))
                else:
                    coeffs.append(self.zero())
        else:
            # (r g(T))^q = u g(T)^q
            coeffs = [self.u_elem(i)]
            for k in range(1, self.order + 1):
                if k % q == 0:
                    coeffs.append(self.u_elem(i).scale_rat(fam[k // q] ** q))
                else:
                    coeffs.append(self.zero())
        series = TSeries(self.rring, coeffs, self.order)
        self._theta_gen_cache[key] = series
        return series

    def _theta_power(self, kind: str, i: int, e: int) -> TSeries:
        """theta(gen_i)^e (or of u_i), negative exponents through inversion."""
        key = (kind, i, e)
        if key in self._theta_pow_cache:
            return self._theta_pow_cache[key]
        base = self.theta_of_gen(i) if kind == "r" else self.theta_of_u(i)
        if e >= 0:
            result = base**e
        else:
            result = base.inverse() ** (-e)
        self._theta_pow_cache[key] = result
        return result

    def theta_series(self, elem: RElem) -> TSeries:
        """theta(elem) in R[[T]]/T^{p^L}, multiplicative on monomials,
        phi_t on the rational coefficients."""
        acc = TSeries.zero(self.rring, self.order)
        for (ue, re), c in elem.terms.items():
            comps = c.hasse_series(self.order)
            term = TSeries(self.rring, [self.of_rat(x) for x in comps], self.order)
            for i, g in enumerate(self.gens):
                if re[i]:
                    term = term * self._theta_power("r", i, re[i])
            inv_u = {v: k for k, v in self.u_index.items()}
            for uidx, e in enumerate(ue):
                if e:
                    term = term * self._theta_power("u", inv_u[uidx], e)
            acc = acc + term
        return acc

    def theta_component(self, elem: RElem, k: int) -> RElem:
        return self.theta_series(elem)[k]

    # -- checks ------------------------------------------------------------------

    def well_definedness_failures(self) -> list[str]:
        """theta(r_i)^{q_i} must equal theta(u_i) exactly in the truncation."""
        out = []
        for i, g in enumerate(self.gens):
            if g.kind == GROUPLIKE:
                continue
            q = self.p**g.power
            lhs = self._theta_power("r", i, q)
            rhs = self.theta_of_u(i)
            if lhs != rhs:
                out.append(g.name)
        return out

    def iterativity_failure(self, spanning: list[RElem] | None = None, window: int = 2):
        """First failure of theta^{(i)} o theta^{(j)} = C(i+j, i) theta^{(i+j)}
        on the spanning set, or None."""
        if spanning is None:
            spanning = self.basis_monomials(window)
        bound = self.order + 1
        for z in spanning:
            series = self.theta_series(z)
            for j in range(1, bound):
                mid = series[j]
                mid_series = self.theta_series(mid)
                for i in range(1, bound - j):
                    lhs = mid_series[i]
                    rhs = series[i + j].scale_int(binom_int(i + j, i, self.p))
                    if lhs != rhs:
                        return (i, j, z)
        return None
