"""The truncated algebra of higher differentials on K[t_1..t_m].

Free commutative algebra on symbols d^{(i)}t_j (i >= 1) of weighted degree
i, truncated above order N, with the universal derivation d_R, the scaled
continuous endomorphisms a.d_Dif, and evaluation of differentials along a
higher derivation (the universal property).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.frob import binom_int
from .algebra.multipoly import MPoly, MPolyRing
from .errors import DescriptorMismatch
from .hderiv import HigherDerivation, PolyDomain
from .series import TSeries

Mono = tuple  # sorted tuple of ((i, j), exponent); weighted degree sum(i * e)


def mono_degree(mono: Mono) -> int:
    return sum(i * e for (i, _), e in mono)


def mono_mul(a: Mono, b: Mono) -> Mono:
    merged = dict(a)
    for key, e in b:
        merged[key] = merged.get(key, 0) + e
    return tuple(sorted(merged.items()))


def render_mono(mono: Mono, m: int) -> str:
    if not mono:
        return "1"
    parts = []
    for (i, j), e in mono:
        name = f"d{i}_t" if m == 1 else f"d{i}_t{j + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


@dataclass(frozen=True)
class DifDescriptor:
    p: int
    m: int
    order: int


class DifElement:
    __slots__ = ("desc", "terms")

    def __init__(self, desc: DifDescriptor, terms: dict, *, _trusted=False):
        self.desc = desc
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            for mono, coeff in terms.items():
                if mono_degree(mono) <= desc.order and not coeff.is_zero():
                    clean[mono] = coeff
            self.terms = clean

    # constructors -----------------------------------------------------------

    @staticmethod
    def zero(desc: DifDescriptor) -> "DifElement":
        return DifElement(desc, {}, _trusted=True)

    @staticmethod
    def one(desc: DifDescriptor) -> "DifElement":
        return DifElement(desc, {(): MPoly.one(desc.p, desc.m)}, _trusted=True)

    @staticmethod
    def of_poly(desc: DifDescriptor, coeff: MPoly) -> "DifElement":
        if coeff.is_zero():
            return DifElement.zero(desc)
        return DifElement(desc, {(): coeff}, _trusted=True)

    @staticmethod
    def generator(desc: DifDescriptor, i: int, j: int = 0) -> "DifElement":
        """The symbol d^{(i)}t_{j+1}."""
        if not (1 <= i <= desc.order and 0 <= j < desc.m):
            raise ValueError("generator index out of range")
        mono = (((i, j), 1),)
        return DifElement(desc, {mono: MPoly.one(desc.p, desc.m)}, _trusted=True)

    # structure ----------------------------------------------------------------

    def _check(self, other: "DifElement"):
        if self.desc != other.desc:
            raise DescriptorMismatch("differential algebra descriptors differ")

    def is_zero(self) -> bool:
        return not self.terms

    def degree_component(self, k: int) -> "DifElement":
        return DifElement(
            self.desc,
            {m: c for m, c in self.terms.items() if mono_degree(m) == k},
            _trusted=True,
        )

    def max_degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def constant_part(self) -> MPoly:
        return self.terms.get((), MPoly.zero(self.desc.p, self.desc.m))

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = s
        return DifElement(self.desc, out, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return DifElement(self.desc, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        self._check(other)
        order = self.desc.order
        out: dict = {}
        for m1, c1 in self.terms.items():
            d1 = mono_degree(m1)
            for m2, c2 in other.terms.items():
                if d1 + mono_degree(m2) > order:
                    continue
                mono = mono_mul(m1, m2)
                c = c1 * c2
                s = out.get(mono)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = s
        return DifElement(self.desc, out, _trusted=True)

    def scale_poly(self, c: MPoly):
        return DifElement(self.desc, {m: co * c for m, co in self.terms.items()})

    def scale_int(self, c: int):
        return DifElement(self.desc, {m: co.scale(c) for m, co in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, DifElement) and self.desc == other.desc and self.terms == other.terms

    def __hash__(self):
        return hash((self.desc, frozenset((m, hash(c)) for m, c in self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (mono_degree(m), m)):
            c = self.terms[mono]
            cs = str(c)
            ms = render_mono(mono, self.desc.m)
            if ms == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(ms)
            else:
                parts.append(f"({cs})*{ms}")
        return " + ".join(parts)


class DifRing:
    """Ring adapter for the truncated differential algebra."""

    def __init__(self, desc: DifDescriptor):
        self.desc = desc
        self.zero = DifElement.zero(desc)
        self.one = DifElement.one(desc)

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
        """Inverse of a unit (constant term a unit, nilpotent higher part)."""
        c0 = a.constant_part()
        ring = MPolyRing(self.desc.p, self.desc.m)
        c0inv = DifElement.of_poly(self.desc, ring.inv(c0))
        rest = (a - DifElement.of_poly(self.desc, c0)).scale_poly(ring.inv(c0))
        # geometric series (1 + rest)^{-1} = sum (-rest)^k, rest nilpotent
        acc = self.one
        power = self.one
        for _ in range(self.desc.order):
            power = power * rest.scale_int(-1)
            if power.is_zero():
                break
            acc = acc + power
        return acc * c0inv

    def __eq__(self, other):
        return isinstance(other, DifRing) and self.desc == other.desc

    def __hash__(self):
        return hash(("DifRing", self.desc))


# -- the universal derivation -----------------------------------------------------


def d_R(desc: DifDescriptor, r: MPoly) -> DifElement:
    """d_R(r) = sum_k d^{(k)}r: substitute t_j -> t_j + sum_i d^{(i)}t_j."""
    ring = DifRing(desc)
    images = []
    for j in range(desc.m):
        img = DifElement.of_poly(desc, MPoly.gen(j, desc.p, desc.m))
        for i in range(1, desc.order + 1):
            img = img + DifElement.generator(desc, i, j)
        images.append(img)
    return r.substitute(ring, images)


def d_R_component(desc: DifDescriptor, r: MPoly, k: int) -> DifElement:
    """d^{(k)}r, homogeneous of weighted degree k (d^{(0)}r = r)."""
    if k > desc.order:
        raise DescriptorMismatch("component beyond truncation order")
    return d_R(desc, r).degree_component(k)


def d_dif_scaled(a: int, omega: DifElement) -> DifElement:
    """The continuous algebra endomorphism a.d_Dif.

    On generators: d^{(i)}t_j -> sum_l a^l C(i+l, l) d^{(i+l)}t_j; on
    coefficients it restricts to the higher derivation a.d_R.
    """
    desc = omega.desc
    p = desc.p
    out = DifElement.zero(desc)
    gen_cache: dict = {}

    def gen_image(i, j):
        if (i, j) not in gen_cache:
            acc = DifElement.zero(desc)
            for l in range(0, desc.order - i + 1):
                c = (binom_int(i + l, l, p) * pow(a, l, p)) % p
                if c:
                    acc = acc + DifElement.generator(desc, i + l, j).scale_int(c)
            gen_cache[(i, j)] = acc
        return gen_cache[(i, j)]

    for mono, coeff in omega.terms.items():
        # a.d_R on the coefficient: degree components scaled by a^k
        dc = d_R(desc, coeff)
        term = DifElement.zero(desc)
        for k in range(desc.order + 1):
            part = dc.degree_component(k)
            if not part.is_zero():
                term = term + part.scale_int(pow(a, k, p) if k else 1)
        for (i, j), e in mono:
            g = gen_image(i, j)
            for _ in range(e):
                term = term * g
        out = out + term
    return out


def d_dif_component(omega: DifElement, k: int) -> DifElement:
    """d_Dif^{(k)}: the degree-raising-by-k part of 1.d_Dif."""
    desc = omega.desc
    out = DifElement.zero(desc)
    for d in range(desc.order + 1):
        part = omega.degree_component(d)
        if not part.is_zero():
            out = out + d_dif_scaled(1, part).degree_component(d + k)
    return out


# -- evaluation (the universal property) ---------------------------------------------


def evaluate(psi: HigherDerivation, omega: DifElement) -> TSeries:
    """The induced map psi~ with psi~ o d_R = psi, applied to omega.

    Substitutes d^{(k)}t_j -> psi^{(k)}(t_j) T^k, multiplicatively on
    monomials; degree-0 coefficients pass through the structure map
    (so evaluate(psi, d_R(r)) = psi(r), the d^{(k)}r terms doing the work).
    """
    desc = omega.desc
    dom = psi.domain
    if not isinstance(dom, PolyDomain) or dom.p != desc.p or dom.m != desc.m:
        raise DescriptorMismatch("derivation domain does not match differential algebra")
    order = psi.order
    ring = dom.ring
    gen_names = [name for name, _ in dom.generators()]
    acc = TSeries.zero(ring, order)
    for mono, coeff in omega.terms.items():
        term = TSeries.const(ring, coeff, order)
        for (i, j), e in mono:
            img = psi.images[gen_names[j]]
            comp = img[i] if i <= order else ring.zero
            single = TSeries(ring, [ring.zero] * i + [comp], order)
            for _ in range(e):
                term = term * single
        acc = acc + term
    return acc
