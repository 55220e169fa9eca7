"""Higher and iterative derivations.

A higher derivation is an algebra map psi: R -> R[[T]]/T^{N+1} whose
degree-0 part is the identity; it is stored by its generator images and
extended multiplicatively (with the quotient rule on fraction fields).
Provides the group law psi1[[T]] o psi2, the K-action, iterativity
checking via the binomial composition rule on generators, Newton lifting
to monogenic etale extensions, and the characteristic-zero dictionary
between derivations and iterative derivations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra.extension import ExtElem, ExtRing
from .algebra.frob import binom_int
from .algebra.multipoly import MPoly, MPolyRing
from .algebra.poly import Poly
from .algebra.qpoly import QPoly, QPolyRing
from .algebra.ratfunc import RatFunc, RatFuncField
from .errors import DenominatorNotUnit, DescriptorMismatch
from .series import FieldRing, TSeries


# -- domains -----------------------------------------------------------------


class PolyDomain:
    """K[t_1..t_m] over F_p."""

    def __init__(self, p: int, m: int = 1):
        self.p = p
        self.m = m
        self.ring = MPolyRing(p, m)

    def generators(self):
        names = ["t"] if self.m == 1 else [f"t{j + 1}" for j in range(self.m)]
        return [(name, MPoly.gen(j, self.p, self.m)) for j, name in enumerate(names)]

    def binom_scale(self, elem, n, k):
        return elem.scale(binom_int(n, k, self.p))

    def apply_images(self, images: dict, elem: MPoly, order: int) -> TSeries:
        sring = _SeriesOfRing(self.ring, order)
        return elem.substitute(sring, [images[name] for name, _ in self.generators()])

    def __eq__(self, other):
        return isinstance(other, PolyDomain) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash(("PolyDomain", self.p, self.m))

    def __repr__(self):
        return f"PolyDomain(p={self.p}, m={self.m})"


class RatFuncDomain:
    """F_p(t)."""

    def __init__(self, p: int):
        self.p = p
        self.field = RatFuncField(p)
        self.ring = FieldRing(self.field)

    def generators(self):
        return [("t", RatFunc.t(self.p))]

    def binom_scale(self, elem, n, k):
        return elem.scale(binom_int(n, k, self.p))

    def apply_images(self, images: dict, elem: RatFunc, order: int) -> TSeries:
        timg = images["t"]
        num = _poly_into_series(elem.num, timg, self.ring)
        if elem.den.is_one():
            return num
        den = _poly_into_series(elem.den, timg, self.ring)
        if den.coeffs[0].is_zero():
            raise DenominatorNotUnit("denominator image has no invertible degree-0 part")
        return num * den.inverse()

    def __eq__(self, other):
        return isinstance(other, RatFuncDomain) and self.p == other.p

    def __hash__(self):
        return hash(("RatFuncDomain", self.p))

    def __repr__(self):
        return f"RatFuncDomain({self.p})"


class ExtDomain:
    """F_p(t)[y]/(m): a monogenic extension of the rational function field."""

    def __init__(self, ext: ExtRing):
        self.p = ext.p
        self.ext = ext
        self.ring = ext

    def generators(self):
        return [("t", self.ext.of_base(RatFunc.t(self.p))), ("y", self.ext.gen())]

    def binom_scale(self, elem, n, k):
        return elem.scale_int(binom_int(n, k, self.p))

    def apply_images(self, images: dict, elem: ExtElem, order: int) -> TSeries:
        base = RatFuncDomain(self.p)
        timg_base = images["t"].map_coeffs(lambda e: e.cs[0], base.ring)
        yimg = images["y"]
        acc = TSeries.zero(self.ring, order)
        ypow = TSeries.one(self.ring, order)
        for i, c in enumerate(elem.cs):
            if i:
                ypow = ypow * yimg
            if not c.is_zero():
                ci = base.apply_images({"t": timg_base}, c, order)
                acc = acc + ci.map_coeffs(self.ext.of_base, self.ring) * ypow
        return acc

    def __eq__(self, other):
        return isinstance(other, ExtDomain) and self.ext == other.ext

    def __hash__(self):
        return hash(("ExtDomain", self.ext))

    def __repr__(self):
        return f"ExtDomain({self.ext!r})"


class CharZeroDomain:
    """Q[t]."""

    p = 0

    def __init__(self):
        self.ring = QPolyRing()

    def generators(self):
        return [("t", QPoly.t())]

    def binom_scale(self, elem, n, k):
        return elem.scale(Fraction(math.comb(n, k)))

    def apply_images(self, images: dict, elem: QPoly, order: int) -> TSeries:
        acc = TSeries.zero(self.ring, order)
        timg = images["t"]
        for k in range(elem.degree, -1, -1):
            acc = acc * timg + TSeries.const(self.ring, QPoly([elem.coeff(k)]), order)
        return acc

    def __eq__(self, other):
        return isinstance(other, CharZeroDomain)

    def __hash__(self):
        return hash("CharZeroDomain")

    def __repr__(self):
        return "CharZeroDomain()"


class _SeriesOfRing:
    """Ring adapter for TSeries over a coefficient ring (substitution target)."""

    def __init__(self, coeff_ring, order):
        self.coeff_ring = coeff_ring
        self.order = order
        self.zero = TSeries.zero(coeff_ring, order)
        self.one = TSeries.one(coeff_ring, order)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def mul_int(self, a, c):
        return a.mul_int(c)


def _poly_into_series(f: Poly, timg: TSeries, ring) -> TSeries:
    order = timg.order
    acc = TSeries.zero(ring, order)
    for k in range(f.degree, -1, -1):
        acc = acc * timg + TSeries.const(ring, RatFunc.const(f.coeff(k), f.p), order)
    return acc


# -- reports -----------------------------------------------------------------


@dataclass
class IterativityReport:
    verdict: bool
    checked_order: int
    first_failure: tuple | None = None  # (i, j, generator, lhs, rhs)
    method: str = "binomial-composition on generators"

    def __bool__(self):
        return self.verdict


# -- the derivation itself -----------------------------------------------------


class HigherDerivation:
    def __init__(self, domain, order: int, images: dict):
        self.domain = domain
        self.order = order
        self.images = images
        for name, gen in domain.generators():
            img = images[name]
            if img.order != order:
                raise DescriptorMismatch("image truncation does not match declared order")
            if img.coeffs[0] != gen:
                raise ValueError(f"augmentation violated: image of {name} does not start at {name}")

    # constructors -------------------------------------------------------------

    @staticmethod
    def identity(domain, order: int) -> "HigherDerivation":
        images = {
            name: TSeries.const(domain.ring, gen, order) for name, gen in domain.generators()
        }
        return HigherDerivation(domain, order, images)

    @staticmethod
    def phi_t(domain, order: int, var: str | None = None) -> "HigherDerivation":
        """The higher derivation with respect to one variable: t_j -> t_j + T."""
        gens = domain.generators()
        if var is None:
            var = gens[0][0]
        images = {}
        for name, gen in gens:
            cs = [gen]
            if name == var:
                cs.append(domain.ring.one)
            images[name] = TSeries(domain.ring, cs, order)
        return HigherDerivation(domain, order, images)

    @staticmethod
    def from_generator_images(domain, order: int, images: dict) -> "HigherDerivation":
        return HigherDerivation(domain, order, images)

    # evaluation ---------------------------------------------------------------

    def apply_series(self, elem) -> TSeries:
        return self.domain.apply_images(self.images, elem, self.order)

    def apply(self, elem, k: int):
        """The component psi^{(k)}(elem)."""
        if k > self.order:
            raise DescriptorMismatch(f"component {k} beyond truncation order {self.order}")
        return self.apply_series(elem)[k]

    # structure ----------------------------------------------------------------

    def _check_compatible(self, other: "HigherDerivation"):
        if self.domain != other.domain or self.order != other.order:
            raise DescriptorMismatch("derivations live on different domains or orders")

    def multiply(self, other: "HigherDerivation") -> "HigherDerivation":
        """Group law: (self . other) = self[[T]] o other."""
        self._check_compatible(other)
        images = {}
        for name, _ in self.domain.generators():
            src = other.images[name]
            acc = TSeries.zero(self.domain.ring, self.order)
            for i, c in enumerate(src.coeffs):
                if not self.domain.ring.is_zero(c):
                    acc = acc + self.apply_series(c).shift(i)
            images[name] = acc
        return HigherDerivation(self.domain, self.order, images)

    def invert(self) -> "HigherDerivation":
        """Two-sided inverse for the group law, solved degree by degree."""
        dom, order = self.domain, self.order
        ring = dom.ring
        partial = {name: [gen] for name, gen in dom.generators()}
        for k in range(1, order + 1):
            # evaluate current partial candidate on the image coefficients
            cand = HigherDerivation(
                dom, order, {n: TSeries(ring, cs, order) for n, cs in partial.items()}
            )
            for name, _ in dom.generators():
                src = self.images[name]
                acc = ring.zero
                for i in range(1, k + 1):
                    c = src.coeffs[i]
                    if not ring.is_zero(c):
                        acc = ring.add(acc, cand.apply_series(c)[k - i])
                partial[name].append(ring.neg(acc))
        return HigherDerivation(
            dom, order, {n: TSeries(ring, cs, order) for n, cs in partial.items()}
        )

    def scale(self, a) -> "HigherDerivation":
        """The K-action a.psi with components a^k psi^{(k)}."""
        dom = self.domain
        if isinstance(dom, CharZeroDomain):
            powers = [QPoly([Fraction(a) ** k]) for k in range(self.order + 1)]
            images = {n: img.scale_action(powers) for n, img in self.images.items()}
        else:
            p = dom.p
            images = {}
            for n, img in self.images.items():
                coeffs = [
                    dom.ring.mul_int(c, pow(a, k, p)) if k else c
                    for k, c in enumerate(img.coeffs)
                ]
                images[n] = TSeries(dom.ring, coeffs, self.order)
        return HigherDerivation(dom, self.order, images)

    # iterativity ----------------------------------------------------------------

    def is_iterative(self, order: int | None = None) -> IterativityReport:
        """Check psi^{(j)}(psi^{(i)}(g)) = C(i+j, i) psi^{(i+j)}(g) on generators.

        Generator checking suffices: the composition rule is an identity of
        algebra maps on the universal differentials, and extensions to
        fraction fields or etale extensions inherit it.
        """
        n = self.order if order is None else min(order, self.order)
        gens = self.domain.generators()
        series = {name: self.apply_series(gen) for name, gen in gens}
        for s in range(2, n + 1):
            for i in range(1, s):
                j = s - i
                for name, gen in gens:
                    inner = series[name][i]
                    lhs = self.apply(inner, j)
                    rhs = self.domain.binom_scale(series[name][s], s, i)
                    if lhs != rhs:
                        return IterativityReport(False, n, (i, j, name, lhs, rhs))
        return IterativityReport(True, n)

    def action_is_additive(self) -> bool:
        """(a.psi)(b.psi) = (a+b).psi for all a, b in F_p.

        A consequence of iterativity; for finite K it does not imply it
        (checked over F_p only, the base-field points)."""
        p = self.domain.p
        for a in range(p):
            for b in range(p):
                lhs = self.scale(a).multiply(self.scale(b))
                rhs = self.scale((a + b) % p)
                if not lhs.equal_on_generators(rhs):
                    return False
        return True

    def equal_on_generators(self, other: "HigherDerivation") -> bool:
        return all(
            self.images[name] == other.images[name] for name, _ in self.domain.generators()
        )

    def __eq__(self, other):
        return (
            isinstance(other, HigherDerivation)
            and self.domain == other.domain
            and self.order == other.order
            and self.equal_on_generators(other)
        )

    def __repr__(self):
        return f"HigherDerivation({self.domain!r}, N={self.order})"


# -- Newton lifting --------------------------------------------------------------


def newton_extend(psi: HigherDerivation, minpoly: list, order: int | None = None) -> HigherDerivation:
    """Extend psi uniquely to F_p(t)[y]/(m) by Newton iteration.

    minpoly is the coefficient list of a monic m(X) over F_p[t] or F_p(t);
    m'(y) must be a unit (NotEtale otherwise). The lift solves
    m^psi(z) = 0 in the nilpotent kernel (T)/(T^{N+1}) via
    z <- z - m'(z)^{-1} m(z), starting at z = y.
    """
    if order is None:
        order = psi.order
    dom = psi.domain
    p = dom.p
    coeffs = [_as_ratfunc(c, p) for c in minpoly]
    ext = ExtRing(p, coeffs)
    ext.check_etale()
    edom = ExtDomain(ext)

    timg = psi.images[psi.domain.generators()[0][0]]
    timg_ext = timg.map_coeffs(lambda c: ext.of_base(_as_ratfunc(c, p)), ext)

    base = RatFuncDomain(p)
    base_psi = HigherDerivation(
        base, order, {"t": timg.map_coeffs(lambda c: _as_ratfunc(c, p), base.ring)}
    )
    m_psi = [
        base_psi.apply_series(c).map_coeffs(ext.of_base, ext) for c in ext.minpoly
    ]
    md_psi = [m_psi[i].mul_int(i) for i in range(1, len(m_psi))]

    def horner(cs, z):
        acc = TSeries.zero(ext, order)
        for c in reversed(cs):
            acc = acc * z + c
        return acc

    z = TSeries.const(ext, ext.gen(), order)
    for _ in range(order + 1):
        residual = horner(m_psi, z)
        if residual.is_zero():
            break
        z = z - horner(md_psi, z).inverse() * residual
    if not horner(m_psi, z).is_zero():
        raise ArithmeticError("Newton iteration failed to converge in the truncation")
    return HigherDerivation(edom, order, {"t": timg_ext, "y": z})


def _as_ratfunc(c, p) -> RatFunc:
    if isinstance(c, RatFunc):
        return c
    if isinstance(c, Poly):
        return RatFunc.from_poly(c)
    if isinstance(c, MPoly):
        if c.m != 1:
            raise ValueError("only univariate coefficients can be lifted")
        cs = [0] * (c.total_degree() + 1)
        for e, v in c.terms.items():
            cs[e[0]] = v
        return RatFunc.from_poly(Poly(cs, p))
    if isinstance(c, int):
        return RatFunc.const(c, p)
    raise TypeError(f"cannot coerce {c!r} into F_p(t)")


# -- characteristic zero --------------------------------------------------------


def from_derivation(image_of_t: QPoly, order: int) -> HigherDerivation:
    """phi_d for the derivation d = a(t) d/dt on Q[t]: components d^k / k!."""
    dom = CharZeroDomain()
    dk = QPoly.t()
    coeffs = [dk]
    fact = Fraction(1)
    for k in range(1, order + 1):
        dk = image_of_t * dk.derivative()
        fact *= k
        coeffs.append(dk.scale(1 / fact))
    return HigherDerivation(dom, order, {"t": TSeries(dom.ring, coeffs, order)})


def derivation_of(psi: HigherDerivation) -> QPoly:
    """The inverse dictionary: an iterative derivation is phi_d for d = psi^{(1)}."""
    return psi.images["t"][1]
