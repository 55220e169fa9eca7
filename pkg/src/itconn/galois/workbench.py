"""Torsor and Galois-correspondence machinery for the worked examples.

Everything is exact: R (x)_K K[G] elements carry RElem coordinates on the
Hopf basis, R (x)_F R elements carry Laurent coefficients on pairs of
monomials, and all verification reduces to fraction-free linear algebra
over F_p(t)[u^{±1}] or to finite F_p systems (for the windowed constants).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra.frob import binom_int, squarefree_layers
from ..algebra.linalg import Mat
from ..algebra.fields import PrimeField
from ..algebra.poly import Poly
from ..algebra.ratfunc import RatFunc
from ..errors import NotEquivariant, NotIso
from ..series import TSeries
from .hopf import HopfAlgebra, HopfIdeal
from .laurent import Coef, CoefRing, bareiss_rank, coef_kernel
from .rings import GROUPLIKE, RElem, ThetaRing


# -- R (x)_K K[G] -----------------------------------------------------------------


class RKG:
    """Element of R (x)_K K[G]: RElem coordinates on the Hopf basis."""

    __slots__ = ("ring", "hopf", "comps")

    def __init__(self, ring: ThetaRing, hopf: HopfAlgebra, comps: dict):
        self.ring = ring
        self.hopf = hopf
        self.comps = {g: z for g, z in comps.items() if not z.is_zero()}

    @staticmethod
    def lift(ring, hopf, z: RElem) -> "RKG":
        return RKG(ring, hopf, {hopf.unit: z})

    def __add__(self, other):
        out = dict(self.comps)
        for g, z in other.comps.items():
            prev = out.get(g)
            out[g] = z if prev is None else prev + z
        return RKG(self.ring, self.hopf, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RKG(self.ring, self.hopf, {g: -z for g, z in self.comps.items()})

    def __mul__(self, other):
        out: dict = {}
        for g1, z1 in self.comps.items():
            for g2, z2 in other.comps.items():
                z = z1 * z2
                if z.is_zero():
                    continue
                for g, c in self.hopf.basis_mul(g1, g2).items():
                    zz = z.scale_int(c)
                    prev = out.get(g)
                    out[g] = zz if prev is None else prev + zz
        return RKG(self.ring, self.hopf, out)

    def scale_relem(self, z: RElem) -> "RKG":
        return RKG(self.ring, self.hopf, {g: z * w for g, w in self.comps.items()})

    def is_zero(self):
        return not self.comps

    def theta_component(self, k: int) -> "RKG":
        """theta_R (x) id (the trivial extension to the Hopf factor)."""
        return RKG(
            self.ring,
            self.hopf,
            {g: self.ring.theta_component(z, k) for g, z in self.comps.items()},
        )

    def inverse(self) -> "RKG":
        if len(self.comps) != 1:
            raise ZeroDivisionError("only single-coordinate elements are inverted here")
        (g, z), = self.comps.items()
        ginv = _hopf_basis_inverse(self.hopf, g)
        out: dict = {}
        zi = z.inverse()
        for h, c in ginv.items():
            out[h] = zi.scale_int(c)
        return RKG(self.ring, self.hopf, out)

    def __eq__(self, other):
        return isinstance(other, RKG) and self.comps == other.comps

    def __repr__(self):
        return " + ".join(f"({z!r})(x){self.hopf.labels[g]}" for g, z in sorted(self.comps.items())) or "0"


def _hopf_basis_inverse(hopf: HopfAlgebra, g: int) -> dict:
    """Inverse of a basis element in the table algebra (exists for the
    grouplikes we use; found by solving the small linear system)."""
    p = hopf.p
    F = PrimeField(p)
    rows = [[F.zero] * hopf.dim for _ in range(hopf.dim)]
    for j in range(hopf.dim):
        for k, c in hopf.basis_mul(g, j).items():
            rows[k][j] = F.of(c)
    rhs = [F.one if i == hopf.unit else F.zero for i in range(hopf.dim)]
    x, _ = Mat(F, rows).solve(rhs)
    return {j: x[j].value for j in range(hopf.dim) if x[j].value}


# -- coactions -----------------------------------------------------------------------


@dataclass
class CoactionReport:
    coassociative: bool
    counital: bool
    equivariant: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return self.coassociative and self.counital and self.equivariant


class Coaction:
    """rho: R -> R (x) K[G], given on generators, extended multiplicatively."""

    def __init__(self, ring: ThetaRing, hopf: HopfAlgebra, gen_images: list):
        self.ring = ring
        self.hopf = hopf
        self.gen_images = gen_images
        self._pow_cache: dict = {}

    def _power(self, kind: str, i: int, e: int) -> RKG:
        key = (kind, i, e)
        if key in self._pow_cache:
            return self._pow_cache[key]
        if kind == "r":
            base = self.gen_images[i]
        else:
            q = self.ring.p ** self.ring.gens[i].power
            base = self._power("r", i, q)
        if e >= 0:
            acc = RKG.lift(self.ring, self.hopf, self.ring.one())
            for _ in range(e):
                acc = acc * base
        else:
            acc = base.inverse()
            inv = acc
            for _ in range(-e - 1):
                acc = acc * inv
        self._pow_cache[key] = acc
        return acc

    def rho(self, z: RElem) -> RKG:
        acc = RKG(self.ring, self.hopf, {})
        inv_u = {v: k for k, v in self.ring.u_index.items()}
        for (ue, re), c in z.terms.items():
            term = RKG.lift(self.ring, self.hopf, self.ring.of_rat(c))
            for i, e in enumerate(re):
                if e:
                    term = term * self._power("r", i, e)
            for uidx, e in enumerate(ue):
                if e:
                    term = term * self._power("u", inv_u[uidx], e)
            acc = acc + term
        return acc

    def verify(self, spanning: list | None = None, window: int = 1) -> CoactionReport:
        """Comodule axioms plus theta-equivariance on a spanning set."""
        ring, hopf = self.ring, self.hopf
        if spanning is None:
            spanning = ring.basis_monomials(window)
        failures = []
        coassoc = True
        counital = True
        equivariant = True
        for z in spanning:
            image = self.rho(z)
            # (id (x) counit) rho = id
            back = ring.zero()
            for g, w in image.comps.items():
                if hopf.counit[g]:
                    back = back + w.scale_int(hopf.counit[g])
            if back != z:
                counital = False
                failures.append(("counit", z))
            # (rho (x) id) rho = (id (x) Delta) rho
            lhs: dict = {}
            for g, w in image.comps.items():
                inner = self.rho(w)
                for g2, w2 in inner.comps.items():
                    key = (g2, g)
                    prev = lhs.get(key)
                    lhs[key] = w2 if prev is None else prev + w2
            rhs: dict = {}
            for g, w in image.comps.items():
                for (a, b), c in hopf.delta[g].items():
                    prev = rhs.get((a, b))
                    ww = w.scale_int(c)
                    rhs[(a, b)] = ww if prev is None else prev + ww
            lhs = {k: v for k, v in lhs.items() if not v.is_zero()}
            rhs = {k: v for k, v in rhs.items() if not v.is_zero()}
            if lhs != rhs:
                coassoc = False
                failures.append(("coassociativity", z))
            # theta-equivariance
            series = ring.theta_series(z)
            for k in range(1, ring.order + 1):
                if self.rho(series[k]) != image.theta_component(k):
                    equivariant = False
                    failures.append(("equivariance", z, k))
                    break
        return CoactionReport(coassoc, counital, equivariant, failures)


# -- R (x)_F R -------------------------------------------------------------------------


class TensorSquare:
    """Element of R (x)_F R: Laurent coefficients on pairs of r-monomials
    (the transcendentals are F-scalars and move across the tensor)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: ThetaRing, terms: dict, *, _trusted=False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            self.terms = {k: c for k, c in terms.items() if not c.is_zero()}

    @staticmethod
    def zero(ring) -> "TensorSquare":
        return TensorSquare(ring, {}, _trusted=True)

    @staticmethod
    def pure(ring, a: RElem, b: RElem) -> "TensorSquare":
        out: dict = {}
        for (ua, ra), ca in a.terms.items():
            for (ub, rb), cb in b.terms.items():
                ue = tuple(x + y for x, y in zip(ua, ub))
                coef = Coef({ue: ca * cb}, ring.p, ring.s)
                key = (ra, rb)
                prev = out.get(key)
                out[key] = coef if prev is None else prev + coef
        return TensorSquare(ring, out)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            prev = out.get(k)
            c2 = c if prev is None else prev + c
            if c2.is_zero():
                out.pop(k, None)
            else:
                out[k] = c2
        return TensorSquare(self.ring, out, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorSquare(self.ring, {k: -c for k, c in self.terms.items()}, _trusted=True)

    def scale_coef(self, c: Coef) -> "TensorSquare":
        out = {}
        for k, c0 in self.terms.items():
            c1 = c0 * c
            if not c1.is_zero():
                out[k] = c1
        return TensorSquare(self.ring, out, _trusted=True)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TensorSquare) and self.terms == other.terms

    def __repr__(self):
        return repr(self.terms)


def relem_side_decompose(ring: ThetaRing, z: RElem):
    """[(r-exponents, Coef)] splitting an RElem into pure r-monomials with
    Laurent coefficients."""
    out: dict = {}
    for (ue, re), c in z.terms.items():
        prev = out.get(re)
        coef = Coef({ue: c}, ring.p, ring.s)
        out[re] = coef if prev is None else prev + coef
    return list(out.items())


def tensor_theta_component(ring: ThetaRing, elem: TensorSquare, k: int) -> TensorSquare:
    """theta^{(k)} on R (x)_F R: the convolution of the two sides, the
    Laurent coefficient twisting through the full base-field action
    (phi_t on t and the derived action on the u's)."""
    acc = TensorSquare.zero(ring)
    for (ra, rb), coef in elem.terms.items():
        coef_series = coef_theta_series(ring, coef)
        a_series = ring.theta_series(ring.monomial((0,) * ring.s, ra))
        b_series = ring.theta_series(ring.monomial((0,) * ring.s, rb))
        # sum over c + i + j = k of coef_c * theta^{(i)}(a) (x) theta^{(j)}(b)
        for c in range(k + 1):
            cc = coef_series[c]
            if cc.is_zero():
                continue
            for i in range(k - c + 1):
                ai = a_series[i]
                bj = b_series[k - c - i]
                if ai.is_zero() or bj.is_zero():
                    continue
                acc = acc + TensorSquare.pure(ring, ai, bj).scale_coef(cc)
    return acc


def coef_theta_series(ring: ThetaRing, coef: Coef) -> TSeries:
    """theta on a base-field element (phi_t on t, the derived action on the
    u's), as a series of Laurent coefficients."""
    cring = CoefRing(ring.p, ring.s)
    inv_u = {v: k for k, v in ring.u_index.items()}
    acc = TSeries.zero(cring, ring.order)
    for ue, f in coef.terms.items():
        term = TSeries(
            cring,
            [Coef.of_rat(x, ring.s) for x in f.hasse_series(ring.order)],
            ring.order,
        )
        for uidx, e in enumerate(ue):
            if e:
                series_u = ring.theta_of_u(inv_u[uidx])
                coef_u = series_u.map_coeffs(lambda z: _relem_as_coef(ring, z), cring)
                term = term * (coef_u**e if e > 0 else coef_u.inverse() ** (-e))
        acc = acc + term
    return acc


def _relem_as_coef(ring: ThetaRing, z: RElem) -> Coef:
    out = {}
    for (ue, re), c in z.terms.items():
        if any(re):
            raise ValueError("element is not a base-field scalar")
        out[ue] = c
    return Coef(out, ring.p, ring.s)


# -- the torsor isomorphism --------------------------------------------------------------


@dataclass
class TorsorReport:
    source_dim: int
    target_dim: int
    bijective: bool
    equivariant: bool
    dims_match: bool

    @property
    def ok(self):
        return self.bijective and self.equivariant and self.dims_match


class Torsor:
    """gamma: R (x)_F R -> R (x)_K K[G], a (x) b -> (a (x) 1) rho(b)."""

    def __init__(self, ring: ThetaRing, coaction: Coaction, window: int = 0):
        self.ring = ring
        self.coaction = coaction
        self.hopf = coaction.hopf
        self.window = window
        self.source_keys = [
            (a, b)
            for a in self._mono_keys(window)
            for b in self._mono_keys(window)
        ]
        self._image_cache: dict = {}

    def _mono_keys(self, window):
        return [
            next(iter(m.terms))[1] for m in self.ring.basis_monomials(window)
        ]

    def gamma_of_pair(self, ra: tuple, rb: tuple) -> RKG:
        key = (ra, rb)
        if key not in self._image_cache:
            a = self.ring.monomial((0,) * self.ring.s, ra)
            b = self.ring.monomial((0,) * self.ring.s, rb)
            self._image_cache[key] = RKG.lift(self.ring, self.hopf, a) * self.coaction.rho(b)
        return self._image_cache[key]

    def gamma(self, elem: TensorSquare) -> RKG:
        acc = RKG(self.ring, self.hopf, {})
        for (ra, rb), coef in elem.terms.items():
            img = self.gamma_of_pair(ra, rb)
            for ue, f in coef.terms.items():
                scalar = RElem(
                    self.ring, {(ue, (0,) * len(self.ring.gens)): f}
                )
                acc = acc + img.scale_relem(scalar)
        return acc

    def matrix_over_coef(self) -> list:
        """gamma as a matrix over F: rows (target r-monomial, Hopf index),
        columns the source pairs."""
        target_index: dict = {}
        columns = []
        for (ra, rb) in self.source_keys:
            img = self.gamma_of_pair(ra, rb)
            col: dict = {}
            for g, z in img.comps.items():
                for re, coef in relem_side_decompose(self.ring, z):
                    target_index.setdefault((re, g), len(target_index))
                    col[(re, g)] = coef
            columns.append(col)
        rows = []
        for key, _ in sorted(target_index.items(), key=lambda kv: kv[1]):
            row = []
            for col in columns:
                row.append(col.get(key, Coef.zero(self.ring.p, self.ring.s)))
            rows.append(row)
        return rows

    def verify(self, levels: int | None = None) -> TorsorReport:
        ring = self.ring
        rows = self.matrix_over_coef()
        n_source = len(self.source_keys)
        n_target = len(rows)
        bijective = n_source == n_target and bareiss_rank(rows) == n_source
        mono_count = len(self._mono_keys(self.window))
        dims_match = n_source == mono_count * mono_count
        if self.window == 0 and self.hopf.dim:
            dims_match = dims_match and n_source == mono_count * self.hopf.dim
        # theta-equivariance on the spanning pairs
        equivariant = True
        bound = ring.order + 1 if levels is None else levels
        for (ra, rb) in self.source_keys:
            src = TensorSquare(
                ring, {(ra, rb): Coef.one(ring.p, ring.s)}, _trusted=True
            )
            img = self.gamma_of_pair(ra, rb)
            for k in range(1, bound):
                lhs = self.gamma(tensor_theta_component(ring, src, k))
                rhs = img.theta_component(k)
                if lhs != rhs:
                    equivariant = False
                    break
            if not equivariant:
                break
        return TorsorReport(n_source, n_target, bijective, equivariant, dims_match)


def build_torsor_gamma(ring: ThetaRing, coaction: Coaction, window: int = 0) -> Torsor:
    """Construct gamma and verify bijectivity + equivariance (NotIso /
    NotEquivariant on failure)."""
    torsor = Torsor(ring, coaction, window)
    report = torsor.verify()
    if not (report.bijective and report.dims_match):
        raise NotIso(f"gamma is not an isomorphism: {report}")
    if not report.equivariant:
        raise NotEquivariant("gamma does not commute with the theta-action")
    return torsor


# -- invariance and invariant subalgebras ----------------------------------------------


def invariance_test(torsor: Torsor, r: RElem, s: RElem, ideal: HopfIdeal) -> bool:
    """Kernel criterion: r/s is H-invariant iff gamma(r (x) s - s (x) r)
    lies in R (x) I_H."""
    if s.is_zero():
        raise ZeroDivisionError("invariance test needs s != 0")
    w = torsor.gamma(
        TensorSquare.pure(torsor.ring, r, s) - TensorSquare.pure(torsor.ring, s, r)
    )
    # reduce the Hopf coordinates modulo the ideal
    dim = torsor.hopf.dim
    quotient: dict = {}
    for g, z in w.comps.items():
        vec = [0] * dim
        vec[g] = 1
        reduced = ideal.reduce_vec(vec)
        for q, c in enumerate(reduced):
            if c:
                prev = quotient.get(q)
                zz = z.scale_int(c)
                quotient[q] = zz if prev is None else prev + zz
    return all(z.is_zero() for z in quotient.values())


def invariant_subalgebra(coaction: Coaction, ideal: HopfIdeal, window: int = 0) -> list:
    """Basis of R^H = {z : rho_H(z) = z (x) 1} by exact kernel computation
    over F on the monomial basis."""
    ring = coaction.ring
    monos = ring.basis_monomials(window)
    keys = [next(iter(m.terms))[1] for m in monos]
    dim = coaction.hopf.dim
    # rows: (target monomial, quotient coordinate); cols: source monomials
    target_rows: dict = {}
    columns = []
    for m in monos:
        img = coaction.rho(m)
        one_part = RKG.lift(ring, coaction.hopf, m)
        diff = img - one_part
        col: dict = {}
        for g, z in diff.comps.items():
            vec = [0] * dim
            vec[g] = 1
            reduced = ideal.reduce_vec(vec)
            for q, c in enumerate(reduced):
                if not c:
                    continue
                for re, coef in relem_side_decompose(ring, z.scale_int(c)):
                    key = (re, q)
                    target_rows.setdefault(key, len(target_rows))
                    prev = col.get(key)
                    col[key] = coef if prev is None else prev + coef
        columns.append({k: c for k, c in col.items() if not c.is_zero()})
    rows = []
    for key, _ in sorted(target_rows.items(), key=lambda kv: kv[1]):
        rows.append(
            [col.get(key, Coef.zero(ring.p, ring.s)) for col in columns]
        )
    if not rows:
        return monos
    kernel = coef_kernel(rows, ring.p, ring.s)
    out = []
    for vec in kernel:
        elem = ring.zero()
        for j, coef in enumerate(vec):
            if not coef.is_zero():
                for ue, f in coef.terms.items():
                    elem = elem + RElem(
                        ring, {(ue, keys[j]): f}
                    )
        out.append(elem)
    return out


def span_equal(ring: ThetaRing, xs: list, ys: list, window: int = 0) -> bool:
    """Equality of F-spans inside R (rank comparisons over the Laurent domain)."""
    keys = [next(iter(m.terms))[1] for m in ring.basis_monomials(window)]
    key_index = {k: i for i, k in enumerate(keys)}

    def coords(z: RElem):
        vec = [Coef.zero(ring.p, ring.s) for _ in keys]
        for re, coef in relem_side_decompose(ring, z):
            vec[key_index[re]] = coef
        return vec

    mx = [coords(z) for z in xs]
    my = [coords(z) for z in ys]
    rx = bareiss_rank(mx)
    ry = bareiss_rank(my)
    rboth = bareiss_rank(mx + my)
    return rx == ry == rboth


def theta_stable(ring: ThetaRing, basis: list, window: int = 0) -> bool:
    """The F-span of `basis` is stable under every theta component."""
    for z in basis:
        series = ring.theta_series(z)
        for k in range(1, ring.order + 1):
            img = series[k]
            if img.is_zero():
                continue
            if not span_equal(ring, basis, basis + [img], window):
                return False
    return True
