"""Higher connections on free modules over K[t_1..t_m].

A connection is stored by its structure matrix: nabla(b_j) = sum_i
Omega[i][j] (x) b_i with Omega entries in the truncated differential
algebra and degree-0 part the identity. Provides the extension _Dif-nabla
to Dif (x) M, the iterativity check via the binomial component rule,
tensor/dual/hom constructions, morphism verification, evaluation along a
higher derivation, and the unit-derivative search behind local freeness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.frob import binom_int
from .algebra.multipoly import MPoly
from .errors import DescriptorMismatch, ZeroInput
from .hderiv import HigherDerivation, PolyDomain
from .hdiff import (
    DifDescriptor,
    DifElement,
    d_R,
    d_dif_scaled,
    evaluate,
    mono_degree,
)
from .series import TSeries

DifVec = list  # coordinates in Dif (x) M over the chosen basis


class HigherConnection:
    def __init__(self, desc: DifDescriptor, omega: list):
        self.desc = desc
        self.rank = len(omega)
        self.omega = omega
        for i in range(self.rank):
            if len(omega[i]) != self.rank:
                raise ValueError("structure matrix must be square")
            for j in range(self.rank):
                d0 = omega[i][j].degree_component(0)
                ident = DifElement.one(desc) if i == j else DifElement.zero(desc)
                if d0 != ident:
                    raise ValueError("degree-0 part of the structure matrix must be the identity")

    @staticmethod
    def trivial(desc: DifDescriptor, rank: int) -> "HigherConnection":
        omega = [
            [DifElement.one(desc) if i == j else DifElement.zero(desc) for j in range(rank)]
            for i in range(rank)
        ]
        return HigherConnection(desc, omega)

    def _check(self, other: "HigherConnection"):
        if self.desc != other.desc:
            raise DescriptorMismatch("connections over different differential algebras")

    def column(self, j: int) -> DifVec:
        """nabla(b_j) as a coordinate vector over Dif."""
        return [self.omega[i][j] for i in range(self.rank)]

    def scaled_omega(self, a: int) -> list:
        """(a.nabla): degree-k parts of Omega scaled by a^k."""
        desc = self.desc
        p = desc.p
        out = []
        for row in self.omega:
            new_row = []
            for entry in row:
                acc = DifElement.zero(desc)
                for k in range(desc.order + 1):
                    part = entry.degree_component(k)
                    if not part.is_zero():
                        acc = acc + (part.scale_int(pow(a, k, p)) if k else part)
                new_row.append(acc)
            out.append(new_row)
        return out

    # -- the extension to Dif (x) M ------------------------------------------

    def dif_nabla(self, vec: DifVec, a: int = 1) -> DifVec:
        """a._Dif-nabla: omega (x) b_j -> a.d_Dif(omega) * (a.nabla)(b_j)."""
        om = self.omega if a == 1 else self.scaled_omega(a)
        out = [DifElement.zero(self.desc) for _ in range(self.rank)]
        for j, wj in enumerate(vec):
            if wj.is_zero():
                continue
            dw = d_dif_scaled(a, wj)
            for i in range(self.rank):
                if not om[i][j].is_zero():
                    out[i] = out[i] + dw * om[i][j]
        return out

    def dif_nabla_component(self, vec: DifVec, k: int, a: int = 1) -> DifVec:
        """The degree-raising-by-k component of a._Dif-nabla."""
        out = [DifElement.zero(self.desc) for _ in range(self.rank)]
        for d in range(self.desc.order + 1):
            part = [w.degree_component(d) for w in vec]
            if all(w.is_zero() for w in part):
                continue
            img = self.dif_nabla(part, a)
            for i in range(self.rank):
                out[i] = out[i] + img[i].degree_component(d + k)
        return out

    def dif_nabla_inverse_on_module(self) -> list:
        """X(b_j) with _Dif-nabla(X(b_j)) = 1 (x) b_j, degree by degree.

        The degree-0 part of _Dif-nabla on 1 (x) M is the identity, so the
        inverse restricted there exists in the truncation."""
        desc = self.desc
        out = []
        for j in range(self.rank):
            parts = [[DifElement.one(desc) if i == j else DifElement.zero(desc) for i in range(self.rank)]]
            for s in range(1, desc.order + 1):
                acc = [DifElement.zero(desc) for _ in range(self.rank)]
                for i in range(1, s + 1):
                    img = self.dif_nabla_component(parts[s - i], i)
                    for r in range(self.rank):
                        acc[r] = acc[r] + img[r]
                parts.append([-w for w in acc])
            total = [DifElement.zero(desc) for _ in range(self.rank)]
            for part in parts:
                for r in range(self.rank):
                    total[r] = total[r] + part[r]
            out.append(total)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, HigherConnection)
            and self.desc == other.desc
            and self.omega == other.omega
        )

    def __repr__(self):
        return f"HigherConnection(rank={self.rank}, desc={self.desc})"


# -- spanning monomials ---------------------------------------------------------


def dif_monomials(desc: DifDescriptor, max_degree: int) -> list:
    """All monomials in the d^{(i)}t_j of weighted degree <= max_degree."""
    symbols = [(i, j) for j in range(desc.m) for i in range(1, max_degree + 1)]
    out = []

    def rec(start: int, remaining: int, current: dict):
        out.append(tuple(sorted(current.items())))
        for idx in range(start, len(symbols)):
            i, j = symbols[idx]
            if i <= remaining:
                current[(i, j)] = current.get((i, j), 0) + 1
                rec(idx, remaining - i, current)
                current[(i, j)] -= 1
                if not current[(i, j)]:
                    del current[(i, j)]

    rec(0, max_degree, {})
    return out


@dataclass
class IterativityReport:
    verdict: bool
    checked_order: int
    first_failure: tuple | None = None
    method: str = "binomial component rule on the spanning set"

    def __bool__(self):
        return self.verdict


def is_iterative_connection(conn: HigherConnection, order: int | None = None) -> IterativityReport:
    """Check _Dif-nabla^{(i)} o _Dif-nabla^{(j)} = C(i+j, i) _Dif-nabla^{(i+j)}
    on the spanning set {monomial (x) b_k} up to total degree N."""
    desc = conn.desc
    n = desc.order if order is None else min(order, desc.order)
    monos = dif_monomials(desc, n)
    for mono in monos:
        d = mono_degree(mono)
        base = DifElement(desc, {mono: MPoly.one(desc.p, desc.m)})
        for k in range(conn.rank):
            vec = [base if r == k else DifElement.zero(desc) for r in range(conn.rank)]
            for j in range(1, n - d + 1):
                mid = conn.dif_nabla_component(vec, j)
                for i in range(1, n - d - j + 1):
                    lhs = conn.dif_nabla_component(mid, i)
                    rhs = conn.dif_nabla_component(vec, i + j)
                    c = binom_int(i + j, i, desc.p)
                    rhs = [w.scale_int(c) for w in rhs]
                    if lhs != rhs:
                        return IterativityReport(False, n, (i, j, mono, k))
    return IterativityReport(True, n)


# -- evaluation along a higher derivation ------------------------------------------


def apply_psi(conn: HigherConnection, psi: HigherDerivation) -> list:
    """Matrices of nabla_psi = (psi~ (x) id) o nabla: entry (k)[i][j] is the
    degree-k coefficient of psi~(Omega[i][j])."""
    series = [[evaluate(psi, conn.omega[i][j]) for j in range(conn.rank)] for i in range(conn.rank)]
    return [
        [[series[i][j][k] for j in range(conn.rank)] for i in range(conn.rank)]
        for k in range(psi.order + 1)
    ]


def psi_derivation_apply(conn: HigherConnection, psi: HigherDerivation, coords: list) -> list:
    """nabla_psi applied to a vector of coordinate series: returns the
    coordinate series of nabla_psi(sum_j coords_j b_j) in M[[T]].

    coords entries are TSeries over the domain ring; the psi-twist
    nabla_psi(r m) = psi(r) nabla_psi(m) is built in.
    """
    mats = apply_psi(conn, psi)
    ring = psi.domain.ring
    order = psi.order
    out = [TSeries.zero(ring, order) for _ in range(conn.rank)]
    for j, rj in enumerate(coords):
        # psi applied to the coefficients of r_j (a ring element per degree)
        for s in range(order + 1):
            c = rj[s]
            if ring.is_zero(c):
                continue
            cpsi = psi.apply_series(c)
            for k in range(order + 1 - s):
                col = [mats[k][i][j] for i in range(conn.rank)]
                for i in range(conn.rank):
                    if not ring.is_zero(col[i]):
                        term = (cpsi * TSeries.const(ring, col[i], order)).shift(k + s)
                        out[i] = out[i] + term
    return out


# -- category constructions ----------------------------------------------------------


def tensor_connection(c1: HigherConnection, c2: HigherConnection) -> HigherConnection:
    """Basis b_i (x) c_l at index i*rank2 + l; structure matrix the Dif-product."""
    c1._check(c2)
    desc = c1.desc
    n1, n2 = c1.rank, c2.rank
    omega = [
        [
            c1.omega[i][j] * c2.omega[l][k]
            for j in range(n1)
            for k in range(n2)
        ]
        for i in range(n1)
        for l in range(n2)
    ]
    return HigherConnection(desc, omega)


def dual_connection(conn: HigherConnection) -> HigherConnection:
    """nabla*(f) = d_Dif o (id (x) f) o (_Dif-nabla)^{-1}|_{1 (x) M}."""
    inv = conn.dif_nabla_inverse_on_module()
    n = conn.rank
    omega = [
        [d_dif_scaled(1, inv[k][i]) for i in range(n)]
        for k in range(n)
    ]
    return HigherConnection(conn.desc, omega)


def hom_connection(c1: HigherConnection, c2: HigherConnection) -> HigherConnection:
    """Connection on Hom(M1, M2), basis E_{l k}: b_k -> b_l, index l*rank1 + k."""
    c1._check(c2)
    inv1 = c1.dif_nabla_inverse_on_module()
    n1, n2 = c1.rank, c2.rank
    omega_rows = []
    for lp in range(n2):
        for kp in range(n1):
            row = []
            for l in range(n2):
                for k in range(n1):
                    # coefficient of E_{l' k'} in nabla_H(E_{l k})
                    row.append(d_dif_scaled(1, inv1[kp][k]) * c2.omega[lp][l])
                    # note: entry belongs to column index l*n1 + k
            omega_rows.append(row)
    return HigherConnection(c1.desc, omega_rows)


def is_morphism(f: list, source: HigherConnection, target: HigherConnection) -> bool:
    """f: matrix over R (target.rank x source.rank); exact check in every
    degree <= N of nabla_2 o f = (id (x) f) o nabla_1."""
    source._check(target)
    desc = source.desc
    for j in range(source.rank):
        for k in range(target.rank):
            lhs = DifElement.zero(desc)
            for i in range(target.rank):
                lhs = lhs + d_R(desc, f[i][j]) * target.omega[k][i]
            rhs = DifElement.zero(desc)
            for i in range(source.rank):
                rhs = rhs + source.omega[i][j].scale_poly(f[k][i])
            if lhs != rhs:
                return False
    return True


def evaluation_morphism_matrix(conn: HigherConnection) -> list:
    """eps_M: M (x) M* -> R, b_i (x) b_j* -> delta_ij (1 x n^2 over R)."""
    n = conn.rank
    p, m = conn.desc.p, conn.desc.m
    return [[MPoly.one(p, m) if i == j else MPoly.zero(p, m) for i in range(n) for j in range(n)]]


def coevaluation_morphism_matrix(conn: HigherConnection) -> list:
    """delta_M: R -> M* (x) M, 1 -> sum_i b_i* (x) b_i (n^2 x 1 over R)."""
    n = conn.rank
    p, m = conn.desc.p, conn.desc.m
    return [[MPoly.one(p, m)] if (idx // n) == (idx % n) else [MPoly.zero(p, m)] for idx in range(n * n)]


def iota_morphism_matrix(c1: HigherConnection, c2: HigherConnection) -> list:
    """iota: M1* (x) M2 -> Hom(M1, M2), b_i* (x) b_l -> E_{l i}."""
    n1, n2 = c1.rank, c2.rank
    p, m = c1.desc.p, c1.desc.m
    rows = []
    for lp in range(n2):
        for kp in range(n1):
            row = []
            for i in range(n1):
                for l in range(n2):
                    row.append(MPoly.one(p, m) if (l == lp and i == kp) else MPoly.zero(p, m))
            rows.append(row)
    return rows


# -- unit-derivative search ------------------------------------------------------------


def unit_derivative_search(r: MPoly) -> tuple:
    """Smallest multi-index (k_1..k_m) with
    (phi_{t_m}^{(k_m)} o ... o phi_{t_1}^{(k_1)})(r) a unit in the local ring
    at (t_1..t_m), every componentwise-smaller index giving a non-unit."""
    if r.is_zero():
        raise ZeroInput("unit-derivative search needs a nonzero input")
    m = r.m
    max_deg = r.total_degree()

    def composed(idx):
        out = r
        for j, k in enumerate(idx):
            if k:
                out = out.hasse(j, k)
        return out

    def boxes(total, mm):
        if mm == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in boxes(total - first, mm - 1):
                yield (first,) + rest

    for total in range(max_deg + 1):
        for idx in boxes(total, m):
            if not composed(idx).is_unit_local():
                continue
            smaller_ok = True
            for smaller in _box_below(idx):
                if composed(smaller).is_unit_local():
                    smaller_ok = False
                    break
            if smaller_ok:
                return idx
    raise ArithmeticError("no unit derivative found below the total degree bound")


def _box_below(idx):
    """All multi-indices <= idx componentwise with at least one strict drop."""
    ranges = [range(k + 1) for k in idx]

    def rec(pos, prefix):
        if pos == len(idx):
            if prefix != idx:
                yield prefix
            return
        for v in ranges[pos]:
            yield from rec(pos + 1, prefix + (v,))

    yield from rec(0, ())
