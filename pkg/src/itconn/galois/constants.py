"""Windowed exact computation of truncated constants.

The joint kernel of the theta components 1 <= k < p^L on R or R (x)_F R is
an F^{p^L}-module, so a raw kernel has no finite K-dimension; the
meaningful question is asked on a finite window: coefficients
N(t)/D * u^c on the monomial basis, with the window chosen so that the
only F^{p^L}-scalars it contains are the constants (D free of p^L-th
powers, deg N <= deg D + p^L - 1). Inside the window the kernel is an
exact finite F_p-linear system, solved blockwise along the coordinate
components the action actually couples.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra.fields import PrimeField
from ..algebra.frob import squarefree_layers
from ..algebra.linalg import Mat
from ..algebra.poly import Poly
from ..algebra.ratfunc import RatFunc
from ..series import TSeries
from .laurent import Coef, CoefRing
from .rings import RElem, ThetaRing
from .workbench import (
    TensorSquare,
    coef_theta_series,
    relem_side_decompose,
    tensor_theta_component,
)


@dataclass
class ConstantsReport:
    dim: int
    basis: list
    window: dict

    def __repr__(self):
        return f"ConstantsReport(dim={self.dim}, window={self.window})"


def _window_denominator(ring: ThetaRing, dens: list[Poly]) -> Poly:
    """Product of the denominator layers capped below p^L (keeping the
    window free of p^L-th powers, which would smuggle in extra scalars)."""
    p = ring.p
    cap = p**ring.L - 1
    acc = Poly.one(p)
    merged: dict = {}
    for d in dens:
        for s, m in squarefree_layers(d):
            key = tuple(s.cs)
            merged[key] = max(merged.get(key, 0), min(m, cap))
    for key, m in merged.items():
        acc = acc * (Poly(list(key), p) ** m)
    return acc


def _theta_images_ring(ring: ThetaRing, window: int):
    keys = [next(iter(m.terms))[1] for m in ring.basis_monomials(window)]
    images = {}
    for key in keys:
        series = ring.theta_series(ring.monomial((0,) * ring.s, key))
        images[key] = [
            dict(relem_side_decompose(ring, series[k])) for k in range(ring.order + 1)
        ]
    return keys, images


def _theta_images_square(ring: ThetaRing, window: int):
    mono_keys = [next(iter(m.terms))[1] for m in ring.basis_monomials(window)]
    keys = [(a, b) for a in mono_keys for b in mono_keys]
    images = {}
    for key in keys:
        src = TensorSquare(ring, {key: Coef.one(ring.p, ring.s)}, _trusted=True)
        per_level = []
        for k in range(ring.order + 1):
            img = tensor_theta_component(ring, src, k)
            per_level.append(dict(img.terms))
        images[key] = per_level
    return keys, images


def truncated_constants(
    ring: ThetaRing,
    keys: list,
    images: dict,
    u_lo: int,
    u_hi: int,
    rational_window: bool = False,
    numerator_bound: int = 0,
) -> ConstantsReport:
    """Joint kernel of theta^{(k)}, 1 <= k <= order, on the window
    { sum x_{key,c,j} t^j/D u^c key : u-exponents in [u_lo, u_hi] }.

    Window semantics matter here. The truncated action only carries digit
    data below p^L, so any direction whose twist is exhausted by the data
    is a genuine constant of the *truncated* structure even when the
    intended infinite-digit object has none (a terminated additive row
    makes t + r a constant, a rational coefficient can cancel a diagonal
    twist to beyond the truncation order, and every F^{p^L}-scalar is
    constant at this depth). The worked examples' constants all have
    K-coefficients on the monomial basis, so the default window is exactly
    that (numerator_bound = 0, no denominators); wider windows are
    diagnostics, reported as part of the result, never silently compared
    against the group dimension.

    `images[key][k]` maps structure keys to Coef (the theta components of
    the basis monomials)."""
    p, s = ring.p, ring.s
    F = PrimeField(p)
    order = ring.order
    cring = CoefRing(p, s)

    # 1. the source denominator window
    if rational_window:
        dens: list[Poly] = []
        for key in keys:
            for level in images[key][1:]:
                for coef in level.values():
                    for f in coef.terms.values():
                        if not f.den.is_one():
                            dens.append(f.den)
        # the theta-series of the u-monomials contribute denominators too
        for c in _u_box(s, u_lo, u_hi):
            series = coef_theta_series(ring, Coef({c: RatFunc.one(p)}, p, s))
            for comp in series.coeffs:
                for f in comp.terms.values():
                    if not f.den.is_one():
                        dens.append(f.den)
        d_window = _window_denominator(ring, dens)
        b_window = d_window.degree + p**ring.L - 1
    else:
        d_window = Poly.one(p)
        b_window = min(numerator_bound, p**ring.L - 1)

    # 2. per-(key, c) combined series: theta(u^c * key-monomial)
    comb: dict = {}
    target_dens: list[Poly] = [d_window]
    for key in keys:
        for c in _u_box(s, u_lo, u_hi):
            useries = coef_theta_series(ring, Coef({c: RatFunc.one(p)}, p, s))
            per_level: list[dict] = []
            for k in range(order + 1):
                acc: dict = {}
                for a in range(k + 1):
                    ua = useries[a]
                    if ua.is_zero():
                        continue
                    for key2, coef in images[key][k - a].items():
                        v = coef * ua
                        if v.is_zero():
                            continue
                        prev = acc.get(key2)
                        acc[key2] = v if prev is None else prev + v
                per_level.append(acc)
                for coef in acc.values():
                    for f in coef.terms.values():
                        if not f.den.is_one():
                            target_dens.append(f.den)
            comb[(key, c)] = per_level

    d_target = Poly.one(p)
    merged: dict = {}
    for d in target_dens + [d_window]:
        for sq, m in squarefree_layers(d):
            kk = tuple(sq.cs)
            merged[kk] = max(merged.get(kk, 0), m)
    for kk, m in merged.items():
        d_target = d_target * (Poly(list(kk), p) ** (m + order))

    # 3. cells and their images as exact F_p vectors
    source_cells = [
        (key, c, j)
        for key in keys
        for c in _u_box(s, u_lo, u_hi)
        for j in range(b_window + 1)
    ]
    cell_index = {cell: i for i, cell in enumerate(source_cells)}

    phi_cache: dict = {}

    def phi_series_of_tj(j: int) -> list[RatFunc]:
        if j not in phi_cache:
            f = RatFunc(Poly.monomial(1, j, p), d_window)
            phi_cache[j] = f.hasse_series(order)
        return phi_cache[j]

    # image of a source cell at level k: sum_{a+b=k} phi^{(a)}(t^j/D) comb[b]
    def cell_image(cell, k):
        key, c, j = cell
        phis = phi_series_of_tj(j)
        per = comb[(key, c)]
        acc: dict = {}
        for a in range(k + 1):
            fa = phis[a]
            if fa.is_zero():
                continue
            for key2, coef in per[k - a].items():
                v = coef.scale_rat(fa)
                if v.is_zero():
                    continue
                prev = acc.get(key2)
                acc[key2] = v if prev is None else prev + v
        return acc

    # 4. connected components of the coupling graph
    parent = list(range(len(source_cells)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    images_per_cell = []
    target_seen: dict = {}
    for idx, cell in enumerate(source_cells):
        rows: dict = {}
        for k in range(1, order + 1):
            img = cell_image(cell, k)
            for key2, coef in img.items():
                for ue2, f in coef.terms.items():
                    scaled = f * RatFunc.from_poly(d_target)
                    if not scaled.is_polynomial():
                        raise ArithmeticError("window denominator too small")
                    for jj, cc in enumerate(scaled.num.cs):
                        if cc:
                            tkey = (k, key2, ue2, jj)
                            rows[tkey] = (rows.get(tkey, 0) + cc) % p
        images_per_cell.append({k: v for k, v in rows.items() if v})
        for tkey in images_per_cell[-1]:
            if tkey in target_seen:
                union(idx, target_seen[tkey])
            else:
                target_seen[tkey] = idx

    blocks: dict = {}
    for idx in range(len(source_cells)):
        blocks.setdefault(find(idx), []).append(idx)

    # 5. per-block kernels over F_p
    basis_vectors = []
    for members in blocks.values():
        tkeys: dict = {}
        for idx in members:
            for tkey in images_per_cell[idx]:
                tkeys.setdefault(tkey, len(tkeys))
        if not tkeys:
            for idx in members:
                vec = [F.zero] * len(members)
                vec[members.index(idx)] = F.one
                basis_vectors.append((members, vec))
            continue
        rows = [[F.zero] * len(members) for _ in range(len(tkeys))]
        for col, idx in enumerate(members):
            for tkey, c in images_per_cell[idx].items():
                rows[tkeys[tkey]][col] = F.of(c)
        for vec in Mat(F, rows).kernel_basis():
            basis_vectors.append((members, vec))

    # 6. fold kernel vectors back into elements
    basis = []
    for members, vec in basis_vectors:
        elem: dict = {}
        for col, idx in enumerate(members):
            c = vec[col]
            if not c.value:
                continue
            key, ue, j = source_cells[idx]
            coef = Coef(
                {ue: RatFunc(Poly.monomial(c.value, j, p), d_window)}, p, s
            )
            prev = elem.get(key)
            elem[key] = coef if prev is None else prev + coef
        basis.append(elem)

    window = {
        "u_range": (u_lo, u_hi),
        "numerator_degree": b_window,
        "denominator": str(d_window),
        "levels_checked": order,
    }
    return ConstantsReport(len(basis), basis, window)


def _u_box(s: int, lo: int, hi: int):
    if s == 0:
        return [()]
    out = [()]
    for _ in range(s):
        out = [prefix + (v,) for prefix in out for v in range(lo, hi + 1)]
    return out


def ring_constants(ring: ThetaRing, window: int = 0, u_lo: int = -1, u_hi: int = 0) -> ConstantsReport:
    keys, images = _theta_images_ring(ring, window)
    return truncated_constants(ring, keys, images, u_lo, u_hi)


def square_constants(ring: ThetaRing, window: int = 0, u_lo: int = -1, u_hi: int = 0) -> ConstantsReport:
    keys, images = _theta_images_square(ring, window)
    return truncated_constants(ring, keys, images, u_lo, u_hi)
