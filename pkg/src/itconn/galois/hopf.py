"""Finite-dimensional Hopf algebras over K = F_p as explicit tables,
plus the graded Laurent mode for the multiplicative group.

Presets cover the worked group schemes: mu_k = K[x]/(x^k - 1) with
grouplike x, alpha_p = K[y]/(y^p) with primitive y, finite products of
those, and K[x, x^{-1}] with grouplike x. Coassociativity, the counit laws
and multiplicativity of the structure maps are verified at construction.
"""

from __future__ import annotations

from itertools import product as iproduct

from ..algebra.frob import binom_int


class HopfAlgebra:
    """Basis-indexed tables: mult[(i, j)] -> {k: c}, delta[i] -> {(a, b): c},
    counit[i] in F_p; the unit is basis vector `unit`."""

    def __init__(self, p, labels, mult, delta, counit, unit, name=""):
        self.p = p
        self.labels = labels
        self.dim = len(labels)
        self.mult = mult
        self.delta = delta
        self.counit = counit
        self.unit = unit
        self.name = name
        self._verify()

    # -- presets ---------------------------------------------------------------

    @staticmethod
    def mu(k: int, p: int) -> "HopfAlgebra":
        labels = [f"x^{a}" for a in range(k)]
        mult = {(a, b): {(a + b) % k: 1} for a in range(k) for b in range(k)}
        delta = [{(a, a): 1} for a in range(k)]
        counit = [1] * k
        return HopfAlgebra(p, labels, mult, delta, counit, 0, name=f"mu_{k}")

    @staticmethod
    def alpha(p: int) -> "HopfAlgebra":
        labels = [f"y^{a}" for a in range(p)]
        mult = {
            (a, b): ({a + b: 1} if a + b < p else {})
            for a in range(p)
            for b in range(p)
        }
        delta = [
            {(i, a - i): binom_int(a, i, p) for i in range(a + 1) if binom_int(a, i, p)}
            for a in range(p)
        ]
        counit = [1 if a == 0 else 0 for a in range(p)]
        return HopfAlgebra(p, labels, mult, delta, counit, 0, name=f"alpha_{p}")

    @staticmethod
    def product(h1: "HopfAlgebra", h2: "HopfAlgebra") -> "HopfAlgebra":
        p = h1.p
        n2 = h2.dim
        labels = [f"{a}*{b}" for a in h1.labels for b in h2.labels]

        def idx(a, b):
            return a * n2 + b

        mult = {}
        for (a1, b1) in iproduct(range(h1.dim), range(h2.dim)):
            for (a2, b2) in iproduct(range(h1.dim), range(h2.dim)):
                out = {}
                for k1, c1 in h1.mult[(a1, a2)].items():
                    for k2, c2 in h2.mult[(b1, b2)].items():
                        out[idx(k1, k2)] = (c1 * c2) % p
                mult[(idx(a1, b1), idx(a2, b2))] = {k: c for k, c in out.items() if c}
        delta = []
        for a in range(h1.dim):
            for b in range(h2.dim):
                out = {}
                for (x1, y1), c1 in h1.delta[a].items():
                    for (x2, y2), c2 in h2.delta[b].items():
                        key = (idx(x1, x2), idx(y1, y2))
                        out[key] = (out.get(key, 0) + c1 * c2) % p
                delta.append({k: c for k, c in out.items() if c})
        counit = [
            (h1.counit[a] * h2.counit[b]) % p for a in range(h1.dim) for b in range(h2.dim)
        ]
        return HopfAlgebra(
            p, labels, mult, delta, counit, idx(h1.unit, h2.unit),
            name=f"{h1.name}x{h2.name}",
        )

    # -- structure -----------------------------------------------------------------

    def vec_mul(self, v: list, w: list) -> list:
        p = self.p
        out = [0] * self.dim
        for i, ci in enumerate(v):
            if ci:
                for j, cj in enumerate(w):
                    if cj:
                        for k, c in self.mult[(i, j)].items():
                            out[k] = (out[k] + ci * cj * c) % p
        return out

    def basis_mul(self, i: int, j: int) -> dict:
        return self.mult[(i, j)]

    def _verify(self):
        p = self.p
        # unit
        for i in range(self.dim):
            assert self.mult[(self.unit, i)] == {i: 1}, "unit law fails"
            assert self.mult[(i, self.unit)] == {i: 1}, "unit law fails"
        # coassociativity on basis
        for i in range(self.dim):
            left: dict = {}
            right: dict = {}
            for (a, b), c in self.delta[i].items():
                for (x, y), d in self.delta[a].items():
                    key = (x, y, b)
                    left[key] = (left.get(key, 0) + c * d) % p
                for (x, y), d in self.delta[b].items():
                    key = (a, x, y)
                    right[key] = (right.get(key, 0) + c * d) % p
            assert {k: v for k, v in left.items() if v} == {
                k: v for k, v in right.items() if v
            }, "coassociativity fails"
        # counit laws
        for i in range(self.dim):
            lhs: dict = {}
            rhs: dict = {}
            for (a, b), c in self.delta[i].items():
                lhs[b] = (lhs.get(b, 0) + c * self.counit[a]) % p
                rhs[a] = (rhs.get(a, 0) + c * self.counit[b]) % p
            assert {k: v for k, v in lhs.items() if v} == {i: 1}, "counit law fails"
            assert {k: v for k, v in rhs.items() if v} == {i: 1}, "counit law fails"
        # delta and counit are algebra maps
        for i in range(self.dim):
            for j in range(self.dim):
                prod_delta: dict = {}
                for k, c in self.mult[(i, j)].items():
                    for key, d in self.delta[k].items():
                        prod_delta[key] = (prod_delta.get(key, 0) + c * d) % p
                convolved: dict = {}
                for (a1, b1), c1 in self.delta[i].items():
                    for (a2, b2), c2 in self.delta[j].items():
                        for x, cx in self.mult[(a1, a2)].items():
                            for y, cy in self.mult[(b1, b2)].items():
                                key = (x, y)
                                convolved[key] = (
                                    convolved.get(key, 0) + c1 * c2 * cx * cy
                                ) % p
                assert {k: v for k, v in prod_delta.items() if v} == {
                    k: v for k, v in convolved.items() if v
                }, "comultiplication is not an algebra map"

    # -- ideals ---------------------------------------------------------------------

    def ideal(self, generators: list) -> "HopfIdeal":
        return HopfIdeal(self, generators)

    def augmentation_ideal(self) -> "HopfIdeal":
        gens = []
        for i in range(self.dim):
            v = [0] * self.dim
            v[i] = 1
            v[self.unit] = (v[self.unit] - self.counit[i]) % self.p
            if any(v):
                gens.append(v)
        return HopfIdeal(self, gens)

    def is_reduced(self) -> bool:
        """Nilradical triviality by exhaustive powering (desk-scale dims)."""
        if self.p**self.dim > 1 << 16:
            raise ValueError("algebra too large for exhaustive reducedness test")
        for coeffs in iproduct(range(self.p), repeat=self.dim):
            if not any(coeffs):
                continue
            z = list(coeffs)
            power = z
            nil = False
            for _ in range(self.dim):
                power = self.vec_mul(power, power)
                if not any(power):
                    nil = True
                    break
            if nil:
                return False
        return True

    def __repr__(self):
        return f"HopfAlgebra({self.name or self.labels}, p={self.p})"


def _echelon(vectors: list, p: int, width: int):
    """Row echelon over F_p; returns (rows, pivot_cols)."""
    rows = [v[:] for v in vectors]
    pivots = []
    out = []
    for v in rows:
        w = v[:]
        for row, pc in zip(out, pivots):
            if w[pc]:
                f = (w[pc] * pow(row[pc], -1, p)) % p
                w = [(a - f * b) % p for a, b in zip(w, row)]
        lead = next((i for i, c in enumerate(w) if c), None)
        if lead is not None:
            out.append(w)
            pivots.append(lead)
    order = sorted(range(len(out)), key=lambda i: pivots[i])
    return [out[i] for i in order], [pivots[i] for i in order]


class HopfIdeal:
    """A two-sided ideal of the table algebra, stored in echelon form with
    the projection to a complement (the quotient coordinates)."""

    def __init__(self, hopf: HopfAlgebra, generators: list):
        self.hopf = hopf
        p = hopf.p
        span = [g[:] for g in generators]
        changed = True
        basis, pivots = _echelon(span, p, hopf.dim)
        while changed:
            changed = False
            new = []
            for v in basis:
                for j in range(hopf.dim):
                    prod = [0] * hopf.dim
                    for i, c in enumerate(v):
                        if c:
                            for k, d in hopf.mult[(i, j)].items():
                                prod[k] = (prod[k] + c * d) % p
                    new.append(prod)
            candidate, cpiv = _echelon(basis + new, p, hopf.dim)
            if len(candidate) != len(basis):
                basis, pivots = candidate, cpiv
                changed = True
        self.basis = basis
        self.pivots = pivots
        self.quotient_cols = [j for j in range(hopf.dim) if j not in pivots]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce_vec(self, v: list) -> list:
        """Representative modulo the ideal: pivot coordinates eliminated."""
        p = self.hopf.p
        w = v[:]
        for row, pc in zip(self.basis, self.pivots):
            if w[pc]:
                f = (w[pc] * pow(row[pc], -1, p)) % p
                w = [(a - f * b) % p for a, b in zip(w, row)]
        return w

    def contains_vec(self, v: list) -> bool:
        return not any(self.reduce_vec(v))

    def __eq__(self, other):
        return (
            isinstance(other, HopfIdeal)
            and self.hopf is other.hopf
            and self.basis == other.basis
        )

    def __repr__(self):
        return f"HopfIdeal(dim={self.dim})"


class LaurentHopf:
    """K[x, x^{-1}] with grouplike x: the graded mode for the
    multiplicative group. Elements are dicts {exponent: coefficient}."""

    def __init__(self, p: int):
        self.p = p

    def in_mu_ideal(self, elem: dict, k: int) -> bool:
        """Membership in (x^k - 1): reduce exponents mod k and sum."""
        if k <= 0:
            raise ValueError("subgroup index must be positive")
        residues: dict = {}
        for e, c in elem.items():
            r = e % k
            residues[r] = (residues.get(r, 0) + c) % self.p
        return not any(residues.values())
