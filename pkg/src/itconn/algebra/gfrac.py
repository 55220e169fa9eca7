"""Matrices over F_p[t] localised at a finite set of coprime base polynomials.

The deep Frobenius-descent pipelines only produce denominators whose
irreducible factors come from a small fixed set (determinants of the input
lattices). Representing a matrix as (numerator rows) / prod b_i^{e_i} over
a gcd-free basis {b_i} keeps every heavy operation a polynomial
convolution with no slack in the degrees: Hasse components of N/prod b^e
have exact denominator prod b^{e+c}, products add exponent vectors, sums
take componentwise maxima. gcd reduction happens only at the boundaries.
"""

from __future__ import annotations

from .frob import binom_int, poly_pth_root, squarefree_layers
from .linalg import Mat
from .poly import Poly
from .ratfunc import RatFunc, RatFuncField


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        raise ZeroDivisionError("lcm with zero polynomial")
    return ((a // a.gcd(b)) * b).monic()


def coprime_basis(polys: list[Poly]) -> list[Poly]:
    """A gcd-free basis: pairwise coprime monic squarefree polynomials such
    that every input is a product of powers of basis elements. Inputs are
    replaced by their squarefree layers first; refining those keeps the
    power-product property (each layer is a product of basis elements)."""
    work = []
    for f in polys:
        for s, _ in squarefree_layers(f):
            if s.degree > 0:
                work.append(s)
    changed = True
    while changed:
        changed = False
        out: list[Poly] = []
        while work:
            a = work.pop()
            for i, b in enumerate(out):
                g = a.gcd(b)
                if g.degree > 0:
                    rest_a = a // g
                    rest_b = b // g
                    out.pop(i)
                    for piece in (g, rest_a, rest_b):
                        if piece.degree > 0:
                            work.append(piece)
                    changed = True
                    break
            else:
                if all(a != b for b in out):
                    out.append(a)
        work = out[:]
    return sorted(work, key=lambda f: (f.degree, f.cs))


class GRing:
    """Context: coprime monic bases b_1..b_s with power and inverse caches."""

    def __init__(self, bases: list[Poly], p: int):
        self.p = p
        self.bases = list(bases)
        self.s = len(self.bases)
        self._powers = [[Poly.one(p), b] for b in self.bases]
        # per base: numerators R_c with theta^{(c)}(1/b) = R_c / b^{c+1}
        self._inv: list[list[Poly]] = [[Poly.one(p)] for _ in self.bases]
        self._base_hasse: list[list[Poly]] = [[b] for b in self.bases]
        # per exponent vector: series numerators S_c with
        # theta^{(c)}(1 / prod b^e) = S_c / prod b^{e+c}
        self._den_series: dict[tuple, list[Poly]] = {}

    @staticmethod
    def for_denominators(dens: list[Poly], p: int) -> "GRing":
        return GRing(coprime_basis(dens), p)

    def power(self, i: int, k: int) -> Poly:
        pw = self._powers[i]
        while len(pw) <= k:
            pw.append(pw[-1] * self.bases[i])
        return pw[k]

    def cofactor(self, lo: tuple, hi: tuple) -> Poly | None:
        """prod b^{hi - lo}, or None if hi == lo."""
        if lo == hi:
            return None
        acc = None
        for i in range(self.s):
            d = hi[i] - lo[i]
            if d:
                f = self.power(i, d)
                acc = f if acc is None else acc * f
        return acc

    def den_poly(self, exps: tuple) -> Poly:
        acc = Poly.one(self.p)
        for i, e in enumerate(exps):
            if e:
                acc = acc * self.power(i, e)
        return acc

    def factor_denominator(self, den: Poly) -> tuple:
        """Exponent vector of a monic denominator over the basis."""
        exps = [0] * self.s
        rest = den.monic()
        for i, b in enumerate(self.bases):
            while True:
                q, r = rest.divmod(b)
                if r.is_zero():
                    exps[i] += 1
                    rest = q
                else:
                    break
        if not rest.is_one():
            raise ValueError("denominator has a factor outside the basis")
        return tuple(exps)

    def _base_components(self, i: int, order: int) -> list[Poly]:
        binom = lambda n, k: binom_int(n, k, self.p)
        bh = self._base_hasse[i]
        while len(bh) <= order:
            bh.append(self.bases[i].hasse(len(bh), binom))
        return bh

    def _inv_components(self, i: int, order: int) -> list[Poly]:
        """R_c = -sum_{j<c} R_j * b_{c-j} * b^{c-1-j} (den of component c: b^{c+1})."""
        bh = self._base_components(i, order)
        inv = self._inv[i]
        while len(inv) <= order:
            c = len(inv)
            acc = Poly.zero(self.p)
            for j in range(c):
                acc = acc + inv[j] * bh[c - j] * self.power(i, c - 1 - j)
            inv.append(-acc)
        return inv

    def den_inverse_series(self, exps: tuple, order: int) -> list[Poly]:
        """S_c with theta^{(c)}(1/prod b^e) = S_c / prod b^{e + c*1}."""
        cached = self._den_series.get(exps)
        if cached is not None and len(cached) > order:
            return cached[: order + 1]
        # product over bases of the e_i-th power of the inverse series,
        # each factor aligned so component c has denominator b^{e_i + c}
        series = [Poly.one(self.p)] + [Poly.zero(self.p)] * order
        active = False
        for i, e in enumerate(exps):
            if not e:
                continue
            inv1 = self._inv_components(i, order)
            # e-th power of the inverse series of b_i, exponents aligned
            fac = [Poly.one(self.p)] + [Poly.zero(self.p)] * order
            for _ in range(e):
                nxt = []
                for c in range(order + 1):
                    acc = Poly.zero(self.p)
                    for a in range(c + 1):
                        if fac[a].cs and inv1[c - a].cs:
                            acc = acc + fac[a] * inv1[c - a]
                    nxt.append(acc)
                fac = nxt
            if not active:
                series = fac
                active = True
            else:
                # both factors have component-c denominators (stuff)^{..+c};
                # cross terms need alignment by the complementary powers
                nxt = []
                for c in range(order + 1):
                    acc = Poly.zero(self.p)
                    for a in range(c + 1):
                        if series[a].cs and fac[c - a].cs:
                            term = series[a] * fac[c - a]
                            # series[a] is short by (c-a) in earlier bases,
                            # fac[c-a] is short by a in base i
                            term = term * self.power(i, a)
                            cof = self._earlier_cofactor(exps, i, c - a)
                            if cof is not None:
                                term = term * cof
                            acc = acc + term
                    nxt.append(acc)
                series = nxt
        self._den_series[exps] = series
        return series

    def _earlier_cofactor(self, exps: tuple, upto: int, k: int) -> Poly | None:
        """prod_{i < upto, e_i > 0} b_i^k (alignment when multiplying factor series)."""
        if k == 0:
            return None
        acc = None
        for i in range(upto):
            if exps[i]:
                f = self.power(i, k)
                acc = f if acc is None else acc * f
        return acc

    def extend(self, extra_dens: list[Poly]) -> tuple["GRing", callable]:
        """A refined ring whose basis accounts for the extra denominators,
        plus a translation of old exponent vectors into the new basis."""
        new = GRing(coprime_basis(self.bases + extra_dens), self.p)
        # each old base is a product of distinct new bases
        split = []
        for b in self.bases:
            parts = []
            for j, nb in enumerate(new.bases):
                if (b % nb).is_zero():
                    parts.append(j)
            split.append(parts)

        def translate(exps: tuple) -> tuple:
            out = [0] * new.s
            for i, e in enumerate(exps):
                if e:
                    for j in split[i]:
                        out[j] += e
            return tuple(out)

        return new, translate

    def __eq__(self, other):
        return isinstance(other, GRing) and self.p == other.p and self.bases == other.bases

    def __hash__(self):
        return hash(("GRing", self.p, tuple(map(str, self.bases))))


def _vec_max(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _vec_add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


class GMat:
    """(rows of Poly numerators) / prod b_i^{e_i}, one exponent vector per matrix."""

    __slots__ = ("ring", "rows", "exps", "nrows", "ncols")

    def __init__(self, ring: GRing, rows: list, exps: tuple):
        self.ring = ring
        self.rows = rows
        self.exps = exps
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0

    @staticmethod
    def identity(ring: GRing, n: int) -> "GMat":
        one, zero = Poly.one(ring.p), Poly.zero(ring.p)
        return GMat(ring, [[one if i == j else zero for j in range(n)] for i in range(n)], (0,) * ring.s)

    @staticmethod
    def zeros(ring: GRing, n: int, m: int) -> "GMat":
        zero = Poly.zero(ring.p)
        return GMat(ring, [[zero] * m for _ in range(n)], (0,) * ring.s)

    @staticmethod
    def from_ratmat(ring: GRing, mat: Mat) -> "GMat":
        exps = (0,) * ring.s
        factored = []
        for row in mat.rows:
            frow = []
            for entry in row:
                fe = ring.factor_denominator(entry.den)
                exps = _vec_max(exps, fe)
                frow.append(fe)
            factored.append(frow)
        den = ring.den_poly(exps)
        rows = []
        for row, frow in zip(mat.rows, factored):
            out = []
            for entry, fe in zip(row, frow):
                out.append(entry.num * (den // entry.den))
            rows.append(out)
        return GMat(ring, rows, exps)

    def with_exps(self, exps: tuple) -> "GMat":
        cof = self.ring.cofactor(self.exps, exps)
        if cof is None:
            return self
        return GMat(self.ring, [[c * cof for c in row] for row in self.rows], exps)

    def __add__(self, other: "GMat") -> "GMat":
        e = _vec_max(self.exps, other.exps)
        a, b = self.with_exps(e), other.with_exps(e)
        return GMat(self.ring, [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a.rows, b.rows)], e)

    def __sub__(self, other: "GMat") -> "GMat":
        e = _vec_max(self.exps, other.exps)
        a, b = self.with_exps(e), other.with_exps(e)
        return GMat(self.ring, [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a.rows, b.rows)], e)

    def __mul__(self, other: "GMat") -> "GMat":
        zero = Poly.zero(self.ring.p)
        bt = list(zip(*other.rows))
        rows = []
        for r in self.rows:
            out = []
            for c in bt:
                acc = zero
                for x, y in zip(r, c):
                    if x.cs and y.cs:
                        acc = acc + x * y
                out.append(acc)
            rows.append(out)
        return GMat(self.ring, rows, _vec_add(self.exps, other.exps))

    def scale_int(self, c: int) -> "GMat":
        return GMat(self.ring, [[x.scale(c) for x in row] for row in self.rows], self.exps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for row in self.rows for c in row)

    def __eq__(self, other):
        if not isinstance(other, GMat) or self.ring != other.ring:
            return NotImplemented
        e = _vec_max(self.exps, other.exps)
        a, b = self.with_exps(e), other.with_exps(e)
        return all(x == y for ra, rb in zip(a.rows, b.rows) for x, y in zip(ra, rb))

    def normalized(self) -> "GMat":
        """Strip common base factors from all numerators."""
        rows = self.rows
        exps = list(self.exps)
        for i in range(self.ring.s):
            base = self.ring.bases[i]
            while exps[i] > 0:
                quotients = []
                ok = True
                for row in rows:
                    qrow = []
                    for c in row:
                        q, r = c.divmod(base)
                        if not r.is_zero():
                            ok = False
                            break
                        qrow.append(q)
                    if not ok:
                        break
                    quotients.append(qrow)
                if not ok:
                    break
                rows = quotients
                exps[i] -= 1
        if tuple(exps) == self.exps:
            return self
        return GMat(self.ring, rows, tuple(exps))

    def hasse_series(self, order: int) -> list["GMat"]:
        """[theta^{(0)}(M), ..., theta^{(order)}(M)]; component c has
        exponent vector exps + c*support (support = bases present)."""
        ring = self.ring
        p = ring.p
        binom = lambda n, k: binom_int(n, k, p)
        if not any(self.exps):
            return [
                GMat(ring, [[c.hasse(b, binom) for c in row] for row in self.rows], self.exps)
                for b in range(order + 1)
            ]
        s_series = ring.den_inverse_series(self.exps, order)
        support = tuple(1 if e else 0 for e in self.exps)
        entry_hasse = [
            [[c.hasse(a, binom) for a in range(order + 1)] for c in row] for row in self.rows
        ]
        sup_pows: list[Poly | None] = [None]
        for a in range(1, order + 1):
            prev = sup_pows[-1]
            step = ring.cofactor((0,) * ring.s, support)
            sup_pows.append(step if prev is None else prev * step)
        out = []
        for b in range(order + 1):
            rows = []
            for i in range(self.nrows):
                row = []
                for j in range(self.ncols):
                    acc = Poly.zero(p)
                    for a in range(b + 1):
                        ha = entry_hasse[i][j][a]
                        if ha.cs and s_series[b - a].cs:
                            term = ha * s_series[b - a]
                            if a:
                                term = term * sup_pows[a]
                            acc = acc + term
                    row.append(acc)
                rows.append(row)
            exps_b = tuple(e + b * s for e, s in zip(self.exps, support))
            out.append(GMat(ring, rows, exps_b))
        return out

    def to_ratmat(self) -> Mat:
        F = RatFuncField(self.ring.p)
        den = self.ring.den_poly(self.exps)
        return Mat(F, [[RatFunc(c, den) for c in row] for row in self.rows])

    def entry_pl_root(self, l: int) -> "GMat":
        """Entrywise p^l-th root (NotAPthPower propagates). Exponents are
        raised to multiples of p^l first so the root stays in the ring."""
        q = self.ring.p**l
        target = tuple(((e + q - 1) // q) * q for e in self.exps)
        aligned = self.with_exps(target)
        rows = []
        for row in aligned.rows:
            out = []
            for c in row:
                r = c
                for _ in range(l):
                    r = poly_pth_root(r, self.ring.p)
                out.append(r)
            rows.append(out)
        return GMat(self.ring, rows, tuple(e // q for e in target))

    def reembedded(self, new_ring: GRing, translate) -> "GMat":
        return GMat(new_ring, self.rows, translate(self.exps))

    def __repr__(self):
        return f"GMat(exps={self.exps}, rows={self.rows!r})"


def gmat_sum(terms: list[GMat]) -> GMat:
    """Sum with a single exponent alignment (cheaper than chained adds)."""
    if not terms:
        raise ValueError("empty sum")
    ring = terms[0].ring
    exps = terms[0].exps
    for t in terms[1:]:
        exps = _vec_max(exps, t.exps)
    n, m = terms[0].nrows, terms[0].ncols
    zero = Poly.zero(ring.p)
    rows = [[zero] * m for _ in range(n)]
    for t in terms:
        cof = ring.cofactor(t.exps, exps)
        for i in range(n):
            for j in range(m):
                c = t.rows[i][j]
                if not c.cs:
                    continue
                if cof is not None:
                    c = c * cof
                rows[i][j] = rows[i][j] + c
    return GMat(ring, rows, exps)
