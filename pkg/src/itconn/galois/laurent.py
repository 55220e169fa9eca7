"""Coefficients for the Galois workbench: F_p(t)[u_1^{±1}, ..., u_s^{±1}].

The inseparable examples adjoin one transcendental u_i per generator
(u_i = r_i^{p^{e_i}}); representing the base theta-field as this Laurent
ring keeps every computation exact. It is an integral domain, which is all
the fraction-free (Bareiss) linear algebra below needs; actual division
only ever happens by monomials (the units of the ring).
"""

from __future__ import annotations

from ..algebra.ratfunc import RatFunc, RatFuncField


class Coef:
    """An element of F_p(t)[u^{±1}]: finitely many RatFunc coefficients on
    integer exponent vectors."""

    __slots__ = ("p", "s", "terms")

    def __init__(self, terms: dict, p: int, s: int, *, _trusted=False):
        self.p = p
        self.s = s
        if _trusted:
            self.terms = terms
        else:
            self.terms = {tuple(e): c for e, c in terms.items() if not c.is_zero()}

    @staticmethod
    def zero(p: int, s: int) -> "Coef":
        return Coef({}, p, s, _trusted=True)

    @staticmethod
    def one(p: int, s: int) -> "Coef":
        return Coef({(0,) * s: RatFunc.one(p)}, p, s, _trusted=True)

    @staticmethod
    def of_rat(f: RatFunc, s: int) -> "Coef":
        if f.is_zero():
            return Coef.zero(f.p, s)
        return Coef({(0,) * s: f}, f.p, s, _trusted=True)

    @staticmethod
    def of_int(c: int, p: int, s: int) -> "Coef":
        return Coef.of_rat(RatFunc.const(c, p), s)

    @staticmethod
    def u_monomial(i: int, p: int, s: int, power: int = 1) -> "Coef":
        e = [0] * s
        e[i] = power
        return Coef({tuple(e): RatFunc.one(p)}, p, s, _trusted=True)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __add__(self, other: "Coef") -> "Coef":
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(e, None)
            else:
                out[e] = v
        return Coef(out, self.p, self.s, _trusted=True)

    def __sub__(self, other: "Coef") -> "Coef":
        return self + (-other)

    def __neg__(self) -> "Coef":
        return Coef({e: -c for e, c in self.terms.items()}, self.p, self.s, _trusted=True)

    def __mul__(self, other: "Coef") -> "Coef":
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                prev = out.get(e)
                v = v if prev is None else prev + v
                if v.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = v
        return Coef(out, self.p, self.s, _trusted=True)

    def scale_rat(self, f: RatFunc) -> "Coef":
        if f.is_zero():
            return Coef.zero(self.p, self.s)
        return Coef({e: c * f for e, c in self.terms.items()}, self.p, self.s, _trusted=True)

    def scale_int(self, n: int) -> "Coef":
        return self.scale_rat(RatFunc.const(n, self.p))

    def inverse(self) -> "Coef":
        """Inverse of a unit; the units are the monomials."""
        if len(self.terms) != 1:
            raise ZeroDivisionError("only monomials are invertible in the Laurent ring")
        (e, c), = self.terms.items()
        return Coef({tuple(-x for x in e): c.inverse()}, self.p, self.s, _trusted=True)

    def _lead(self):
        key = max(self.terms)
        return key, self.terms[key]

    def exact_div(self, other: "Coef") -> "Coef":
        """Exact division in the Laurent ring (used by Bareiss elimination)."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero coefficient")
        if self.is_zero():
            return self
        rem = self
        out: dict = {}
        le, lc = other._lead()
        guard = 0
        while not rem.is_zero():
            re, rc = rem._lead()
            qe = tuple(a - b for a, b in zip(re, le))
            qc = rc / lc
            out[qe] = out.get(qe, RatFunc.zero(self.p)) + qc
            rem = rem - Coef({qe: qc}, self.p, self.s, _trusted=True) * other
            guard += 1
            if guard > 10000:
                raise ArithmeticError("division does not terminate (inexact quotient?)")
        return Coef(out, self.p, self.s, _trusted=True)

    def hasse_series(self, order: int) -> list["Coef"]:
        """phi_t componentwise on the RatFunc coefficients (the u's are
        t-constants)."""
        out = [dict() for _ in range(order + 1)]
        for e, c in self.terms.items():
            for k, comp in enumerate(c.hasse_series(order)):
                if not comp.is_zero():
                    out[k][e] = comp
        return [Coef(d, self.p, self.s, _trusted=True) for d in out]

    def __eq__(self, other):
        return (
            isinstance(other, Coef)
            and (self.p, self.s) == (other.p, other.s)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.p, self.s, frozenset((e, hash(c)) for e, c in self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(
                f"u{i + 1}" if x == 1 else f"u{i + 1}^{x}" for i, x in enumerate(e) if x
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)


class CoefRing:
    """Ring adapter for TSeries over Coef."""

    def __init__(self, p: int, s: int):
        self.p = p
        self.s = s
        self.zero = Coef.zero(p, s)
        self.one = Coef.one(p, s)

    def of(self, n: int) -> Coef:
        return Coef.of_int(n, self.p, self.s)

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
        return isinstance(other, CoefRing) and (self.p, self.s) == (other.p, other.s)

    def __hash__(self):
        return hash(("CoefRing", self.p, self.s))


# -- fraction-free linear algebra over the Laurent domain ---------------------------


def bareiss_rank(rows: list[list[Coef]]) -> int:
    """Rank over the fraction field via fraction-free elimination."""
    m = [r[:] for r in rows]
    nr = len(m)
    nc = len(m[0]) if m else 0
    if nr == 0 or nc == 0:
        return 0
    p, s = m[0][0].p, m[0][0].s
    prev = Coef.one(p, s)
    rank = 0
    pr = 0
    for pc in range(nc):
        pivot = None
        for i in range(pr, nr):
            if not m[i][pc].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        m[pr], m[pivot] = m[pivot], m[pr]
        for i in range(pr + 1, nr):
            for j in range(pc + 1, nc):
                num = m[pr][pc] * m[i][j] - m[i][pc] * m[pr][j]
                m[i][j] = num.exact_div(prev)
            m[i][pc] = Coef.zero(p, s)
        prev = m[pr][pc]
        rank += 1
        pr += 1
        if pr == nr:
            break
    return rank


def coef_kernel(rows: list[list[Coef]], p: int, s: int) -> list[list[Coef]]:
    """Right kernel basis over the fraction field, entries cleared to the
    Laurent ring (fraction-free echelon + back substitution)."""
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    m = [r[:] for r in rows]
    prev = Coef.one(p, s)
    pivots: list[tuple[int, int]] = []
    pr = 0
    for pc in range(nc):
        pivot = None
        for i in range(pr, nr):
            if not m[i][pc].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        m[pr], m[pivot] = m[pivot], m[pr]
        for i in range(pr + 1, nr):
            for j in range(pc + 1, nc):
                num = m[pr][pc] * m[i][j] - m[i][pc] * m[pr][j]
                m[i][j] = num.exact_div(prev)
            m[i][pc] = Coef.zero(p, s)
        prev = m[pr][pc]
        pivots.append((pr, pc))
        pr += 1
        if pr == nr:
            break
    pivot_cols = [pc for _, pc in pivots]
    free_cols = [j for j in range(nc) if j not in pivot_cols]
    basis = []
    for fc in free_cols:
        # back substitution; kernel vectors are cleared to the Laurent ring
        # by scaling with the pivots instead of dividing by them
        vec = [Coef.zero(p, s) for _ in range(nc)]
        vec[fc] = Coef.one(p, s)
        for r, pc in reversed(pivots):
            acc = Coef.zero(p, s)
            for j in range(pc + 1, nc):
                if not m[r][j].is_zero() and not vec[j].is_zero():
                    acc = acc + m[r][j] * vec[j]
            if acc.is_zero():
                continue
            piv = m[r][pc]
            for j in range(nc):
                if j != pc:
                    vec[j] = vec[j] * piv
            vec[pc] = -acc
        basis.append(vec)
    return basis
