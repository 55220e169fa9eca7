"""Truncated power-series solutions of iterable higher differential equations.

theta(y) = A y over F_p(t) with p-power data A_{p^l}, solved at the origin
with Y(0) = 1. Coefficients are determined degree by degree through the
lowest nonzero base-p digit of the index (Lucas makes that binomial
invertible); every remaining equation is then re-verified, because the
recursion uses only one equation per coefficient and the rest witness the
iterability of the input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.frob import binom_int, lowest_nonzero_digit
from .algebra.linalg import Mat
from .algebra.ratfunc import RatFunc
from .errors import Inconsistent, PoleAtOrigin
from .idmod import check_compatibility


@dataclass
class IterableEquation:
    p: int
    n: int
    L: int
    A: list  # A[l] = A_{p^l} in Mat_n(F_p(t)), regular at t = 0

    def series_matrices(self, order: int) -> list:
        """[A_{p^l} expanded at t = 0 to the given order], PoleAtOrigin on poles."""
        return [
            [[entry.series_at_zero(order) for entry in row] for row in mat.rows]
            for mat in self.A
        ]

    def compatibility(self):
        return check_compatibility((self.p, self.n, self.L), self.A)


class SeriesMatrix:
    """n x n matrix of truncated power series over F_p (coefficient lists)."""

    def __init__(self, p: int, n: int, order: int, entries: list | None = None):
        self.p = p
        self.n = n
        self.order = order
        if entries is None:
            entries = [
                [[1 if i == j else 0] + [0] * order for j in range(n)] for i in range(n)
            ]
        self.entries = entries

    @staticmethod
    def identity(p: int, n: int, order: int) -> "SeriesMatrix":
        return SeriesMatrix(p, n, order)

    def coeff_matrix(self, m: int) -> list:
        return [[self.entries[i][j][m] for j in range(self.n)] for i in range(self.n)]

    def set_coeff(self, m: int, mat: list):
        for i in range(self.n):
            for j in range(self.n):
                self.entries[i][j][m] = mat[i][j] % self.p

    def theta_component(self, k: int) -> "SeriesMatrix":
        """theta^{(k)} entrywise: t^m -> C(m, k) t^{m-k} (truncated)."""
        p = self.p
        out = SeriesMatrix(p, self.n, self.order, None)
        entries = [
            [[0] * (self.order + 1) for _ in range(self.n)] for _ in range(self.n)
        ]
        for i in range(self.n):
            for j in range(self.n):
                src = self.entries[i][j]
                dst = entries[i][j]
                for m in range(k, self.order + 1):
                    c = src[m]
                    if c:
                        b = binom_int(m, k, p)
                        if b:
                            dst[m - k] = (c * b) % p
        out.entries = entries
        return out

    def mul_series(self, other: "SeriesMatrix") -> "SeriesMatrix":
        p = self.p
        out = SeriesMatrix(p, self.n, self.order, None)
        entries = [
            [[0] * (self.order + 1) for _ in range(self.n)] for _ in range(self.n)
        ]
        for i in range(self.n):
            for j in range(self.n):
                dst = entries[i][j]
                for k in range(self.n):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    for m1, c1 in enumerate(a):
                        if c1:
                            top = self.order + 1 - m1
                            for m2 in range(top):
                                c2 = b[m2]
                                if c2:
                                    dst[m1 + m2] = (dst[m1 + m2] + c1 * c2) % p
        out.entries = entries
        return out

    def eq_upto(self, other: "SeriesMatrix", order: int) -> bool:
        return all(
            self.entries[i][j][m] == other.entries[i][j][m]
            for i in range(self.n)
            for j in range(self.n)
            for m in range(order + 1)
        )

    def constant_term(self) -> list:
        return self.coeff_matrix(0)

    def __eq__(self, other):
        return (
            isinstance(other, SeriesMatrix)
            and (self.p, self.n, self.order) == (other.p, other.n, other.order)
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"SeriesMatrix(p={self.p}, n={self.n}, order={self.order})"


def _series_mat_product_coeff(a_series, y: SeriesMatrix, m: int, p: int, n: int) -> list:
    """Coefficient of t^m in A * Y for A given as series coefficient lists."""
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                a = a_series[i][k]
                b = y.entries[k][j]
                for m1 in range(min(m, len(a) - 1) + 1):
                    c1 = a[m1]
                    if c1:
                        acc += c1 * b[m - m1]
            out[i][j] = acc % p
    return out


@dataclass
class SolutionReport:
    ok: bool
    max_checked_order: int
    first_failure: tuple | None = None  # (level l, order m)
    max_failing_order: int | None = None

    def __bool__(self):
        return self.ok


def solve_fundamental(eq: IterableEquation, order: int) -> SeriesMatrix:
    """Y with Y(0) = 1 and theta^{(p^l)}(Y) = A_{p^l} Y mod t^{order - p^l + 1}.

    Coefficient Y_m is pinned by the equation at the lowest nonzero base-p
    digit l of m: C(m, p^l) Y_m = [t^{m - p^l}](A_{p^l} Y). The mandatory
    consistency pass re-checks every equation afterwards (Inconsistent if
    the input was not iterable)."""
    p, n = eq.p, eq.n
    if p**eq.L <= order:
        raise ValueError(
            f"order {order} needs p-power data beyond level {eq.L - 1} "
            f"(give the higher A matrices, zero if the equation stops)"
        )
    a_series = eq.series_matrices(order)
    y = SeriesMatrix.identity(p, n, order)
    for m in range(1, order + 1):
        l, digit = lowest_nonzero_digit(m, p)
        rhs = _series_mat_product_coeff(a_series[l], y, m - p**l, p, n)
        inv = pow(binom_int(m, p**l, p), -1, p)
        y.set_coeff(m, [[(inv * rhs[i][j]) % p for j in range(n)] for i in range(n)])
    report = verify_solution(y, eq, order)
    if not report.ok:
        raise Inconsistent(
            f"consistency pass failed at level {report.first_failure[0]}, "
            f"order {report.first_failure[1]}: equation family is not iterable"
        )
    return y


def verify_solution(y: SeriesMatrix, eq: IterableEquation, order: int) -> SolutionReport:
    """Exact residual check of theta^{(p^l)}(Y) = A_{p^l} Y to the stated
    truncation for every level."""
    p, n = eq.p, eq.n
    a_series = eq.series_matrices(order)
    first = None
    worst_order = None
    for l in range(eq.L):
        k = p**l
        if k > order:
            break
        lhs = y.theta_component(k)
        for m in range(0, order - k + 1):
            rhs_m = _series_mat_product_coeff(a_series[l], y, m, p, n)
            if lhs.coeff_matrix(m) != rhs_m:
                if first is None:
                    first = (l, m)
                worst_order = m if worst_order is None else max(worst_order, m)
    if first is not None:
        return SolutionReport(False, order, first, worst_order)
    return SolutionReport(True, order)


def constants(basis: list, p: int, order: int) -> list:
    """Basis of the joint kernel of theta^{(k)}, 1 <= k <= order, on the
    F_p-span of the given truncated series (coefficient lists).

    The kernel is refined level by level, so the usual case (few survivors)
    stays cheap."""
    from .algebra.fields import PrimeField

    F = PrimeField(p)
    current = [[F.of(c) for c in vec] for vec in basis]
    width = len(basis[0]) if basis else 0

    def theta_vec(vec, k):
        out = [F.zero] * width
        for m in range(k, width):
            b = binom_int(m, k, p)
            if b and vec[m].value:
                out[m - k] = vec[m] * F.of(b)
        return out

    for k in range(1, order + 1):
        if not current:
            break
        images = [theta_vec(v, k) for v in current]
        if all(all(x.value == 0 for x in img) for img in images):
            continue
        rows = [[images[j][i] for j in range(len(current))] for i in range(width)]
        ker = Mat(F, rows).kernel_basis()
        current = [
            [
                sum((current[j][i] * coefficient for j, coefficient in enumerate(combo)), F.zero)
                for i in range(width)
            ]
            for combo in ker
        ]
    return [[x.value for x in vec] for vec in current]


def conjugated_equation(y_rat: Mat, p: int, n: int, L: int) -> IterableEquation:
    """The equation solved by a rational Y in GL_n(F_p(t)):
    A_{p^l} = theta^{(p^l)}(Y) Y^{-1} (the brute-force construction used as
    the oracle for random-equation tests). Runs over the structured
    fraction ring so deep levels stay polynomial."""
    from .algebra.gfrac import GMat
    from .idmod import _gring_for

    y_inv = y_rat.inverse()
    ring = _gring_for([y_rat, y_inv], p)
    yg = GMat.from_ratmat(ring, y_rat)
    yg_inv = GMat.from_ratmat(ring, y_inv)
    series = yg.hasse_series(p ** (L - 1))
    return IterableEquation(
        p, n, L, [(series[p**l] * yg_inv).normalized().to_ratmat() for l in range(L)]
    )


def series_of_rational_matrix(m: Mat, p: int, n: int, order: int) -> SeriesMatrix:
    out = SeriesMatrix(p, n, order, None)
    out.entries = [[entry.series_at_zero(order) for entry in row] for row in m.rows]
    return out


def det_series(y: SeriesMatrix) -> list:
    """det(Y) as a truncated series (expansion over permutations; n <= 3)."""
    import itertools

    p, n, order = y.p, y.n, y.order
    out = [0] * (order + 1)
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        prod = [1] + [0] * order
        for i in range(n):
            nxt = [0] * (order + 1)
            src = y.entries[i][perm[i]]
            for m1, c1 in enumerate(prod):
                if c1:
                    for m2 in range(order + 1 - m1):
                        c2 = src[m2]
                        if c2:
                            nxt[m1 + m2] = (nxt[m1 + m2] + c1 * c2) % p
            prod = nxt
        for m, c in enumerate(prod):
            out[m] = (out[m] + sign * c) % p
    return out


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign
