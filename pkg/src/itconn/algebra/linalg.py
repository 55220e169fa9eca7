"""Exact dense linear algebra over any field adapter.

A field adapter carries `zero` and `one` attributes; elements implement
+, -, *, / and == exactly. Used with PrimeField, RatFuncField,
RationalField and the extension/graded rings elsewhere in the package.
"""

from __future__ import annotations

from ..errors import Inconsistent


class Mat:
    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    @staticmethod
    def identity(field, n):
        return Mat(field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(field, n, m):
        return Mat(field, [[field.zero] * m for _ in range(n)])

    def copy(self):
        return Mat(self.field, [r[:] for r in self.rows])

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))
        )

    def __add__(self, other):
        return Mat(self.field, [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Mat(self.field, [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        return Mat(self.field, [[-a for a in r] for r in self.rows])

    def __mul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in matrix product")
        zero = self.field.zero
        bt = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in bt:
                acc = zero
                for a, b in zip(r, c):
                    if a != zero and b != zero:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Mat(self.field, out)

    def scale(self, c):
        return Mat(self.field, [[c * a for a in r] for r in self.rows])

    def transpose(self):
        return Mat(self.field, [list(c) for c in zip(*self.rows)])

    def map(self, fn):
        return Mat(self.field, [[fn(a) for a in r] for r in self.rows])

    def col(self, j):
        return [r[j] for r in self.rows]

    def is_zero(self):
        z = self.field.zero
        return all(a == z for r in self.rows for a in r)

    def hstack(self, other: "Mat") -> "Mat":
        return Mat(self.field, [ra + rb for ra, rb in zip(self.rows, other.rows)])

    def vstack(self, other: "Mat") -> "Mat":
        return Mat(self.field, [r[:] for r in self.rows] + [r[:] for r in other.rows])

    def __repr__(self):
        return "Mat([" + "; ".join(", ".join(str(a) for a in r) for r in self.rows) + "])"

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple["Mat", list[int]]:
        """Reduced row echelon form and pivot columns (exact divisions)."""
        f = self.field
        zero = f.zero
        m = [r[:] for r in self.rows]
        pivots: list[int] = []
        pr = 0
        for pc in range(self.ncols):
            pivot_row = None
            for i in range(pr, self.nrows):
                if m[i][pc] != zero:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[pr], m[pivot_row] = m[pivot_row], m[pr]
            inv = f.one / m[pr][pc]
            m[pr] = [a * inv for a in m[pr]]
            for i in range(self.nrows):
                if i != pr and m[i][pc] != zero:
                    c = m[i][pc]
                    m[i] = [a - c * b for a, b in zip(m[i], m[pr])]
            pivots.append(pc)
            pr += 1
            if pr == self.nrows:
                break
        return Mat(f, m), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list[list]:
        """Basis of the right kernel {x : A x = 0}."""
        f = self.field
        red, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for j in free:
            v = [f.zero] * self.ncols
            v[j] = f.one
            for r, pc in enumerate(pivots):
                v[pc] = -red.rows[r][j]
            basis.append(v)
        return basis

    def solve(self, b: list) -> tuple[list, list[list]]:
        """One particular solution of A x = b plus a kernel basis."""
        f = self.field
        aug = Mat(f, [row + [bi] for row, bi in zip(self.rows, b)])
        red, pivots = aug.rref()
        if self.ncols in pivots:
            raise Inconsistent("no solution")
        x = [f.zero] * self.ncols
        for r, pc in enumerate(pivots):
            x[pc] = red.rows[r][self.ncols]
        return x, self.kernel_basis()

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of non-square matrix")
        f = self.field
        zero = f.zero
        m = [r[:] for r in self.rows]
        n = self.nrows
        det = f.one
        for c in range(n):
            pivot_row = None
            for i in range(c, n):
                if m[i][c] != zero:
                    pivot_row = i
                    break
            if pivot_row is None:
                return zero
            if pivot_row != c:
                m[c], m[pivot_row] = m[pivot_row], m[c]
                det = -det
            det = det * m[c][c]
            inv = f.one / m[c][c]
            for i in range(c + 1, n):
                if m[i][c] != zero:
                    factor = m[i][c] * inv
                    m[i] = [a - factor * b for a, b in zip(m[i], m[c])]
        return det

    def inverse(self) -> "Mat":
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        aug = self.hstack(Mat.identity(self.field, n))
        red, pivots = aug.rref()
        if pivots != list(range(n)):
            raise ZeroDivisionError("matrix not invertible")
        return Mat(self.field, [r[n:] for r in red.rows])


def solve_linear(a: Mat, b: list) -> tuple[list, list[list]]:
    """Particular solution plus kernel basis; raises Inconsistent."""
    return a.solve(b)
