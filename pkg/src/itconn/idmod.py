"""Iterative structures over F_p(t) and Frobenius-compatible projective systems.

An IDStructure records an iterative connection of rank n through the
matrices of its p-power components on the standard basis:
C_{p^l} = matrix of Theta^{(p^l)} on basis vectors, 0 <= l < L. All other
component matrices are derived (never stored) through the iteration rule;
the operator on coordinate vectors is Theta^{(k)} = sum_{i+j=k} M_i theta^{(j)}
with theta = phi_t acting entrywise.

An FcProjSystem records the dual object: a chain of lattices B_0 = 1,
B_1, ..., B_L in GL_n(F) whose columns span the level-l solution modules
over F^{p^l}, with B_l^{-1} B_{l+1} in GL_n(F^{p^l}).

kernel_descent and to_connection realise the two equivalence functors at
finite depth; roundtrip composes them and compares lattices. The deep
generation and compatibility loops run over the structured fraction ring
F_p[t][1/g] (algebra.gfrac), where g is the lcm of the input denominators;
everything else stays in reduced rational form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra.frob import binom_int, lowest_nonzero_digit
from .algebra.gfrac import GMat, GRing, gmat_sum
from .algebra.linalg import Mat
from .algebra.poly import Poly
from .algebra.ratfunc import RatFunc, RatFuncField
from .errors import InvariantViolation, NotAPthPower, NotDescendable, RankDefect


# -- matrix-level Hasse components ------------------------------------------------


def theta_mat_series(m: Mat, order: int) -> list[Mat]:
    """[theta^{(0)}(m), ..., theta^{(order)}(m)] entrywise (reduced form)."""
    field_ = m.field
    per_entry = [[e.hasse_series(order) for e in row] for row in m.rows]
    return [
        Mat(field_, [[per_entry[i][j][k] for j in range(m.ncols)] for i in range(m.nrows)])
        for k in range(order + 1)
    ]


def theta_mat(m: Mat, k: int) -> Mat:
    return theta_mat_series(m, k)[k]


def _entry_dens(mats: list[Mat]) -> list[Poly]:
    return [entry.den for m in mats for row in m.rows for entry in row if not entry.den.is_one()]


def _gring_for(mats: list[Mat], p: int) -> GRing:
    return GRing.for_denominators(_entry_dens(mats), p)


# -- data types --------------------------------------------------------------------


@dataclass
class IDStructure:
    p: int
    n: int
    L: int
    C: list  # C[l] = matrix of Theta^{(p^l)}, 0 <= l < L
    _gcache: tuple | None = field(default=None, repr=False, compare=False)
    _compat: object = field(default=None, repr=False, compare=False)

    @property
    def field_(self) -> RatFuncField:
        return RatFuncField(self.p)

    @staticmethod
    def trivial(p: int, n: int, L: int) -> "IDStructure":
        F = RatFuncField(p)
        return IDStructure(p, n, L, [Mat.zeros(F, n, n) for _ in range(L)])

    def g_family(self) -> tuple[GRing, list[GMat]]:
        """Structured M_k for 0 <= k < p^L.

        Non-p-power entries come from the iteration rule via the lowest
        nonzero base-p digit split m = p^l + (m - p^l):
        C(m, m - p^l) M_m = sum_{a+b = m-p^l} M_a theta^{(b)}(M_{p^l})."""
        if self._gcache is not None:
            return self._gcache
        p, L = self.p, self.L
        ring = _gring_for(self.C, p)
        bound = p**L
        c_emb = [GMat.from_ratmat(ring, c) for c in self.C]
        mfam: list[GMat] = [GMat.identity(ring, self.n)]
        theta_of_c: dict[int, list[GMat]] = {}
        for m in range(1, bound):
            l, digit = lowest_nonzero_digit(m, p)
            if m == p**l:
                mfam.append(c_emb[l])
                continue
            if l not in theta_of_c:
                theta_of_c[l] = [x.normalized() for x in c_emb[l].hasse_series(bound - 1)]
            i = m - p**l
            acc = gmat_sum([mfam[a] * theta_of_c[l][i - a] for a in range(i + 1)])
            mfam.append(acc.scale_int(pow(digit, -1, p)).normalized())
        self._gcache = (ring, mfam)
        return self._gcache

    def m_family(self) -> list[Mat]:
        """Reduced-form view of the component matrices."""
        _, mfam = self.g_family()
        return [gm.to_ratmat() for gm in mfam]

    def a_family_g(self) -> tuple[GRing, list[GMat]]:
        """Equation-side matrices (the convolution inverse of the M family:
        theta^{(k)}(Y) = A_k Y for a fundamental solution Y)."""
        ring, mfam = self.g_family()
        out = [GMat.identity(ring, self.n)]
        for k in range(1, len(mfam)):
            acc = gmat_sum([mfam[i] * out[k - i] for i in range(1, k + 1)])
            out.append(acc.scale_int(-1).normalized())
        return ring, out

    def a_family(self) -> list[Mat]:
        _, fam = self.a_family_g()
        return [gm.to_ratmat() for gm in fam]

    def theta_op(self, k: int, vec: list) -> list:
        """Theta^{(k)} on a coordinate vector over F (reduced form)."""
        mfam = self.m_family()
        F = self.field_
        out = [F.zero] * self.n
        comps = [v.hasse_series(k) for v in vec]
        for i in range(k + 1):
            mi = mfam[i]
            for r in range(self.n):
                acc = out[r]
                for s in range(self.n):
                    c = mi.rows[r][s]
                    if not c.is_zero():
                        acc = acc + c * comps[s][k - i]
                out[r] = acc
        return out


@dataclass
class FcProjSystem:
    p: int
    n: int
    L: int
    B: list  # B[0] = identity, ..., B[L]

    @property
    def field_(self) -> RatFuncField:
        return RatFuncField(self.p)

    @staticmethod
    def trivial(p: int, n: int, L: int) -> "FcProjSystem":
        F = RatFuncField(p)
        return FcProjSystem(p, n, L, [Mat.identity(F, n) for _ in range(L + 1)])

    def check_invariant(self):
        """B_l^{-1} B_{l+1} must lie in GL_n(F^{p^l})."""
        if not self.B[0] == Mat.identity(self.field_, self.n):
            raise InvariantViolation("B_0 must be the identity lattice")
        for l in range(self.L):
            step = self.B[l].inverse() * self.B[l + 1]
            if step.det().is_zero():
                raise InvariantViolation(f"lattice step {l} is singular")
            for row in step.rows:
                for e in row:
                    if not _is_plth_power(e, l):
                        raise InvariantViolation(
                            f"lattice step {l} has an entry outside F^(p^{l})"
                        )


def _is_plth_power(f: RatFunc, l: int) -> bool:
    try:
        f.pl_root(l)
        return True
    except NotAPthPower:
        return False


# -- Frobenius compatibility --------------------------------------------------------


def frobenius_compatibility(f: RatFunc, l: int) -> bool:
    """Kernel criterion: theta^{(j)}(f) = 0 for all 0 < j < p^l.

    Cross-checked against direct p^l-th power membership; a disagreement
    would be an arithmetic bug and is surfaced, not swallowed.
    """
    if l > 4:
        raise ValueError("level capped at 4 (cost guard)")
    p = f.p
    bound = p**l
    comps = f.hasse_series(bound - 1)
    kernel_verdict = all(comps[j].is_zero() for j in range(1, bound))
    power_verdict = _is_plth_power(f, l)
    if kernel_verdict != power_verdict:
        raise InvariantViolation("kernel criterion disagrees with p-th power membership")
    return kernel_verdict


# -- compatibility of equation matrices --------------------------------------------


@dataclass
class CompatReport:
    ok: bool
    depth: int
    first_failure: tuple | None = None  # (k, l)

    def __bool__(self):
        return self.ok


def _generate_a_family_g(ring: GRing, p: int, n: int, L: int, a_powers: list) -> list[GMat]:
    bound = p**L
    fam = [GMat.identity(ring, n)]
    theta_of_a: dict[int, list[GMat]] = {}
    for m in range(1, bound):
        l, digit = lowest_nonzero_digit(m, p)
        if m == p**l:
            fam.append(a_powers[l])
            continue
        if l not in theta_of_a:
            theta_of_a[l] = [x.normalized() for x in a_powers[l].hasse_series(bound - 1)]
        i_total = m - p**l
        acc = gmat_sum([theta_of_a[l][i] * fam[i_total - i] for i in range(i_total + 1)])
        fam.append(acc.scale_int(pow(digit, -1, p)).normalized())
    return fam


def generate_a_family(p: int, n: int, L: int, a_powers: list) -> list[Mat]:
    """All A_k for k < p^L from the p-power data A_{p^l} = a_powers[l],
    via C(m, m - p^l) A_m = sum_{i+j = m-p^l} theta^{(i)}(A_{p^l}) A_j
    at the lowest nonzero digit l of m (reduced form)."""
    ring = _gring_for(a_powers, p)
    emb = [GMat.from_ratmat(ring, a) for a in a_powers]
    return [gm.to_ratmat() for gm in _generate_a_family_g(ring, p, n, L, emb)]


def _check_family(ring: GRing, p: int, n: int, L: int, fam: list[GMat]) -> CompatReport:
    bound = p**L
    theta_series = [fam[k].hasse_series(bound - 1 - k) for k in range(bound)]
    for k in range(1, bound):
        for l in range(1, bound - k):
            lhs = fam[k + l].scale_int(binom_int(k + l, l, p))
            rhs = gmat_sum([theta_series[k][i] * fam[l - i] for i in range(l + 1)])
            if not (lhs - rhs).is_zero():
                return CompatReport(False, L, (k, l))
    return CompatReport(True, L)


def check_compatibility(obj, a_powers: list | None = None) -> CompatReport:
    """Verify C(k+l, l) A_{k+l} = sum_{i+j=l} theta^{(i)}(A_k) A_j for all
    k, l >= 1 with k + l < p^L. Accepts an IDStructure or explicit p-power
    equation matrices (p, n, L, [A_{p^l}])."""
    if isinstance(obj, IDStructure):
        if obj._compat is not None:
            return obj._compat
        p, n, L = obj.p, obj.n, obj.L
        ring, fam = obj.a_family_g()
        obj._compat = _check_family(ring, p, n, L, fam)
        return obj._compat
    if True:
        p, n, L = obj
        ring = _gring_for(a_powers, p)
        emb = [GMat.from_ratmat(ring, a) for a in a_powers]
        fam = _generate_a_family_g(ring, p, n, L, emb)
    return _check_family(ring, p, n, L, fam)


# -- kernel descent (Cartier direction) ------------------------------------------------


def _kernel_lattice(m1: Mat, p: int, n: int) -> Mat:
    """Solve Theta^{(1)}(x) = theta^{(1)}(x) + M_1 x = 0 exactly.

    The operator is F^p-linear on F^n; in the basis {t^a e_r} with rooted
    Frobenius coordinates it becomes an (np) x (np) matrix over F, whose
    kernel must have dimension n (RankDefect otherwise). Returns the
    lattice matrix whose columns span the kernel over F^p."""
    F = RatFuncField(p)
    t = RatFunc.t(p)
    cols = []
    for r in range(n):
        for a in range(p):
            ta = t**a
            vec = [F.zero] * n
            # theta^{(1)}(t^a e_r) = a t^{a-1} e_r
            if a:
                vec[r] = (t ** (a - 1)).scale(a)
            for s in range(n):
                c = m1.rows[s][r]
                if not c.is_zero():
                    vec[s] = vec[s] + c * ta
            col = []
            for s in range(n):
                col.extend(vec[s].frobenius_coords_rooted(1))
            cols.append(col)
    big = Mat(F, [[cols[j][i] for j in range(n * p)] for i in range(n * p)])
    kernel = big.kernel_basis()
    if len(kernel) != n:
        raise RankDefect(f"level-1 solution module has rank {len(kernel)}, expected {n}")
    b1_cols = []
    for v in kernel:
        colvec = []
        for s in range(n):
            acc = F.zero
            for a in range(p):
                acc = acc + (v[s * p + a] ** p) * t**a
            colvec.append(acc)
        b1_cols.append(colvec)
    b1 = Mat(F, [[b1_cols[j][i] for j in range(n)] for i in range(n)])
    if b1.det().is_zero():
        raise RankDefect("level-1 solution module does not span over F")
    return b1


def _descend(ring: GRing, mfam: list[GMat], p: int, n: int, levels: int) -> list[Mat]:
    F = RatFuncField(p)
    if levels == 0:
        return [Mat.identity(F, n)]
    b1 = _kernel_lattice(mfam[1].to_ratmat(), p, n)
    b1_inv = b1.inverse()
    # refine the denominator basis by whatever the new lattice brings in
    ring2, translate = ring.extend(_entry_dens([b1, b1_inv]))
    mfam2 = [gm.reembedded(ring2, translate) for gm in mfam]
    b1_g = GMat.from_ratmat(ring2, b1)
    b1_inv_g = GMat.from_ratmat(ring2, b1_inv)
    bound = len(mfam)
    b1_series = [x.normalized() for x in b1_g.hasse_series(bound - 1)]
    induced = [GMat.identity(ring2, n)]
    for k in range(1, bound):
        # Theta^{(k)}(B_1) = sum_{i+j=k} M_i theta^{(j)}(B_1)
        img = gmat_sum([mfam2[i] * b1_series[k - i] for i in range(k + 1)])
        if k % p:
            if not img.is_zero():
                raise NotDescendable(
                    f"component {k} does not vanish on the level-1 solution module"
                )
        else:
            g = b1_inv_g * img
            try:
                rooted = g.normalized().entry_pl_root(1)
            except NotAPthPower:
                raise NotDescendable(
                    f"induced component {k} does not land in the Frobenius twist"
                )
            induced.append(rooted)
    rec = _descend(ring2, induced, p, n, levels - 1)
    out = [Mat.identity(F, n)]
    for bl in rec:
        twisted = bl.map(lambda e: e**p)
        out.append(b1 * twisted)
    return out


def kernel_descent(structure: IDStructure, target_level: int) -> FcProjSystem:
    """Lattice chain B_0..B_target from iterated Cartier-style kernels.

    Precondition (enforced): the structure passes check_compatibility;
    that is the decidable integrability surrogate at this depth."""
    if target_level > structure.L:
        raise ValueError("target level exceeds structure depth")
    report = check_compatibility(structure)
    if not report.ok:
        raise InvariantViolation(f"structure fails compatibility at {report.first_failure}")
    ring, mfam = structure.g_family()
    bound = structure.p**target_level
    lattices = _descend(ring, mfam[:bound], structure.p, structure.n, target_level)
    return FcProjSystem(structure.p, structure.n, target_level, lattices)


# -- the forward functor -----------------------------------------------------------------


def direct_component_matrix(fc: FcProjSystem, k: int, level: int) -> Mat:
    """Matrix of Theta^{(k)} computed from lattice level `level` (p^level > k):
    B_level * theta^{(k)}(B_level^{-1})."""
    b = fc.B[level]
    return b * theta_mat(b.inverse(), k)


def _chain_families(fc: FcProjSystem) -> tuple[GRing, list[GMat], list[GMat]]:
    """Tight structured families straight from the top lattice:
    M_k = B theta^{(k)}(B^{-1}) and A_k = theta^{(k)}(B) B^{-1} for k < p^L
    (the columns of B = B_L solve the structure to level p^L, so the two
    families are convolution inverses by the Leibniz rule on B^{-1} B = 1).
    Avoids the digit recursion, whose exponent bookkeeping is much looser."""
    b = fc.B[fc.L]
    binv = b.inverse()
    ring = _gring_for([b, binv], fc.p)
    bg = GMat.from_ratmat(ring, b)
    bginv = GMat.from_ratmat(ring, binv)
    bound = fc.p**fc.L
    b_series = bg.hasse_series(bound - 1)
    binv_series = bginv.hasse_series(bound - 1)
    mfam = [(bg * s).normalized() for s in binv_series]
    afam = [(s * bginv).normalized() for s in b_series]
    return ring, mfam, afam


def to_connection(fc: FcProjSystem) -> IDStructure:
    """The induced iterative structure: C_{p^l} from any admissible level,
    independence of the choice checked."""
    fc.check_invariant()
    p, n, L = fc.p, fc.n, fc.L
    c_list = []
    for l in range(L):
        k = p**l
        level = l + 1
        mat = direct_component_matrix(fc, k, level)
        for other in range(level + 1, L + 1):
            if not direct_component_matrix(fc, k, other) == mat:
                raise InvariantViolation(
                    f"component {k} depends on the defining lattice level"
                )
        c_list.append(mat)
    structure = IDStructure(p, n, L, c_list)
    ring, mfam, afam = _chain_families(fc)
    structure._gcache = (ring, mfam)
    structure._compat = _check_family(ring, p, n, L, afam)
    if not structure._compat.ok:
        raise InvariantViolation(
            f"induced structure fails compatibility at {structure._compat.first_failure}"
        )
    return structure


def lattices_equal(b1: Mat, b2: Mat, l: int) -> bool:
    """Same F^{p^l}-span: B_1^{-1} B_2 in GL_n(F^{p^l})."""
    step = b1.inverse() * b2
    if step.det().is_zero():
        return False
    return all(_is_plth_power(e, l) for row in step.rows for e in row)


def roundtrip(fc: FcProjSystem) -> bool:
    """to_connection then kernel_descent recovers the same lattice chain."""
    structure = to_connection(fc)
    recovered = kernel_descent(structure, fc.L)
    return all(
        lattices_equal(fc.B[l], recovered.B[l], l) for l in range(fc.L + 1)
    )
