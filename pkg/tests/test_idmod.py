import random

import pytest

from itconn.algebra import Mat, Poly, RatFunc, RatFuncField, binom_int
from itconn.errors import InvariantViolation, RankDefect
from itconn.idmod import (
    CompatReport,
    FcProjSystem,
    IDStructure,
    check_compatibility,
    direct_component_matrix,
    frobenius_compatibility,
    generate_a_family,
    kernel_descent,
    lattices_equal,
    roundtrip,
    theta_mat_series,
    to_connection,
)


def rf(p, num, den=None):
    return RatFunc(Poly(num, p), Poly(den, p) if den else None)


def rand_ratfunc(rng, p, maxdeg):
    num = Poly([rng.randrange(p) for _ in range(maxdeg + 1)], p)
    den = Poly.zero(p)
    while den.is_zero():
        den = Poly([rng.randrange(p) for _ in range(maxdeg + 1)], p)
    return RatFunc(num, den)


def rand_fc(rng, p, n, L, entry_degree=4):
    """Random lattice chain: B_{l+1} = B_l * (random GL_n(F^{p^l}) step)."""
    F = RatFuncField(p)
    B = [Mat.identity(F, n)]
    for l in range(L):
        q = p**l
        root_deg = max(0, entry_degree // q)
        while True:
            step = Mat(
                F,
                [
                    [rand_ratfunc(rng, p, root_deg) ** q for _ in range(n)]
                    for _ in range(n)
                ],
            )
            if not step.det().is_zero():
                break
        B.append(B[l] * step)
    return FcProjSystem(p, n, L, B)


# -- Frobenius compatibility ------------------------------------------------------


def test_frobenius_compatibility_examples():
    f = rf(2, [0, 0, 1, 0, 1])  # t^2 + t^4
    assert frobenius_compatibility(f, 1)
    assert not frobenius_compatibility(f, 2)
    for p in (2, 3, 5):
        assert frobenius_compatibility(RatFunc.const(1, p), 3)
    g = rf(2, [0, 0, 1], [1, 1])  # t^2/(1+t)
    assert not frobenius_compatibility(g, 1)


@pytest.mark.parametrize("p", [2, 3])
def test_frobenius_compatibility_agrees_with_pth_roots(p):
    # the cross-check is internal: any disagreement raises
    rng = random.Random(50 + p)
    for _ in range(60):
        f = rand_ratfunc(rng, p, 3)
        for l in range(4):
            frobenius_compatibility(f**(p**l), l)
            frobenius_compatibility(f, l)


# -- compatibility checks --------------------------------------------------------------


def test_compat_trivial():
    s = IDStructure.trivial(2, 2, 3)
    assert check_compatibility(s).ok


@pytest.mark.parametrize("p", [2, 3])
def test_compat_rank1_geometric(p):
    # A_{p^l} = (-1)^{p^l} (1+t)^{-p^l}: fundamental solution (1+t)^{-1}
    F = RatFuncField(p)
    L = 2
    one_plus_t = RatFunc(Poly([1, 1], p))
    a_powers = [
        Mat(F, [[(one_plus_t ** -(p**l)).scale((-1) ** (p**l))]]) for l in range(L)
    ]
    assert check_compatibility((p, 1, L), a_powers).ok


def test_compat_rank2_unipotent_char2():
    F = RatFuncField(2)
    nil = Mat(F, [[F.zero, F.one], [F.zero, F.zero]])
    zero = Mat.zeros(F, 2, 2)
    a_powers = [nil, nil, zero]  # A_1 = A_2 = N, A_4 = 0
    assert check_compatibility((2, 2, 3), a_powers).ok


def test_compat_detects_failure():
    F = RatFuncField(2)
    t = Mat(F, [[RatFunc.t(2)]])
    # A_1 = t is not iterable: theta^{(1)} of a solution would force
    # inconsistent higher components
    report = check_compatibility((2, 1, 2), [t, Mat.zeros(F, 1, 1)])
    assert not report.ok
    assert report.first_failure is not None


# -- kernel descent ------------------------------------------------------------------


def test_descent_trivial():
    s = IDStructure.trivial(3, 2, 2)
    fc = kernel_descent(s, 2)
    ident = Mat.identity(RatFuncField(3), 2)
    assert all(b == ident for b in fc.B)


def test_descent_rank2_unipotent():
    F = RatFuncField(2)
    nil = Mat(F, [[F.zero, F.one], [F.zero, F.zero]])
    s = IDStructure(2, 2, 1, [nil])
    fc = kernel_descent(s, 1)
    t = RatFunc.t(2)
    expected = Mat(F, [[F.one, t + t * t], [F.zero, F.one]])
    assert lattices_equal(fc.B[1], expected, 1)


def test_descent_rank1_geometric():
    F = RatFuncField(2)
    c = Mat(F, [[RatFunc(Poly([1], 2), Poly([1, 1], 2))]])  # 1/(1+t)
    s = IDStructure(2, 1, 1, [c])
    fc = kernel_descent(s, 1)
    expected = Mat(F, [[RatFunc(Poly([1], 2), Poly([1, 1], 2))]])
    assert lattices_equal(fc.B[1], expected, 1)


def test_descent_rank_defect_on_incompatible():
    F = RatFuncField(2)
    t = Mat(F, [[RatFunc.t(2)]])
    s = IDStructure(2, 1, 2, [t, Mat.zeros(F, 1, 1)])
    with pytest.raises(InvariantViolation):
        kernel_descent(s, 2)


# -- the forward functor ----------------------------------------------------------------


def test_to_connection_identity_chain():
    fc = FcProjSystem.trivial(2, 2, 2)
    s = to_connection(fc)
    assert all(c.is_zero() for c in s.C)


def test_to_connection_unipotent_example():
    F = RatFuncField(2)
    t = RatFunc.t(2)
    b1 = Mat(F, [[F.one, t], [F.zero, F.one]])
    fc = FcProjSystem(2, 2, 1, [Mat.identity(F, 2), b1])
    s = to_connection(fc)
    expected = Mat(F, [[F.zero, F.one], [F.zero, F.zero]])
    assert s.C[0] == expected


def test_to_connection_rank1_example():
    F = RatFuncField(2)
    inv = RatFunc(Poly([1], 2), Poly([1, 1], 2))
    fc = FcProjSystem(2, 1, 1, [Mat.identity(F, 1), Mat(F, [[inv]])])
    s = to_connection(fc)
    assert s.C[0] == Mat(F, [[inv]])


def test_iteration_rule_on_induced_structure():
    rng = random.Random(3)
    fc = rand_fc(rng, 2, 2, 2)
    s = to_connection(fc)
    mfam = s.m_family()
    bound = 2**2
    F = s.field_
    theta_series = [theta_mat_series(m, bound - 1) for m in mfam]
    for j in range(1, bound):
        for i in range(1, bound - j):
            acc = Mat.zeros(F, 2, 2)
            for a in range(i + 1):
                acc = acc + mfam[a] * theta_series[j][i - a]
            rhs = mfam[i + j].scale(F.of(binom_int(i + j, i, 2)))
            assert acc == rhs


def test_component_matrix_level_independent():
    rng = random.Random(4)
    fc = rand_fc(rng, 2, 2, 3)
    for k in (1, 2):
        levels = [l for l in range(fc.L + 1) if 2**l > k]
        mats = [direct_component_matrix(fc, k, l) for l in levels]
        assert all(m == mats[0] for m in mats)


# -- round trips ---------------------------------------------------------------------------


def test_roundtrip_identity():
    assert roundtrip(FcProjSystem.trivial(2, 2, 2))


@pytest.mark.parametrize("p,n,L,seed", [(2, 2, 2, 0), (2, 1, 3, 1), (3, 2, 1, 2), (2, 3, 1, 3), (3, 1, 2, 4)])
def test_roundtrip_random(p, n, L, seed):
    rng = random.Random(seed)
    fc = rand_fc(rng, p, n, L)
    assert roundtrip(fc)


def test_roundtrip_rejects_corrupted_chain():
    F = RatFuncField(2)
    t = RatFunc.t(2)
    bad = Mat(F, [[F.one, t], [F.zero, F.one]])
    fc = FcProjSystem(2, 2, 2, [Mat.identity(F, 2), bad, bad * bad])
    # B_1^{-1} B_2 = B_1 has the entry t, which is not a square
    with pytest.raises(InvariantViolation):
        to_connection(fc)
