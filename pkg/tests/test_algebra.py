import random

import pytest
from hypothesis import given, settings, strategies as st

from itconn.algebra import (
    Mat,
    Poly,
    RatFunc,
    RatFuncField,
    binomial_mod_p,
    parse_poly,
    parse_ratfunc,
    render_ratfunc,
)
from itconn.errors import Inconsistent, NotAPthPower

PRIMES = [2, 3, 5]


def rand_poly(rng, p, maxdeg=3):
    return Poly([rng.randrange(p) for _ in range(rng.randint(1, maxdeg + 1))], p)


def rand_ratfunc(rng, p, maxdeg=3):
    num = rand_poly(rng, p, maxdeg)
    den = Poly.zero(p)
    while den.is_zero():
        den = rand_poly(rng, p, maxdeg)
    return RatFunc(num, den)


# -- Lucas binomials --------------------------------------------------------


def test_binomial_direct_cases():
    assert binomial_mod_p(4, 2, 2) == 0  # 6 mod 2
    for p in PRIMES:
        for n in (0, 1, 7, 64):
            assert binomial_mod_p(n, 0, p) == 1
    for p in PRIMES:
        for m in range(4):
            for l in range(4):
                expected = 1 if m == l else 0
                assert binomial_mod_p(p**m, p**l, p) == expected


def test_binomial_agrees_with_pascal_recurrence():
    for p in PRIMES:
        row = [1]
        for n in range(65):
            for k in range(n + 1):
                assert binomial_mod_p(n, k, p).value == row[k]
            row = [1] + [(row[k - 1] + row[k]) % p for k in range(1, n + 1)] + [1]


# -- polynomial / rational function arithmetic ------------------------------


@given(st.integers(0, 1), st.lists(st.integers(0, 4), min_size=1, max_size=5))
def test_poly_divmod_invariant(which_p, coeffs):
    p = [3, 5][which_p]
    f = Poly(coeffs, p)
    g = Poly([1, 2, 1], p)
    q, r = f.divmod(g)
    assert q * g + r == f
    assert r.degree < g.degree


@settings(max_examples=200)
@given(
    st.sampled_from(PRIMES),
    st.lists(st.integers(0, 96), min_size=1, max_size=4),
    st.lists(st.integers(0, 96), min_size=1, max_size=4),
    st.lists(st.integers(0, 96), min_size=1, max_size=4),
)
def test_field_axioms_on_ratfuncs(p, a_cs, b_cs, c_cs):
    a = RatFunc(Poly(a_cs, p), Poly([1, 1], p))
    b = RatFunc(Poly(b_cs, p), Poly([2, 0, 1], p))
    c = RatFunc(Poly(c_cs, p), Poly([1], p))
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()
    if not a.is_zero():
        assert (a / a).is_one()


def test_canonical_form_idempotent_and_unique():
    p = 5
    f = RatFunc(Poly([0, 2, 2], p), Poly([0, 4], p))  # (2t+2t^2)/(4t)
    again = RatFunc(f.num, f.den)
    assert again == f
    assert f.den.lead() == 1
    assert f.num.gcd(f.den).is_one()
    # same function from scaled representation
    g = RatFunc(Poly([0, 4, 4], p), Poly([0, 8], p))
    assert g == f


# -- Hasse components -------------------------------------------------------


def test_hasse_geometric_series():
    p = 5
    f = RatFunc.one(p) / RatFunc(Poly([1, 1], p))  # 1/(1+t)
    one_plus_t = RatFunc(Poly([1, 1], p))
    for k in range(6):
        expected = (one_plus_t ** (-(k + 1))).scale((-1) ** k)
        assert f.hasse(k) == expected


def test_hasse_char2_square():
    # (t+T)^2 = t^2 + T^2 over F_2
    f = RatFunc.from_poly(Poly([0, 0, 1], 2))
    comps = f.hasse_series(2)
    assert comps[0] == f
    assert comps[1].is_zero()
    assert comps[2].is_one()


# -- pth roots and Frobenius expansion --------------------------------------


def test_pth_root_examples():
    f = RatFunc.from_poly(Poly([0, 0, 1, 0, 1], 2))  # t^2 + t^4
    assert f.pth_root() == RatFunc.from_poly(Poly([0, 1, 1], 2))
    for p in PRIMES:
        assert RatFunc.one(p).pth_root().is_one()
    with pytest.raises(NotAPthPower):
        RatFunc.t(2).pth_root()


@pytest.mark.parametrize("p", PRIMES)
def test_pth_root_inverts_powering(p):
    rng = random.Random(100 + p)
    for _ in range(200):
        f = rand_ratfunc(rng, p)
        assert (f**p).pth_root() == f


def test_frobenius_expand_examples():
    p = 2
    t = RatFunc.t(p)
    coords = (t**3).frobenius_expand(1)
    assert coords == [RatFunc.zero(p), t**2]
    c = RatFunc.const(1, 3)
    assert c.frobenius_expand(2)[0] == c
    assert all(x.is_zero() for x in c.frobenius_expand(2)[1:])
    f = RatFunc.one(p) / RatFunc(Poly([1, 1], p))
    inv_1_t2 = RatFunc.one(p) / RatFunc(Poly([1, 0, 1], p))
    assert f.frobenius_expand(1) == [inv_1_t2, inv_1_t2]


@pytest.mark.parametrize("p", [2, 3])
def test_frobenius_expand_roundtrip(p):
    rng = random.Random(17 + p)
    t = RatFunc.t(p)
    for _ in range(40):
        f = rand_ratfunc(rng, p)
        for l in range(4):
            coords = f.frobenius_expand(l)
            assert len(coords) == p**l
            acc = RatFunc.zero(p)
            for a, ca in enumerate(coords):
                assert ca.pl_root(l) is not None  # each coordinate is a p^l-th power
                acc = acc + ca * t**a
            assert acc == f


# -- linear solving ----------------------------------------------------------


def test_solve_identity_and_zero():
    F = RatFuncField(3)
    ident = Mat.identity(F, 3)
    b = [F.of(1), F.of(2), F.of(0)]
    x, ker = ident.solve(b)
    assert x == b and ker == []
    zero = Mat.zeros(F, 2, 2)
    x, ker = zero.solve([F.zero, F.zero])
    assert len(ker) == 2
    with pytest.raises(Inconsistent):
        zero.solve([F.one, F.zero])


def test_solve_back_substitution_over_f2t():
    F = RatFuncField(2)
    t = RatFunc.t(2)
    a = Mat(F, [[t, F.one], [F.zero, F.one]])
    x, ker = a.solve([F.one, F.one])
    assert x == [F.zero, F.one]
    assert ker == []


def test_matrix_inverse_roundtrip():
    F = RatFuncField(5)
    t = RatFunc.t(5)
    a = Mat(F, [[t, F.one], [F.one, t]])
    assert a * a.inverse() == Mat.identity(F, 2)


# -- text grammar ------------------------------------------------------------


def test_parse_render_roundtrip():
    p = 5
    # the grammar of the example string "(t^2+1)/(t^3+t)"; that particular
    # pair reduces, t^3+t = t*(t^2+1), so parsing canonicalises it to 1/t
    assert parse_ratfunc("(t^2+1)/(t^3+t)", p) == RatFunc.one(p) / RatFunc.t(p)
    f = RatFunc(Poly([1, 0, 1], p), Poly([1, 1, 0, 1], p))
    assert render_ratfunc(f) == "(t^2+1)/(t^3+t+1)"
    assert parse_ratfunc(render_ratfunc(f), p) == f
    assert parse_poly("t^2 + 3*t + 4", p) == Poly([4, 3, 1], p)
    rng = random.Random(7)
    for _ in range(30):
        g = rand_ratfunc(rng, p)
        assert parse_ratfunc(render_ratfunc(g), p) == g
