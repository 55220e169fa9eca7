import random

import pytest

from itconn.algebra import MPoly, Poly, RatFunc
from itconn.algebra.qpoly import QPoly
from itconn.errors import NotEtale
from itconn.hderiv import (
    CharZeroDomain,
    HigherDerivation,
    PolyDomain,
    RatFuncDomain,
    derivation_of,
    from_derivation,
    newton_extend,
)

N = 16


def rand_hd(rng, domain, order, maxdeg=1):
    """Random higher derivation: generator images with small poly coefficients."""
    images = {}
    for name, gen in domain.generators():
        coeffs = [gen]
        for _ in range(order):
            coeffs.append(
                MPoly(
                    {
                        tuple(rng.randrange(maxdeg + 1) for _ in range(domain.m)): rng.randrange(
                            domain.p
                        )
                    },
                    domain.p,
                    domain.m,
                )
            )
        images[name] = type(images.get(name, None)).__class__  # placeholder
        from itconn.series import TSeries

        images[name] = TSeries(domain.ring, coeffs, order)
    return HigherDerivation(domain, order, images)


# -- evaluation ---------------------------------------------------------------


def test_apply_phi_t_on_square_char2():
    dom = PolyDomain(2, 1)
    phi = HigherDerivation.phi_t(dom, N)
    tsq = MPoly.gen(0, 2, 1) ** 2
    assert phi.apply(tsq, 1).is_zero()
    assert phi.apply(tsq, 2) == MPoly.one(2, 1)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_apply_quotient_rule_geometric(p):
    dom = RatFuncDomain(p)
    phi = HigherDerivation.phi_t(dom, 8)
    f = RatFunc.one(p) / RatFunc(Poly([1, 1], p))
    for k in range(9):
        expected = (RatFunc(Poly([1, 1], p)) ** (-(k + 1))).scale((-1) ** k)
        assert phi.apply(f, k) == expected


def test_apply_kills_constants():
    dom = PolyDomain(3, 2)
    phi = HigherDerivation.phi_t(dom, 6, var="t1")
    c = MPoly.const(2, 3, 2)
    for k in range(1, 7):
        assert phi.apply(c, k).is_zero()


# -- iterativity ----------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5])
def test_phi_t_is_iterative(p):
    dom = PolyDomain(p, 1)
    assert HigherDerivation.phi_t(dom, N).is_iterative().verdict


@pytest.mark.parametrize("q", [2, 3, 5])
def test_counterexample_t_plus_T_2q_minus_1(q):
    # psi(t) = t + T^{2q-1} satisfies the F_q-action additivity but is not
    # iterative; first located failure is the pair (1, 2q-2)
    from itconn.series import TSeries

    dom = PolyDomain(q, 1)
    order = 2 * q
    t = MPoly.gen(0, q, 1)
    coeffs = [t] + [MPoly.zero(q, 1)] * (2 * q - 2) + [MPoly.one(q, 1)]
    psi = HigherDerivation(dom, order, {"t": TSeries(dom.ring, coeffs, order)})
    report = psi.is_iterative()
    assert not report.verdict
    i, j, gen, lhs, rhs = report.first_failure
    assert (i, j) == (1, 2 * q - 2)
    assert psi.action_is_additive()


def test_char0_from_derivation_is_iterative():
    phi = from_derivation(QPoly([0, 1, 1]), 8)  # d = (t + t^2) d/dt
    assert phi.is_iterative().verdict


# -- group law -------------------------------------------------------------------


def test_group_law_phi_t_squared_char2():
    dom = PolyDomain(2, 1)
    phi = HigherDerivation.phi_t(dom, N)
    prod = phi.multiply(phi)
    assert prod.equal_on_generators(HigherDerivation.identity(dom, N))


def test_identity_is_unit():
    dom = PolyDomain(3, 1)
    rng = random.Random(5)
    psi = rand_hd(rng, dom, 10)
    ident = HigherDerivation.identity(dom, 10)
    assert psi.multiply(ident).equal_on_generators(psi)
    assert ident.multiply(psi).equal_on_generators(psi)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_action_on_phi_t_adds(p):
    dom = PolyDomain(p, 1)
    phi = HigherDerivation.phi_t(dom, 12)
    for a in range(p):
        for b in range(p):
            lhs = phi.scale(a).multiply(phi.scale(b))
            assert lhs.equal_on_generators(phi.scale((a + b) % p))


@pytest.mark.parametrize("p", [2, 3])
def test_group_law_associative_and_inverse(p):
    dom = PolyDomain(p, 1)
    rng = random.Random(42 + p)
    for _ in range(6):
        a, b, c = (rand_hd(rng, dom, 8) for _ in range(3))
        assert a.multiply(b).multiply(c).equal_on_generators(a.multiply(b.multiply(c)))
        inv = a.invert()
        ident = HigherDerivation.identity(dom, 8)
        assert inv.multiply(a).equal_on_generators(ident)
        assert a.multiply(inv).equal_on_generators(ident)
        assert inv.invert().equal_on_generators(a)


def test_invert_identity_and_phi_t():
    dom = PolyDomain(3, 1)
    ident = HigherDerivation.identity(dom, 8)
    assert ident.invert().equal_on_generators(ident)
    phi = HigherDerivation.phi_t(dom, 8)
    inv = phi.invert()
    # leading correction is -T
    assert inv.images["t"][1] == MPoly.const(-1, 3, 1)
    assert inv.multiply(phi).equal_on_generators(ident)


def test_commuting_composition_is_iterative():
    dom = PolyDomain(3, 2)
    phi1 = HigherDerivation.phi_t(dom, 8, var="t1")
    phi2 = HigherDerivation.phi_t(dom, 8, var="t2")
    assert phi1.multiply(phi2).is_iterative().verdict


# -- Newton lifting -----------------------------------------------------------------


def test_newton_artin_schreier_char2():
    # m(X) = X^2 + X + t over F_2[t]: lifted image has coefficients exactly at
    # the powers of two (c_1 = 1, c_{2j} = c_j^2, odd indices vanish)
    dom = PolyDomain(2, 1)
    phi = HigherDerivation.phi_t(dom, N)
    p2 = RatFunc.from_poly
    m = [p2(Poly.t(2)), p2(Poly.one(2)), p2(Poly.one(2))]
    ext = newton_extend(phi, m)
    yimg = ext.images["y"]
    one = ext.domain.ring.one
    for k in range(1, N + 1):
        expected_one = (k & (k - 1)) == 0  # k is a power of two
        assert (yimg[k] == one) == expected_one
        if not expected_one:
            assert yimg[k].is_zero()
    assert ext.is_iterative().verdict


def test_newton_trivial_degree_one():
    dom = PolyDomain(2, 1)
    phi = HigherDerivation.phi_t(dom, 8)
    r = RatFunc.from_poly(Poly([1, 1, 1], 2))  # m(X) = X - r
    ext = newton_extend(phi, [-r, RatFunc.one(2)])
    base = RatFuncDomain(2)
    base_phi = HigherDerivation.phi_t(base, 8)
    expected = base_phi.apply_series(r)
    lifted = ext.images["y"]
    for k in range(9):
        assert lifted[k] == ext.domain.ext.of_base(expected[k])


def test_newton_square_root_char3():
    dom = PolyDomain(3, 1)
    phi = HigherDerivation.phi_t(dom, 12)
    one_plus_t = RatFunc.from_poly(Poly([1, 1], 3))
    m = [-one_plus_t, RatFunc.zero(3), RatFunc.one(3)]  # X^2 - (1+t)
    ext = newton_extend(phi, m)
    sq = ext.images["y"] * ext.images["y"]
    # psi_e(y)^2 = psi(1+t) = 1 + t + T
    assert sq[0] == ext.domain.ext.of_base(one_plus_t)
    assert sq[1] == ext.domain.ring.one
    for k in range(2, 13):
        assert sq[k].is_zero()
    assert ext.is_iterative().verdict


def test_newton_rejects_inseparable():
    dom = PolyDomain(2, 1)
    phi = HigherDerivation.phi_t(dom, 8)
    m = [RatFunc.from_poly(-Poly.t(2)), RatFunc.zero(2), RatFunc.one(2)]  # X^2 - t
    with pytest.raises(NotEtale):
        newton_extend(phi, m)


# -- characteristic zero ---------------------------------------------------------------


def test_from_derivation_examples():
    phi = from_derivation(QPoly.one(), 6)  # d/dt
    assert phi.images["t"][1] == QPoly.one()
    for k in range(2, 7):
        assert phi.images["t"][k].is_zero()

    phi2 = from_derivation(QPoly.t(), 6)  # t d/dt
    from fractions import Fraction

    assert phi2.images["t"][2] == QPoly([0, Fraction(1, 2)])

    zero = from_derivation(QPoly.zero(), 6)
    assert zero.equal_on_generators(HigherDerivation.identity(CharZeroDomain(), 6))


def test_char0_dictionary_roundtrip():
    for a in [QPoly.one(), QPoly.t(), QPoly([1, 2, 3])]:
        phi = from_derivation(a, 8)
        assert derivation_of(phi) == a
        again = from_derivation(derivation_of(phi), 8)
        assert again.equal_on_generators(phi)
