import pytest

from itconn.algebra import Poly, RatFunc
from itconn.errors import IterativityFailure, NotIso
from itconn.galois import (
    Coaction,
    GenSpec,
    HopfAlgebra,
    HopfIdeal,
    RKG,
    ThetaRing,
    alpalp_coaction,
    alpalp_ring,
    build_torsor_gamma,
    gm_symbolic_ring,
    ideal_bijection_check,
    invariance_test,
    invariant_subalgebra,
    mu_k_defining_polynomial_separable,
    mupmup_coaction,
    mupmup_ring,
    reduced_and_separable,
    ring_constants,
    span_equal,
    square_constants,
    theta_simplicity,
    theta_stable,
)
from itconn.galois.examples import (
    DEFAULT_ALPHA_DIGITS,
    DEFAULT_L,
    DEFAULT_MU_DIGITS,
    verify_gm,
)
from itconn.galois.rings import DIAGONAL

P = 2


@pytest.fixture(scope="module")
def mu_ring():
    return mupmup_ring(P, DEFAULT_MU_DIGITS, DEFAULT_L)


@pytest.fixture(scope="module")
def mu_coaction(mu_ring):
    return mupmup_coaction(mu_ring)


@pytest.fixture(scope="module")
def mu_torsor(mu_ring, mu_coaction):
    return build_torsor_gamma(mu_ring, mu_coaction)


@pytest.fixture(scope="module")
def alp_ring():
    return alpalp_ring(P, DEFAULT_ALPHA_DIGITS, DEFAULT_L)


# -- Hopf tables ---------------------------------------------------------------


def test_hopf_presets_verify():
    for h in (HopfAlgebra.mu(2, 2), HopfAlgebra.mu(3, 2), HopfAlgebra.alpha(2), HopfAlgebra.alpha(3)):
        assert h.dim == len(h.labels)
    prod = HopfAlgebra.product(HopfAlgebra.mu(2, 2), HopfAlgebra.mu(2, 2))
    assert prod.dim == 4


def test_hopf_reducedness():
    assert not HopfAlgebra.mu(2, 2).is_reduced()  # (x-1)^2 = 0
    assert not HopfAlgebra.alpha(2).is_reduced()
    assert HopfAlgebra.mu(3, 2).is_reduced()  # x^3 - 1 separable over F_2
    assert mu_k_defining_polynomial_separable(3, 2)
    assert not mu_k_defining_polynomial_separable(2, 2)


# -- theta-rings ------------------------------------------------------------------


def test_ring_well_defined_and_iterative(mu_ring, alp_ring):
    assert mu_ring.well_definedness_failures() == []
    assert mu_ring.iterativity_failure() is None
    assert alp_ring.well_definedness_failures() == []
    assert alp_ring.iterativity_failure() is None


def test_bad_digit_data_rejected():
    # the misprinted coefficient family violates the iteration rule
    bad = [
        GenSpec(
            "r1",
            DIAGONAL,
            1,
            [
                RatFunc(Poly.one(P), Poly.one(P) + Poly.monomial(1, 2 ** (l + 1), P))
                for l in range(3)
            ],
        )
    ]
    with pytest.raises(IterativityFailure):
        ThetaRing(P, 3, bad)


# -- coaction and torsor --------------------------------------------------------------


def test_comodule_axioms_and_equivariance(mu_ring, mu_coaction, alp_ring):
    rep = mu_coaction.verify()
    assert rep.coassociative and rep.counital and rep.equivariant
    rep2 = alpalp_coaction(alp_ring).verify()
    assert rep2.coassociative and rep2.counital and rep2.equivariant


def test_torsor_is_16_dimensional_iso(mu_ring, mu_torsor):
    rep = mu_torsor.verify()
    assert rep.source_dim == 16 and rep.bijective and rep.equivariant


def test_alpha_torsor(alp_ring):
    torsor = build_torsor_gamma(alp_ring, alpalp_coaction(alp_ring))
    rep = torsor.verify()
    assert rep.bijective and rep.equivariant


def test_trivial_torsor_is_identity():
    # R = F (no generators), G trivial: gamma is the identity on F
    ring = ThetaRing(P, 2, [])
    hopf = HopfAlgebra.mu(1, P)
    co = Coaction(ring, hopf, [])
    torsor = build_torsor_gamma(ring, co)
    rep = torsor.verify()
    assert rep.source_dim == 1 and rep.bijective and rep.equivariant


def test_trivial_group_fails_bijectivity():
    ring = mupmup_ring(P, DEFAULT_MU_DIGITS, 2)
    hopf = HopfAlgebra.mu(1, P)
    co = Coaction(ring, hopf, [RKG(ring, hopf, {0: ring.gen(i)}) for i in range(2)])
    with pytest.raises(NotIso):
        build_torsor_gamma(ring, co)


# -- invariance and subalgebras ----------------------------------------------------------


def _mu_subgroup(hopf, p, k=None, x1_only=False):
    vec = [0] * hopf.dim
    idx = (1 % p) * p if x1_only else (k % p) * p + 1
    vec[idx] = 1
    vec[hopf.unit] = (vec[hopf.unit] - 1) % p
    return hopf.ideal([vec])


def test_invariance_kernel_criterion(mu_ring, mu_coaction, mu_torsor):
    hopf = mu_coaction.hopf
    H = _mu_subgroup(hopf, P, k=1)
    r1, r2 = mu_ring.gen(0), mu_ring.gen(1)
    assert invariance_test(mu_torsor, r1 * r2, mu_ring.one(), H)
    assert not invariance_test(mu_torsor, r1, mu_ring.one(), H)
    # base-field elements are always invariant
    f = mu_ring.of_rat(RatFunc.t(P))
    assert invariance_test(mu_torsor, f, mu_ring.one(), H)


def test_invariant_subalgebras_match_predictions(mu_ring, mu_coaction):
    hopf = mu_coaction.hopf
    for k in range(P):
        inv = invariant_subalgebra(mu_coaction, _mu_subgroup(hopf, P, k=k))
        predicted = [mu_ring.one(), mu_ring.gen(0, k) * mu_ring.gen(1)]
        assert span_equal(mu_ring, inv, predicted)
        assert theta_stable(mu_ring, inv)
    inv1 = invariant_subalgebra(mu_coaction, _mu_subgroup(hopf, P, x1_only=True))
    assert span_equal(mu_ring, inv1, [mu_ring.one(), mu_ring.gen(0)])


def test_full_group_invariants_are_base_field(mu_ring, mu_coaction):
    invG = invariant_subalgebra(mu_coaction, HopfIdeal(mu_coaction.hopf, []))
    assert span_equal(mu_ring, invG, [mu_ring.one()])


def test_trivial_subgroup_invariants_are_everything(mu_ring, mu_coaction):
    aug = mu_coaction.hopf.augmentation_ideal()
    inv = invariant_subalgebra(mu_coaction, aug)
    assert len(inv) == 4


# -- constants ---------------------------------------------------------------------------


def test_constants_dimensions(mu_ring, alp_ring):
    assert ring_constants(mu_ring).dim == 1
    assert square_constants(mu_ring).dim == 4
    assert ring_constants(alp_ring).dim == 1
    assert square_constants(alp_ring).dim == 4


def test_alpha_square_constants_are_the_frobenius_witnesses(alp_ring):
    rep = square_constants(alp_ring)
    # the basis realises K[alpha_p x alpha_p]: 1, w1, w2, w1 w2 with
    # w_i = r_i (x) 1 + 1 (x) r_i
    supports = sorted(tuple(sorted(b.keys())) for b in rep.basis)
    assert (((0, 0), (0, 0)),) in supports  # the unit
    assert (((0, 0), (0, 1)), ((0, 1), (0, 0))) in supports  # w_2


# -- simplicity, ideal bijection, reducedness -----------------------------------------------


def test_theta_simplicity(mu_ring):
    rep = theta_simplicity(mu_ring, sample_limit=16)
    assert rep.ok


def test_ideal_bijection_small_grid(mu_ring):
    rep = ideal_bijection_check(mu_ring, HopfAlgebra.mu(P, P), grid_limit=8)
    assert rep.lattice_size == 3
    assert rep.ok


def test_reduced_separable_pairing(mu_ring):
    mu2 = reduced_and_separable(HopfAlgebra.mu(2, 2))
    assert not mu2.is_reduced
    ext = reduced_and_separable(mu_ring)
    assert not ext.is_separable and not ext.is_reduced
    mu3 = reduced_and_separable(HopfAlgebra.mu(3, 2))
    assert mu3.is_reduced


# -- the multiplicative-group example ---------------------------------------------------------


def test_gm_example():
    ring, rep = gm_symbolic_ring(2, [1, 0, 0], 3, window=3)
    assert rep.ok
    # theta^{(1)}(s) = t^{-1} s
    fam = ring.families[0]
    assert fam[1] == RatFunc(Poly.one(2), Poly.t(2))
    assert fam[3].is_zero()


def test_gm_trivial_digits():
    ring, rep = gm_symbolic_ring(2, [0, 0, 0], 3, window=2)
    assert rep.ok
    assert all(f.is_zero() for f in ring.families[0][1:])


def test_gm_report_lines():
    lines = verify_gm()
    assert all(ok for _, ok, _ in lines)
