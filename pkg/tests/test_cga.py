import random

import pytest

from itconn.algebra import MPoly, MPolyRing
from itconn.cga import CgaDescriptor, CgaElement, PositiveMap, compose, multiply, scale_action, tensor
from itconn.errors import DescriptorMismatch
from itconn.series import TSeries


def series_elem(desc, coeffs):
    ring = desc.ring
    return CgaElement(desc, TSeries(ring, [ring.of(c) for c in coeffs], desc.order))


@pytest.fixture
def f2_desc():
    return CgaDescriptor.power_series(MPolyRing(2, 1), 2)


def test_multiply_char2_square(f2_desc):
    x = series_elem(f2_desc, [1, 1])  # 1 + T
    prod = multiply(x, x)
    assert prod == series_elem(f2_desc, [1, 0, 1])  # 1 + T^2


def test_multiply_unit_and_truncation(f2_desc):
    x = series_elem(f2_desc, [1, 1, 1])
    one = CgaElement.one(f2_desc)
    assert multiply(x, one) == x
    tN = series_elem(f2_desc, [0, 0, 1])  # T^N with N = 2
    t1 = series_elem(f2_desc, [0, 1])
    assert all(multiply(tN, t1).data[k].is_zero() for k in range(3))


def test_multiply_descriptor_mismatch(f2_desc):
    other = CgaDescriptor.power_series(MPolyRing(2, 1), 3)
    with pytest.raises(DescriptorMismatch):
        multiply(series_elem(f2_desc, [1]), series_elem(other, [1]))


def test_tensor_examples(f2_desc):
    one = CgaElement.one(f2_desc)
    t = series_elem(f2_desc, [0, 1])
    assert tensor(one, one).terms == {(0, 0): MPoly.one(2, 1)}
    mixed = tensor(t, one) + tensor(one, t)
    assert mixed.component_rank(1) == 2
    tt = tensor(t, t)
    assert list(tt.terms) == [(1, 1)] and tt.component_rank(2) == 1


def rand_map(rng, desc, min_degree=0):
    ring = desc.ring
    comps = {}
    for i in range(min_degree, desc.order + 1):
        row = {}
        for j in range(desc.order + 1 - i):
            c = rng.randrange(desc.ring.p)
            if c:
                row[j] = ring.of(c)
        if row:
            comps[i] = row
    return PositiveMap(desc, desc, comps)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_scale_action_monoid(p):
    desc = CgaDescriptor.power_series(MPolyRing(p, 1), 4)
    rng = random.Random(p)
    g = rand_map(rng, desc)
    assert scale_action(1, g) == g
    zero_g = scale_action(0, g)
    assert all(i == 0 for i in zero_g.components)
    for a in range(p):
        for b in range(p):
            assert scale_action((a * b) % p, g) == scale_action(a, scale_action(b, g))


def test_scale_action_trivial_over_f2():
    desc = CgaDescriptor.power_series(MPolyRing(2, 1), 4)
    g = rand_map(random.Random(9), desc)
    assert scale_action(1, g) == g  # the only nonzero scalar acts trivially


def test_compose_identity_and_degree_support():
    desc = CgaDescriptor.power_series(MPolyRing(3, 1), 4)
    rng = random.Random(3)
    g = rand_map(rng, desc)
    ident = PositiveMap.identity(desc)
    assert compose(ident, g) == g
    h1 = rand_map(rng, desc, min_degree=1)
    g1 = rand_map(rng, desc, min_degree=1)
    assert 1 not in compose(h1, g1).components  # degree additivity


@pytest.mark.parametrize("p", [2, 3])
def test_scale_compose_equivariance(p):
    # a.(h o g) = (a.h) o (a.g), exactly in the truncation
    desc = CgaDescriptor.power_series(MPolyRing(p, 1), 5)
    rng = random.Random(20 + p)
    for _ in range(10):
        g, h = rand_map(rng, desc), rand_map(rng, desc)
        for a in range(p):
            assert scale_action(a, compose(h, g)) == compose(scale_action(a, h), scale_action(a, g))


def test_compose_associative():
    desc = CgaDescriptor.power_series(MPolyRing(3, 1), 4)
    rng = random.Random(8)
    for _ in range(10):
        f, g, h = (rand_map(rng, desc) for _ in range(3))
        assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_apply_matches_convolution():
    desc = CgaDescriptor.power_series(MPolyRing(5, 1), 4)
    rng = random.Random(12)
    g = rand_map(rng, desc)
    x = series_elem(desc, [rng.randrange(5) for _ in range(5)])
    y = g.apply(x)
    ring = desc.ring
    for k in range(5):
        acc = ring.zero
        for i in range(k + 1):
            acc = ring.add(acc, ring.mul(g.component(i, k - i), x.data[k - i]))
        assert y.data[k] == acc
