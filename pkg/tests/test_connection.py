import random

import pytest

from itconn.algebra import MPoly, Mat, PrimeField
from itconn.connection import (
    HigherConnection,
    apply_psi,
    coevaluation_morphism_matrix,
    dif_monomials,
    dual_connection,
    evaluation_morphism_matrix,
    hom_connection,
    iota_morphism_matrix,
    is_iterative_connection,
    is_morphism,
    tensor_connection,
    unit_derivative_search,
)
from itconn.errors import ZeroInput
from itconn.hderiv import HigherDerivation, PolyDomain
from itconn.hdiff import DifDescriptor, DifElement, d_R

DESC = DifDescriptor(p=2, m=1, order=6)
DESC3 = DifDescriptor(p=3, m=1, order=6)


def rand_connection(rng, desc, rank, max_entry_degree=2):
    omega = []
    for i in range(rank):
        row = []
        for j in range(rank):
            entry = DifElement.one(desc) if i == j else DifElement.zero(desc)
            for _ in range(2):
                deg = rng.randint(1, max_entry_degree)
                mono = (((deg, 0), 1),)
                c = MPoly({(rng.randrange(2),): rng.randrange(desc.p)}, desc.p, desc.m)
                entry = entry + DifElement(desc, {mono: c})
            row.append(entry)
        omega.append(row)
    return HigherConnection(desc, omega)


def gauge_of_trivial(desc, g, ginv):
    """Transport the trivial connection along the basis change g."""
    n = len(g)
    omega = []
    for k in range(n):
        row = []
        for j in range(n):
            acc = DifElement.zero(desc)
            for i in range(n):
                acc = acc + d_R(desc, ginv[i][j]).scale_poly(g[k][i])
            row.append(acc)
        omega.append(row)
    return HigherConnection(desc, omega)


# -- evaluation along derivations -------------------------------------------------


def test_apply_psi_trivial_connection():
    conn = HigherConnection.trivial(DESC, 2)
    phi = HigherDerivation.phi_t(PolyDomain(2, 1), 6)
    mats = apply_psi(conn, phi)
    one = MPoly.one(2, 1)
    assert mats[0] == [[one, MPoly.zero(2, 1)], [MPoly.zero(2, 1), one]]
    for k in range(1, 7):
        assert all(c.is_zero() for row in mats[k] for c in row)


def test_apply_psi_rank1_d1t():
    omega = [[DifElement.one(DESC) + DifElement.generator(DESC, 1)]]
    conn = HigherConnection(DESC, omega)
    phi = HigherDerivation.phi_t(PolyDomain(2, 1), 6)
    mats = apply_psi(conn, phi)
    assert mats[1][0][0] == MPoly.one(2, 1)
    for k in range(2, 7):
        assert mats[k][0][0].is_zero()


def test_dif_nabla_on_module_is_structure_matrix():
    rng = random.Random(1)
    conn = rand_connection(rng, DESC, 2)
    for j in range(2):
        unit = [
            DifElement.one(DESC) if i == j else DifElement.zero(DESC) for i in range(2)
        ]
        assert conn.dif_nabla(unit) == conn.column(j)


# -- iterativity ---------------------------------------------------------------------


def test_trivial_is_iterative():
    assert is_iterative_connection(HigherConnection.trivial(DESC, 2)).verdict


def test_rank1_generator_connection_not_iterative():
    # Omega = 1 + d1_t violates the degree-2 obstruction
    for desc in (DESC, DESC3):
        omega = [[DifElement.one(desc) + DifElement.generator(desc, 1)]]
        conn = HigherConnection(desc, omega)
        report = is_iterative_connection(conn)
        assert not report.verdict


def test_gauge_transform_of_trivial_is_iterative():
    t = MPoly.gen(0, 2, 1)
    one = MPoly.one(2, 1)
    zero = MPoly.zero(2, 1)
    g = [[one, t], [zero, one]]
    ginv = [[one, t], [zero, one]]  # char 2: the unipotent is an involution
    conn = gauge_of_trivial(DESC, g, ginv)
    assert is_iterative_connection(conn).verdict
    # the basis change is a morphism to the trivial connection
    assert is_morphism(ginv, conn, HigherConnection.trivial(DESC, 2))


# -- category constructions ------------------------------------------------------------


def test_tensor_dual_of_trivial():
    triv2 = HigherConnection.trivial(DESC, 2)
    triv4 = HigherConnection.trivial(DESC, 4)
    assert tensor_connection(triv2, triv2) == triv4
    assert dual_connection(triv2) == triv2


def test_dual_rank1_degree_one_coefficient():
    omega1 = DifElement.generator(DESC, 1)
    conn = HigherConnection(DESC, [[DifElement.one(DESC) + omega1]])
    dual = dual_connection(conn)
    assert dual.omega[0][0].degree_component(1) == -omega1


def test_morphism_examples():
    triv = HigherConnection.trivial(DESC, 2)
    one = MPoly.one(2, 1)
    zero = MPoly.zero(2, 1)
    ident = [[one, zero], [zero, one]]
    assert is_morphism(ident, triv, triv)
    t = MPoly.gen(0, 2, 1)
    mult_t = [[t, zero], [zero, t]]
    assert not is_morphism(mult_t, triv, triv)


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_ev_coev_iota_are_morphisms(rank):
    rng = random.Random(30 + rank)
    conn = rand_connection(rng, DESC, rank)
    triv1 = HigherConnection.trivial(DESC, 1)
    dual = dual_connection(conn)
    ev = evaluation_morphism_matrix(conn)
    assert is_morphism(ev, tensor_connection(conn, dual), triv1)
    coev = coevaluation_morphism_matrix(conn)
    assert is_morphism(coev, triv1, tensor_connection(dual, conn))
    other = rand_connection(rng, DESC, rank)
    iota = iota_morphism_matrix(conn, other)
    assert is_morphism(
        iota, tensor_connection(dual_connection(conn), other), hom_connection(conn, other)
    )


def test_tensor_apply_psi_factorises():
    # (nabla_tensor)_psi = (mu (x) id) o ((nabla_1)_psi (x) (nabla_2)_psi)
    rng = random.Random(77)
    c1 = rand_connection(rng, DESC, 2)
    c2 = rand_connection(rng, DESC, 2)
    phi = HigherDerivation.phi_t(PolyDomain(2, 1), 6)
    mats_t = apply_psi(tensor_connection(c1, c2), phi)
    m1 = apply_psi(c1, phi)
    m2 = apply_psi(c2, phi)
    n1, n2 = c1.rank, c2.rank
    for k in range(7):
        for i1 in range(n1):
            for i2 in range(n2):
                for j1 in range(n1):
                    for j2 in range(n2):
                        acc = MPoly.zero(2, 1)
                        for a in range(k + 1):
                            acc = acc + m1[a][i1][j1] * m2[k - a][i2][j2]
                        assert mats_t[k][i1 * n2 + i2][j1 * n2 + j2] == acc


# -- kernel exactness plumbing -----------------------------------------------------------


def test_kernel_of_id_tensor_f_is_dif_tensor_kernel():
    # constant morphism between trivial connections; per-degree kernel of
    # id (x) f on Dif (x) M equals Dif_k (x) Ker(f)
    p = 2
    F = PrimeField(p)
    f_rows = [[1, 1, 0], [0, 1, 1]]
    fmat = Mat(F, [[F.of(c) for c in row] for row in f_rows])
    ker = fmat.kernel_basis()
    for k in range(5):
        monos = [m for m in dif_monomials(DESC, 4) if sum(i * e for (i, _), e in m) == k]
        big_rows = []
        for mono_idx in range(len(monos)):
            for out_dim in range(2):
                row = []
                for mono_jdx in range(len(monos)):
                    for in_dim in range(3):
                        c = f_rows[out_dim][in_dim] if mono_idx == mono_jdx else 0
                        row.append(F.of(c))
                big_rows.append(row)
        big = Mat(F, big_rows)
        assert len(big.kernel_basis()) == len(ker) * len(monos)


# -- unit-derivative search ---------------------------------------------------------------


def test_unit_derivative_examples():
    r = MPoly.one(3, 2) + MPoly.gen(0, 3, 2)
    assert unit_derivative_search(r) == (0, 0)
    r2 = MPoly.gen(0, 3, 2) ** 2 * MPoly.gen(1, 3, 2)
    assert unit_derivative_search(r2) == (2, 1)
    for p in (2, 3, 5):
        tp = MPoly.gen(0, p, 1) ** p
        assert unit_derivative_search(tp) == (p,)
    with pytest.raises(ZeroInput):
        unit_derivative_search(MPoly.zero(2, 1))
