import itertools

import pytest

from hopfx.braided_dual import build_braided_dual, check_k_reflection, factorization_map
from hopfx.doubles import (
    PreconditionFailed,
    T_factors,
    build_Phi,
    build_T,
    build_elliptic,
    build_heisenberg,
    check_T_hexagons,
    check_elliptic_relation,
    elliptic_witness,
    image_rank,
    universal_morphism,
)
from hopfx.hopf import dual_hopf
from hopfx.tensorcore import LegElement, LinMap

from tests.conftest import SMALL, qt


def test_T_hexagons(Q):
    rep = check_T_hexagons(Q)
    assert rep.ok, rep.summary()


def test_trivial_T_is_one():
    Q = qt("Z2")
    assert build_T(Q) == LegElement.one(Q.legs(4))


@pytest.mark.parametrize("drop", [0, 1, 2])
def test_T_with_an_inverse_dropped_fails(drop):
    Q = qt("H4_1")
    factors = T_factors(Q)
    factors[drop] = factors[drop].inverse()
    T = LegElement.one(Q.legs(4))
    for f in factors:
        T = T * f
    rep = check_T_hexagons(Q, T=T)
    assert not rep["T_hexagon_left"].holds
    assert not rep["T_hexagon_right"].holds


@pytest.mark.parametrize("k", [0, 1])
def test_elliptic_double(Q, k):
    E = build_elliptic(Q, k)
    assert E.dim == Q.dim**2
    # exhaustive: d^6 triples for d <= 4
    assert E.check_associativity(itertools.product(range(E.dim), repeat=3)) is None
    assert E.check_unit() is None
    rep = check_elliptic_relation(E)
    assert rep.ok, rep.summary()


def test_trivial_R_elliptic_is_dual_squared():
    Q = qt("Z2")
    E = build_elliptic(Q, 0)
    D = dual_hopf(Q.H).algebra
    assert E.is_commutative()
    for p, q in itertools.product(range(4), repeat=2):
        (i, j), (i2, j2) = divmod(p, 2), divmod(q, 2)
        expected = {a * 2 + b: x * y for a, x in D.mul_basis(i, i2).items() for b, y in D.mul_basis(j, j2).items()}
        assert E.mul_basis(p, q) == expected


@pytest.mark.parametrize("k", [0, 1])
def test_canonical_inclusions_are_algebra_maps(k):
    Q = qt("DZ2")
    E = build_elliptic(Q, k)
    B = E.braided.algebra
    for i, j in itertools.product(range(4), repeat=2):
        prod = B.mul_basis(i, j)
        assert E.mul(E.first({i: 1}), E.first({j: 1})) == E.first(prod)
        assert E.mul(E.second({i: 1}), E.second({j: 1})) == E.second(prod)
        # f (x) g = (f (x) 1)(1 (x) g)
        assert E.mul(E.first({i: 1}), E.second({j: 1})) == {i * 4 + j: 1}


def test_universal_morphism_identity(Q):
    for k in (0, 1):
        E = build_elliptic(Q, k)
        f = universal_morphism(Q, k, E, E.X, E.Y, E=E)
        assert f.is_identity()


@pytest.mark.parametrize("name", ["Z2", "H4_0", "H4_1"])
def test_universal_morphism_into_H_factors_through_phi(name):
    Q = qt(name)
    A = Q.A
    f = universal_morphism(Q, 0, A, Q.D, Q.D)
    phi = factorization_map(Q).columns()
    d = Q.dim
    expected = LinMap.from_columns(d, [A.mul(phi[i], phi[j]) for i in range(d) for j in range(d)])
    assert f == expected


def test_universal_morphism_rejects_bad_pair():
    Q = qt("DZ2")
    with pytest.raises(PreconditionFailed) as err:
        universal_morphism(Q, 0, Q.A, Q.D, Q.D)
    assert err.value.axiom == "elliptic_relation"
    E = build_elliptic(Q, 1)
    with pytest.raises(PreconditionFailed) as err:
        universal_morphism(Q, 0, E, E.X, E.Y)
    assert err.value.axiom.startswith("k_reflection")


def test_heisenberg_double(Q):
    DH = build_heisenberg(Q)
    assert DH.dim == Q.dim**2
    assert DH.check_associativity(itertools.product(range(DH.dim), repeat=3)) is None
    assert check_k_reflection(Q, 0, X=DH.X).ok
    assert check_k_reflection(Q, 0, X=DH.Y)["k_reflection[k=0]"].holds
    assert elliptic_witness(Q, DH.X, DH.Y) is None


def test_heisenberg_trivial_R_subalgebras():
    Q = qt("Z2")
    DH = build_heisenberg(Q)
    D = dual_hopf(Q.H).algebra
    for i, j in itertools.product(range(2), repeat=2):
        assert DH.mul(DH.first({i: 1}), DH.first({j: 1})) == DH.first(D.mul_basis(i, j))
        assert DH.mul(DH.second({i: 1}), DH.second({j: 1})) == DH.second(Q.A.mul_basis(i, j))


# frozen: d * rank(phi) from the exact factorization ranks
PHI_RANK = {"Z2": 2, "H4_0": 4, "H4_1": 4, "DZ2": 16}


def test_Phi(Q, name):
    P = build_Phi(Q)
    assert image_rank(P) == PHI_RANK[name]
    assert (P.inverse is not None) == (name == "DZ2")
    if P.inverse is not None:
        assert (P.map @ P.inverse).is_identity()


def test_Phi_is_identity_on_first_factor():
    Q = qt("DZ2")
    P = build_Phi(Q)
    E = build_elliptic(Q, 0)
    DH = build_heisenberg(Q)
    for i in range(4):
        assert P.map.apply(E.first({i: 1})) == DH.first({i: 1})


@pytest.mark.parametrize("name", SMALL)
def test_braided_dual_reused(name):
    Q = qt(name)
    BD = build_braided_dual(Q, 0)
    E = build_elliptic(Q, 0, BD=BD)
    assert E.braided is BD
