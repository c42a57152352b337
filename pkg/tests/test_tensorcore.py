import random

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfx.tensorcore import (
    AlgebraData,
    DimMismatch,
    LegElement,
    LinMap,
    NotInvertible,
    linmap_of_left_mult,
    solve_in_algebra,
)

from tests.conftest import qt
from tests.oracle import as_dict, frac, linmap_dense, mult_table, tensor_mul


def rand_vec(rng, d, density=0.6):
    return {i: mpq(rng.randint(-3, 3), rng.randint(1, 3)) for i in range(d) if rng.random() < density}


def rand_leg(rng, legs, terms=6):
    data = {}
    for _ in range(terms):
        key = tuple(rng.randrange(a.dim) for a in legs)
        data[key] = mpq(rng.randint(-4, 4), rng.randint(1, 3))
    return LegElement(legs, data)


dense_matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n
    )
)


@settings(max_examples=50, deadline=None)
@given(dense_matrices)
def test_rank_and_inverse_against_sympy(rows):
    M = LinMap.from_dense([[mpq(x) for x in r] for r in rows])
    S = sympy.Matrix(rows)
    assert M.rank() == S.rank()
    if S.det() != 0:
        inv = M.inverse()
        assert linmap_dense(inv) == [[sympy.Rational(x) for x in r] for r in S.inv().tolist()]
        assert (M @ inv).is_identity()
    else:
        with pytest.raises(NotInvertible):
            M.inverse()


@settings(max_examples=40, deadline=None)
@given(dense_matrices, st.integers(0, 10**6))
def test_nullspace_and_solve(rows, seed):
    M = LinMap.from_dense([[mpq(x) for x in r] for r in rows])
    kernel = M.nullspace()
    assert len(kernel) == M.src_dim - M.rank()
    for v in kernel:
        assert M.apply(v) == {}
    x = rand_vec(random.Random(seed), M.src_dim)
    b = M.apply(x)
    assert M.apply(M.solve(b)) == b


def test_matmul_against_sympy():
    rng = random.Random(3)
    A = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(3)]
    B = [[rng.randint(-2, 2) for _ in range(5)] for _ in range(4)]
    P = LinMap.from_dense([[mpq(x) for x in r] for r in A]) @ LinMap.from_dense([[mpq(x) for x in r] for r in B])
    assert linmap_dense(P) == (sympy.Matrix(A) * sympy.Matrix(B)).tolist()
    with pytest.raises(DimMismatch):
        LinMap.from_dense([[mpq(x) for x in r] for r in A]) @ LinMap.identity(3)


def test_embed_trivial_R_is_unit():
    Q = qt("Z2")
    A = Q.A
    assert Q.R.embed([1, 2], [A, A, A]) == LegElement.one([A, A, A])


def test_embed_canonical_element_brute_force():
    # X = sum (e^i (x) 1) (x) e_i placed on legs 0, 2 of E (x) H (x) H
    from hopfx.doubles import build_elliptic

    Q = qt("H4_1")
    E = build_elliptic(Q, 0)
    A = Q.A
    got = E.X.embed([0, 2], [E, A, A])
    eps = E.braided.algebra.unit
    expected = {}
    for i in range(4):
        for j, c in eps.items():
            for u, cu in A.unit.items():
                expected[i * 4 + j, u, i] = c * cu
    assert got.data == expected


def test_leg_product_unit_and_inverse():
    Q = qt("H4_1")
    AA = [Q.A, Q.A]
    one = LegElement.one(AA)
    assert one * Q.R == Q.R
    assert Q.R * Q.Rinv == one
    assert Q.Rinv * Q.R == one


@pytest.mark.parametrize("name", ["H4_1", "DZ2"])
def test_leg_product_matches_dense_expansion(name):
    Q = qt(name)
    A = Q.A
    table = mult_table(A)
    rng = random.Random(7)
    legs = [A, A, A]
    for _ in range(5):
        x, y, z = (rand_leg(rng, legs) for _ in range(3))
        assert as_dict(x * y) == tensor_mul([table] * 3, as_dict(x), as_dict(y))
        assert (x * y) * z == x * (y * z)


def test_solve_in_algebra():
    Q = qt("Z2")
    A = Q.A
    assert solve_in_algebra(A, A.unit) == A.unit
    assert solve_in_algebra(A, {1: 1}) == {1: 1}
    with pytest.raises(NotInvertible):
        solve_in_algebra(A, {0: 1, 1: 1})


def test_left_multiplication_matrices():
    H4 = qt("H4_1").A
    assert linmap_of_left_mult(H4, H4.unit).is_identity()
    L = linmap_of_left_mult(H4, {2: 1})
    assert not L.is_zero()
    assert (L @ L).is_zero()
    Z2 = qt("Z2").A
    half = mpq(1, 2)
    assert linmap_of_left_mult(Z2, {0: half, 1: half}).rank() == 1


def test_algebra_checks_catch_bad_tables():
    unit_rows = {(0, j): {j: 1} for j in range(3)} | {(j, 0): {j: 1} for j in range(3)}
    # e1 e2 = e1, e2 e2 = 0: (e1 e2) e2 = e1 but e1 (e2 e2) = 0
    A = AlgebraData(3, unit_rows | {(1, 2): {1: 1}})
    assert A.check_unit() is None
    assert A.check_associativity() is not None
    B = AlgebraData(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {0: 1}, (1, 1): {1: 1}})
    assert B.check_unit() is not None


def test_first_difference_and_permute():
    Q = qt("H4_1")
    R21 = Q.R.permute([1, 0])
    assert R21.permute([1, 0]) == Q.R
    w = Q.R.first_difference(R21)
    assert w is not None
    assert Q.R.data.get(w, 0) != R21.data.get(w, 0)
    assert Q.R.first_difference(Q.R) is None


def test_split_contract_roundtrip():
    # (eps (x) id) Delta = id on every basis vector
    Q = qt("DZ2")
    H = Q.H
    for i in range(H.dim):
        el = LegElement.from_vector(H.algebra, {i: 1}).split_leg(0, H.delta_basis, [H.algebra, H.algebra])
        assert el.contract(0, H.counit).to_vector() == {i: 1}
        assert {k: frac(v) for k, v in el.contract(1, H.counit).to_vector().items()} == {i: 1}
