import pytest

from hopfx.doubles import build_elliptic, build_heisenberg
from hopfx.hopf import ModuleData
from hopfx.reps import (
    ModuleAxiomFailed,
    NotFactorizable,
    build_braid_rep,
    build_mcg_action,
    check_fourier,
    check_mcg_relations,
    check_presentation,
    fourier_transform,
    matmul,
)
from hopfx.tensorcore import LinMap

from tests.conftest import qt

PRESENTATION = {"X_commute", "Y_commute", "braid_relation", "far_commute", "X_shift", "Y_shift", "cross_relation"}


@pytest.mark.parametrize("n", [2, 3])
def test_braid_rep_relations(Q, n):
    E = build_elliptic(Q, 0)
    br = build_braid_rep(Q, E, n)
    assert br.dim == Q.dim**2 * Q.dim**n
    rep = check_presentation(br)
    assert set(rep.names()) == PRESENTATION
    assert rep.ok, rep.summary()


def test_braid_rep_on_heisenberg_double():
    Q = qt("DZ2")
    br = build_braid_rep(Q, build_heisenberg(Q), 2)
    assert check_presentation(br).ok


def test_sigma_braid_relation_DZ2():
    Q = qt("DZ2")
    br = build_braid_rep(Q, build_elliptic(Q, 0), 3)
    s1, s2 = br.sigma
    assert matmul(s1, s2, s1) == matmul(s2, s1, s2)
    assert not (s1 @ s2 == s2 @ s1)


def test_sigma_without_flip_is_caught():
    Q = qt("H4_1")
    br = build_braid_rep(Q, build_elliptic(Q, 0), 2, flip=False)
    rep = check_presentation(br)
    assert not rep["X_shift"].holds
    assert not rep["Y_shift"].holds


def test_bad_module_is_rejected():
    Q = qt("Z2")
    E = build_elliptic(Q, 0)
    zero = ModuleData(2, [LinMap.zero(2, 2)] * 2)
    with pytest.raises(ModuleAxiomFailed):
        build_braid_rep(Q, E, 2, V=zero)
    with pytest.raises(ValueError):
        build_braid_rep(Q, E, 0)


def test_mcg_relations(Q):
    act = build_mcg_action(Q)
    rep = check_mcg_relations(act)
    assert rep.ok, rep.summary()
    E = act.E
    n = E.dim
    for M in (act.A, act.B):
        assert M.rank() == n
        assert M.apply(E.unit) == E.unit
        cols = M.columns()
        for p in range(n):
            for q in range(n):
                assert M.apply(E.mul_basis(p, q)) == E.mul(cols[p], cols[q])


def test_trivial_R_mcg_center_is_identity():
    act = build_mcg_action(qt("Z2"))
    assert act.Z.is_identity()


def test_mutated_B_is_caught():
    Q = qt("H4_1")
    act = build_mcg_action(Q, B_images=lambda X, Y, Xi, Yi: (X, Xi * Y))
    rep = check_mcg_relations(act)
    assert not rep["B_on_Y"].holds
    assert not rep["A4_eq_AB3"].holds


def test_fourier_on_DZ2():
    Q = qt("DZ2")
    data = fourier_transform(Q)
    rep = check_fourier(data)
    assert rep.ok, rep.summary()
    assert data.F.rank() == 16
    F4 = data.F @ data.F @ data.F @ data.F
    FB = data.F @ data.B_D
    assert F4 == FB @ FB @ FB


def test_fourier_needs_factorizable():
    with pytest.raises(NotFactorizable):
        fourier_transform(qt("Z2"))
