"""The ten acceptance criteria, each with its time budget and exact equality throughout.

Every criterion prints one ``criterion N: PASS|FAIL`` line; the lines are
collected again in the terminal summary.
"""

import itertools
import time
from contextlib import contextmanager

import pytest

from hopfx.braided_dual import build_braided_dual, canonical_X, check_k_reflection
from hopfx.doubles import (
    T_factors,
    build_Phi,
    build_elliptic,
    build_heisenberg,
    check_T_hexagons,
    check_associativity_budget,
    check_elliptic_relation,
    elliptic_witness,
)
from hopfx.hopf import (
    HopfData,
    cyclic_group,
    example_drinfeld_double,
    example_group_algebra,
    example_sweedler,
    symmetric_group,
    trivial_R,
    validate_hopf,
)
from hopfx.quasitriangular import QTStructure, find_ribbon, validate_qt
from hopfx.reps import (
    NotFactorizable,
    build_braid_rep,
    build_mcg_action,
    check_fourier,
    check_mcg_relations,
    check_presentation,
    fourier_transform,
)
from hopfx.tensorcore import LegElement, LinMap

RESULTS: dict[int, str] = {}


@contextmanager
def criterion(number: int, title: str, budget: float):
    t0 = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - t0
        assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget:.0f}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - t0
        line = f"criterion {number}: {status}  {title}  ({elapsed:.1f}s / {budget:.0f}s)"
        RESULTS[number] = line
        print(line)


def fresh_fixtures() -> dict[str, QTStructure]:
    G = example_group_algebra(cyclic_group(2))
    out = {"Q[Z2]": QTStructure.build(G, trivial_R(G))}
    for lam in (0, 1):
        H, R = example_sweedler(lam)
        out[f"H4(lambda={lam})"] = QTStructure.build(H, R)
    H, R = example_drinfeld_double(cyclic_group(2))
    out["D(Z2)"] = QTStructure.build(H, R)
    return out


@pytest.fixture(scope="module")
def fixtures():
    return fresh_fixtures()


def failing(report) -> set[str]:
    return {c.name for c in report.failures()}


def test_criterion_01_fixture_validation():
    with criterion(1, "fixtures pass validate_hopf and validate_qt", 5):
        for name, Q in fresh_fixtures().items():
            rep = validate_hopf(Q.H)
            rep.extend(validate_qt(Q))
            assert rep.ok, f"{name}: {rep.failures()}"
            assert "yang_baxter" in rep and "antipode_R_identity" in rep


def test_criterion_02_k_reflection(fixtures):
    with criterion(2, "k-reflection for k = 0, 1, 2 and the reflection equation", 10):
        for name, Q in fixtures.items():
            for k in (0, 1, 2):
                rep = check_k_reflection(Q, k)
                assert rep[f"k_reflection[k={k}]"].holds, (name, k)
                assert rep["reflection_equation"].holds, (name, k)


def test_criterion_03_T_hexagons(fixtures):
    with criterion(3, "T hexagons hold; each single inverted factor is detected", 10):
        for name, Q in fixtures.items():
            assert check_T_hexagons(Q).ok, name
        Q = fixtures["H4(lambda=1)"]
        for drop in range(3):
            factors = T_factors(Q)
            factors[drop] = factors[drop].inverse()
            T = LegElement.one(Q.legs(4))
            for f in factors:
                T = T * f
            assert failing(check_T_hexagons(Q, T=T)) == {"T_hexagon_left", "T_hexagon_right"}, drop


def test_criterion_04_elliptic_double(fixtures):
    with criterion(4, "E^(0), E^(1) exhaustively associative, elliptic relation exact", 30):
        for name, Q in fixtures.items():
            for k in (0, 1):
                E = build_elliptic(Q, k, check=False)
                triples = itertools.product(range(E.dim), repeat=3)
                assert E.check_associativity(triples) is None, (name, k)
                assert E.check_unit() is None
                assert check_elliptic_relation(E).ok, (name, k)


PHI_RANKS = {"Q[Z2]": 2, "H4(lambda=0)": 4, "H4(lambda=1)": 4, "D(Z2)": 16}


def test_criterion_05_heisenberg_double(fixtures):
    with criterion(5, "Heisenberg double: reflection and elliptic relation for (X_D, Y_D), Phi ranks (2, 4, 4, 16)", 30):
        for name, Q in fixtures.items():
            DH = build_heisenberg(Q)  # raises CoidealCheckFailed if H (x) 1 is not a coideal
            assert DH.check_associativity(itertools.product(range(DH.dim), repeat=3)) is None
            assert check_k_reflection(Q, 0, X=DH.X)["k_reflection[k=0]"].holds, name
            assert elliptic_witness(Q, DH.X, DH.Y) is None, name
            P = build_Phi(Q, DH=DH)
            assert P.rank == PHI_RANKS[name], name
            assert P.rank == Q.dim * P.phi_rank
            assert (P.inverse is not None) == (name == "D(Z2)")


def test_criterion_06_braid_representations(fixtures):
    with criterion(6, "braid group relations for n = 2, 3 with regular modules", 120):
        for name, Q in fixtures.items():
            E = build_elliptic(Q, 0)
            for n in (2, 3):
                br = build_braid_rep(Q, E, n)
                rep = check_presentation(br)
                assert rep.ok, (name, n, rep.failures())
        assert br.dim == 16 * 4**3


def test_criterion_07_mapping_class_group(fixtures):
    with criterion(7, "A, B automorphisms of E^(1); A^4 = (AB)^3, A^2 B = B A^2, Z central", 120):
        for name, Q in fixtures.items():
            act = build_mcg_action(Q)
            rep = check_mcg_relations(act)
            assert rep.ok, (name, rep.failures())
            E = act.E
            for M in (act.A, act.B):
                cols = M.columns()
                assert M.apply(E.unit) == E.unit
                for p, q in itertools.product(range(E.dim), repeat=2):
                    assert M.apply(E.mul_basis(p, q)) == E.mul(cols[p], cols[q])


def test_criterion_08_fourier(fixtures):
    with criterion(8, "Fourier transform on D_{D(Z2)}; NotFactorizable on Q[Z2]", 60):
        Q = fixtures["D(Z2)"]
        Q.ribbon = find_ribbon(Q)
        data = fourier_transform(Q)
        rep = check_fourier(data)
        assert rep.ok, rep.failures()
        for entry in ("Theta_algebra_map", "Phi_algebra_map", "F_algebra_map", "F4_eq_FB3", "F2B_comm"):
            assert rep[entry].holds
        with pytest.raises(NotFactorizable):
            fourier_transform(fixtures["Q[Z2]"])


@pytest.mark.slow
def test_criterion_09_DS3_stress():
    with criterion(9, "E^(0) of D(S3), dim 1296: 10^4 sampled triples and the elliptic relation", 300):
        H, R = example_drinfeld_double(symmetric_group(3))
        Q = QTStructure.build(H, R)
        E = build_elliptic(Q, 0, check=False)
        assert E.dim == 1296
        assert check_associativity_budget(E, samples=10_000, seed=0) is None
        assert check_elliptic_relation(E).ok


def test_criterion_10_mutation_suite(fixtures):
    with criterion(10, "six deliberate corruptions each caught by the named check", 60):
        H4 = fixtures["H4(lambda=1)"]
        DZ2 = fixtures["D(Z2)"]
        H = H4.H

        # antipode: S(x) = x instead of -gx
        rows = dict(H.antipode.rows)
        rows[2] = {2: 1}
        rows.pop(3, None)
        rows[3] = {3: -1}
        bad = HopfData(H.algebra, H.comult, H.counit, LinMap(4, 4, rows))
        assert failing(validate_hopf(bad)) == {"antipode_left", "antipode_right"}

        # R-sign: flip the gx (x) x coefficient
        data = dict(H4.R.data)
        data[3, 2] = -data[3, 2]
        rep = validate_qt(QTStructure.build(H, LegElement(H4.R.legs, data)))
        assert {"hexagon_left", "hexagon_right"} <= failing(rep)

        # T-inverse: R^{32} in place of its inverse
        factors = T_factors(H4)
        factors[0] = factors[0].inverse()
        T = LegElement.one(H4.legs(4))
        for f in factors:
            T = T * f
        assert failing(check_T_hexagons(H4, T=T)) == {"T_hexagon_left", "T_hexagon_right"}

        # sigma without the flip
        E0 = build_elliptic(H4, 0)
        rep = check_presentation(build_braid_rep(H4, E0, 2, flip=False))
        assert "X_shift" in failing(rep) and "Y_shift" in failing(rep)
        assert failing(rep) == {"X_commute", "Y_commute", "X_shift", "Y_shift", "cross_relation"}

        # B acting by Y -> X^-1 Y
        act = build_mcg_action(H4, B_images=lambda X, Y, Xi, Yi: (X, Xi * Y))
        assert failing(check_mcg_relations(act)) == {"B_on_Y", "A4_eq_AB3", "A2B_comm", "Z_central"}

        # k-mismatch: the k = 0 product judged against the k = 1 identity
        X0 = canonical_X(build_braided_dual(DZ2, 0))
        assert failing(check_k_reflection(DZ2, 1, X=X0)) == {"k_reflection[k=1]"}
