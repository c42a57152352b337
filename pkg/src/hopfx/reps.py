"""Punctured-torus braid group representations, the SL2(Z)~ action on E^(1) and the quantum Fourier transform."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .braided_dual import IsoCheckFailed, build_braided_dual, is_factorizable
from .doubles import (
    EllipticDouble,
    HeisenbergDouble,
    PhiData,
    build_elliptic,
    build_heisenberg,
    build_Phi,
    universal_morphism,
)
from .hopf import ModuleData, regular_module
from .quasitriangular import QTStructure, dual_action_matrix
from .report import Report
from .tensorcore import AlgebraData, LegElement, LinMap, NotInvertible, solve_in_algebra

__all__ = [
    "BraidRep",
    "FourierData",
    "MCGAction",
    "ModuleAxiomFailed",
    "NoRibbon",
    "NotFactorizable",
    "build_braid_rep",
    "build_mcg_action",
    "check_mcg_relations",
    "check_presentation",
    "check_fourier",
    "fourier_transform",
    "matmul",
]


class ModuleAxiomFailed(AssertionError):
    pass


class NotFactorizable(ValueError):
    pass


class NoRibbon(ValueError):
    pass


def _flint_ok(*maps: LinMap) -> bool:
    try:
        import flint  # noqa: F401
    except ImportError:
        return False
    from gmpy2 import mpq

    for m in maps:
        for row in m.rows.values():
            for v in row.values():
                if not isinstance(v, (int, type(mpq(0)))):
                    return False
    return True


def _from_flint(M) -> LinMap:
    from gmpy2 import mpq

    n, m = M.nrows(), M.ncols()
    rows: dict = {}
    for i in range(n):
        row = {}
        for j in range(m):
            v = M[i, j]
            if v != 0:
                row[j] = mpq(int(v.p), int(v.q))
        if row:
            rows[i] = row
    return LinMap(n, m, rows)


def matmul(*maps: LinMap) -> LinMap:
    """Product of several maps; large rational products go through python-flint when present."""
    big = maps[0].dst_dim >= 256 and any(m.nnz() > 4 * m.dst_dim for m in maps)
    if big and _flint_ok(*maps):
        out = maps[0].to_flint()
        for m in maps[1:]:
            out = out * m.to_flint()
        return _from_flint(out)
    out = maps[0]
    for m in maps[1:]:
        out = out @ m
    return out


# ---------------------------------------------------------------------------
# operators on M (x) V^{(x)n}


def _local_operator(W: LegElement, reps: list[ModuleData]) -> LinMap:
    """sum c rho_0(w_0) (x) rho_1(w_1) (x) ... for W over as many legs as ``reps``."""
    dims = [r.dim for r in reps]
    size = 1
    for d in dims:
        size *= d
    total: dict = {}
    for key, c in W.items():
        K = reps[0].action[key[0]]
        for r, idx in zip(reps[1:], key[1:]):
            K = K.kron(r.action[idx])
        for i, row in K.rows.items():
            tgt = total.setdefault(i, {})
            for j, v in row.items():
                tgt[j] = tgt.get(j, 0) + c * v
    return LinMap(size, size, total)


def _pad(op: LinMap, left: int, right: int) -> LinMap:
    out = op
    if left > 1:
        out = LinMap.identity(left).kron(out)
    if right > 1:
        out = out.kron(LinMap.identity(right))
    return out


def _flip(m: int, v: int, n: int, i: int) -> LinMap:
    """Swap V-factors i and i+1 (1-based) of M (x) V^{(x)n}."""
    left = m * v ** (i - 1)
    right = v ** (n - i - 1)
    rows = {}
    for a in range(left):
        for x, y in itertools.product(range(v), repeat=2):
            for b in range(right):
                src = ((a * v + x) * v + y) * right + b
                dst = ((a * v + y) * v + x) * right + b
                rows[dst] = {src: 1}
    return LinMap(left * v * v * right, left * v * v * right, rows)


@dataclass(eq=False)
class BraidRep:
    n: int
    M: ModuleData
    V: ModuleData
    X: list[LinMap]
    Y: list[LinMap]
    sigma: list[LinMap]
    Q: QTStructure = field(repr=False)
    X_elem: LegElement = field(repr=False)
    Y_elem: LegElement = field(repr=False)

    @property
    def dim(self) -> int:
        return self.M.dim * self.V.dim**self.n


def build_braid_rep(
    Q: QTStructure,
    B: AlgebraData,
    n: int,
    M: ModuleData | None = None,
    V: ModuleData | None = None,
    X: LegElement | None = None,
    Y: LegElement | None = None,
    flip: bool = True,
) -> BraidRep:
    """X_1 -> X^{0,1}, Y_1 -> Y^{0,1}, sigma_i -> (i, i+1) R^{i,i+1} on M (x) V^{(x)n}.

    ``B`` is an elliptic or Heisenberg double (or any algebra with ``X`` and
    ``Y`` given).  X_{i+1} and Y_{i+1} are defined as sigma_i X_i sigma_i and
    sigma_i Y_i sigma_i.  ``flip=False`` drops the permutation from sigma_i,
    which is only useful as a deliberate corruption.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    M = M if M is not None else regular_module(B)
    V = V if V is not None else regular_module(Q.A)
    for mod, alg, label in ((M, B, "M"), (V, Q.A, "V")):
        rep = mod.check(alg)
        if not rep.ok:
            raise ModuleAxiomFailed(f"{label}: {rep.failures()}")
    X = X if X is not None else B.X
    Y = Y if Y is not None else B.Y
    m, v = M.dim, V.dim
    right = v ** (n - 1)
    X1 = _pad(_local_operator(X, [M, V]), 1, right)
    Y1 = _pad(_local_operator(Y, [M, V]), 1, right)
    Rop = _local_operator(Q.R, [V, V])
    sigma = []
    for i in range(1, n):
        s = _pad(Rop, m * v ** (i - 1), v ** (n - i - 1))
        if flip:
            s = _flip(m, v, n, i) @ s
        sigma.append(s)
    Xs, Ys = [X1], [Y1]
    for i in range(1, n):
        s = sigma[i - 1]
        Xs.append(matmul(s, Xs[-1], s))
        Ys.append(matmul(s, Ys[-1], s))
    return BraidRep(n, M, V, Xs, Ys, sigma, Q, X, Y)


def _shifted_element(Q: QTStructure, Z: LegElement, i: int, n: int) -> LegElement:
    """R^{i+1,i} Z^{swap(i,i+1)} R^{i,i+1}: the element whose image is sigma_i Z sigma_i."""
    legs = Z.legs
    order = list(range(n + 1))
    order[i], order[i + 1] = order[i + 1], order[i]
    return Q.R.embed([i + 1, i], legs) * Z.permute(order) * Q.R.embed([i, i + 1], legs)


def check_presentation(rep: BraidRep) -> Report:
    """Relations of the punctured-torus braid group as exact matrix identities."""
    n = rep.n
    out = Report()
    Xs, Ys, S = rep.X, rep.Y, rep.sigma
    for name, ops in (("X", Xs), ("Y", Ys)):
        with out.timed(f"{name}_commute") as s:
            for i, j in itertools.combinations(range(n), 2):
                if matmul(ops[i], ops[j]) != matmul(ops[j], ops[i]):
                    s.witness = (i + 1, j + 1)
                    break
    with out.timed("braid_relation") as s:
        for i in range(n - 2):
            if matmul(S[i], S[i + 1], S[i]) != matmul(S[i + 1], S[i], S[i + 1]):
                s.witness = (i + 1,)
                break
    with out.timed("far_commute") as s:
        for i, j in itertools.combinations(range(n - 1), 2):
            if j - i >= 2 and matmul(S[i], S[j]) != matmul(S[j], S[i]):
                s.witness = (i + 1, j + 1)
                break
    # X_{i+1} = sigma_i X_i sigma_i against the element R^{i+1,i} X_i^{swap} R^{i,i+1}
    reps_list = [rep.M] + [rep.V] * n
    for name, elem, ops in (("X", rep.X_elem, Xs), ("Y", rep.Y_elem, Ys)):
        with out.timed(f"{name}_shift") as s:
            legs = [elem.legs[0]] + [rep.Q.A] * n
            Z = elem.embed([0, 1], legs)
            for i in range(1, n):
                Z = _shifted_element(rep.Q, Z, i, n)
                if _local_operator(Z, reps_list) != ops[i]:
                    s.witness = (i + 1,)
                    break
    if n >= 2:
        with out.timed("cross_relation") as s:
            if matmul(Xs[0], Ys[1]) != matmul(Ys[1], Xs[0], S[0], S[0]):
                s.witness = (1, 2)
    return out


# ---------------------------------------------------------------------------
# SL2(Z)~ on E^(1)


@dataclass(eq=False)
class MCGAction:
    A: LinMap
    B: LinMap
    E: EllipticDouble = field(repr=False)
    Xinv: LegElement = field(repr=False)
    Yinv: LegElement = field(repr=False)

    @property
    def Z(self) -> LinMap:
        return self.A**4


def _apply_to_element(f: LinMap, Z: LegElement, target: AlgebraData) -> LegElement:
    return Z.apply_leg(0, f, target)


def build_mcg_action(Q: QTStructure, E: EllipticDouble | None = None, B_images=None) -> MCGAction:
    """A: X -> Y, Y -> Y X^-1 Y^-1 and B: X -> X, Y -> Y X^-1, each by the universal property.

    ``B_images`` overrides the pair (X_B, Y_B) defining B; used to check that a
    wrong action is rejected.
    """
    E = E if E is not None else build_elliptic(Q, 1)
    X, Y = E.X, E.Y
    Xi = X.inverse()
    Yi = Y.inverse()
    A = universal_morphism(Q, E.k, E, Y, Y * Xi * Yi, E=E)
    XB, YB = B_images(X, Y, Xi, Yi) if B_images is not None else (X, Y * Xi)
    B = universal_morphism(Q, E.k, E, XB, YB, E=E)
    return MCGAction(A, B, E, Xi, Yi)


def check_mcg_relations(act: MCGAction) -> Report:
    A, B, E = act.A, act.B, act.E
    n = E.dim
    rep = Report()
    with rep.timed("A_bijective") as s:
        s.witness = None if A.rank() == n else (A.rank(),)
    with rep.timed("B_bijective") as s:
        s.witness = None if B.rank() == n else (B.rank(),)
    with rep.timed("A_on_X") as s:
        s.witness = _apply_to_element(A, E.X, E).first_difference(E.Y)
    with rep.timed("B_on_Y") as s:
        s.witness = _apply_to_element(B, E.Y, E).first_difference(E.Y * act.Xinv)
    A2 = A @ A
    Z = A2 @ A2
    AB = A @ B
    with rep.timed("A4_eq_AB3") as s:
        s.witness = _first_entry_difference(Z, AB @ AB @ AB)
    with rep.timed("A2B_comm") as s:
        s.witness = _first_entry_difference(A2 @ B, B @ A2)
    with rep.timed("Z_central") as s:
        s.witness = _first_entry_difference(Z @ A, A @ Z) or _first_entry_difference(Z @ B, B @ Z)
    return rep


def _first_entry_difference(P: LinMap, R: LinMap):
    if P == R:
        return None
    for i in sorted(set(P.rows) | set(R.rows)):
        a, b = P.rows.get(i, {}), R.rows.get(i, {})
        if a != b:
            j = min(k for k in set(a) | set(b) if a.get(k, 0) != b.get(k, 0))
            return (i, j)
    return ()


# ---------------------------------------------------------------------------
# Fourier transform on D_H


@dataclass(eq=False)
class FourierData:
    F: LinMap
    B_D: LinMap
    Theta: LinMap
    Phi: PhiData
    theta_element: dict
    D: HeisenbergDouble = field(repr=False)
    E0: EllipticDouble = field(repr=False)
    E1: EllipticDouble = field(repr=False)


def _is_algebra_map(f: LinMap, src: AlgebraData, dst: AlgebraData):
    if f.apply(src.unit) != dst.unit:
        return ("unit",)
    cols = f.columns()
    for i, j in itertools.product(range(src.dim), repeat=2):
        if f.apply(src.mul_basis(i, j)) != dst.mul(cols[i], cols[j]):
            return (i, j)
    return None


def fourier_transform(Q: QTStructure, act: MCGAction | None = None) -> FourierData:
    """F = Phi Theta^-1 A Theta Phi^-1 on D_H, Theta = theta (x) theta from E^(0) to E^(1)."""
    if not is_factorizable(Q):
        raise NotFactorizable("the factorization map is not injective")
    if Q.ribbon is None:
        raise NoRibbon("a ribbon element is required to identify E^(0) with E^(1)")
    H = Q.H
    B0 = build_braided_dual(Q, 0)
    B1 = build_braided_dual(Q, 1)
    v = Q.ribbon
    theta = None
    for c in (v, solve_in_algebra(H.algebra, v)):
        f = dual_action_matrix(H, c, H.unit)
        if _is_algebra_map(f, B0.algebra, B1.algebra) is None:
            theta, elem = f, c
            break
    if theta is None:
        raise IsoCheckFailed("no ribbon shift from the k=0 to the k=1 braided dual")
    DH = build_heisenberg(Q, BD=B0)
    E0 = build_elliptic(Q, 0, BD=B0)
    E1 = act.E if act is not None else build_elliptic(Q, 1, BD=B1)
    act = act if act is not None else build_mcg_action(Q, E1)
    Theta = theta.kron(theta)
    w = _is_algebra_map(Theta, E0, E1)
    if w is not None:
        raise IsoCheckFailed(f"Theta is not multiplicative at {w}")
    Phi = build_Phi(Q, E=E0, DH=DH)
    if Phi.inverse is None:
        raise NotInvertible("Phi is not bijective")
    Ti = Theta.inverse()
    F = Phi.map @ Ti @ act.A @ Theta @ Phi.inverse
    BD_ = Phi.map @ Ti @ act.B @ Theta @ Phi.inverse
    return FourierData(F, BD_, Theta, Phi, elem, DH, E0, E1)


def check_fourier(data: FourierData) -> Report:
    rep = Report()
    D = data.D
    F, B = data.F, data.B_D
    with rep.timed("Theta_algebra_map") as s:
        s.witness = _is_algebra_map(data.Theta, data.E0, data.E1)
    with rep.timed("Phi_algebra_map") as s:
        s.witness = _is_algebra_map(data.Phi.map, data.E0, D)
    with rep.timed("Phi_bijective") as s:
        s.witness = None if data.Phi.inverse is not None else (data.Phi.rank,)
    with rep.timed("F_bijective") as s:
        s.witness = None if F.rank() == D.dim else (F.rank(),)
    with rep.timed("F_algebra_map") as s:
        s.witness = _is_algebra_map(F, D, D)
    with rep.timed("B_D_algebra_map") as s:
        s.witness = _is_algebra_map(B, D, D)
    F2 = F @ F
    with rep.timed("F4_eq_FB3") as s:
        FB = F @ B
        s.witness = _first_entry_difference(F2 @ F2, FB @ FB @ FB)
    with rep.timed("F2B_comm") as s:
        s.witness = _first_entry_difference(F2 @ B, B @ F2)
    return rep
