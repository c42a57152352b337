"""The k-twisted braided dual, its canonical element, shift isomorphisms and the factorization map."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .hopf import InternalConventionError
from .quasitriangular import (
    QTStructure,
    compute_u_nu,
    dual_action_matrix,
    dual_product_matrix,
    sandwich_map,
    twist_element,
)
from .report import Report
from .tensorcore import AlgebraData, LegElement, LinMap, NotInvertible, solve_in_algebra

__all__ = [
    "BraidedDual",
    "IsoCheckFailed",
    "build_braided_dual",
    "canonical_X",
    "check_k_reflection",
    "factorization_map",
    "is_factorizable",
    "reflection_witness",
    "shift_iso",
    "untwisted_reflection_witness",
]


class IsoCheckFailed(AssertionError):
    pass


@dataclass(eq=False)
class BraidedDual:
    Q: QTStructure
    k: int
    algebra: AlgebraData

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def action(self, x: dict, y: dict) -> LinMap:
        """(x (x) y) |> f = f(S^-1(x) . y)."""
        return dual_action_matrix(self.Q.H, x, y)

    @property
    def X(self) -> LegElement:
        return canonical_X(self)


def build_braided_dual(Q: QTStructure, k: int = 0, check: bool = True) -> BraidedDual:
    """x . y = m(F_k |> (y (x) x)) on the dual space, F_k from ``twist_element``.

    The opposite order of the factors makes the canonical element satisfy
    X^{0,12} = D^k (R^{12})^-1 X^{0,2} R^{12} X^{0,1} with the dual product
    (fg)(u) = f(u1) g(u2).
    """
    H = Q.H
    d = H.dim
    F = twist_element(Q, k)
    cols = (dual_product_matrix(H) @ sandwich_map(H, F).transpose()).columns()
    mult = {divmod(pq, d)[::-1]: col for pq, col in enumerate(cols) if col}
    alg = AlgebraData(d, mult, dict(H.counit), H.field, name=f"{H.name}~_{k}")
    if check:
        w = alg.check_unit()
        if w is not None:
            raise InternalConventionError(f"counit is not the unit of the braided dual: {w}")
        w = alg.check_associativity()
        if w is not None:
            raise InternalConventionError(f"braided dual k={k} not associative at {w}")
    return BraidedDual(Q, k, alg)


def canonical_X(BD: BraidedDual | AlgebraData, H_alg: AlgebraData | None = None) -> LegElement:
    """X = sum_i e^i (x) e_i."""
    if isinstance(BD, BraidedDual):
        alg, H_alg = BD.algebra, BD.Q.A
    else:
        alg = BD
    return LegElement([alg, H_alg], {(i, i): 1 for i in range(H_alg.dim)})


def _legs(B: AlgebraData, Q: QTStructure, n: int) -> list[AlgebraData]:
    return [B] + [Q.A] * n


def reflection_witness(Q: QTStructure, k: int, XB: LegElement):
    """First mismatch of X^{0,12} = D^k (R^{12})^-1 X^{0,2} R^{12} X^{0,1}, else None."""
    B = XB.legs[0]
    L = _legs(B, Q, 2)
    lhs = XB.split_leg(1, Q.H.delta_basis, [Q.A, Q.A])
    R12 = Q.R.embed([1, 2], L)
    R12i = Q.Rinv.embed([1, 2], L)
    X01 = XB.embed([0, 1], L)
    X02 = XB.embed([0, 2], L)
    rhs = R12i * X02 * R12 * X01
    if k:
        Dk = Q.D if k > 0 else Q.D.inverse()
        Dk = Dk.embed([1, 2], L)
        for _ in range(abs(k)):
            rhs = Dk * rhs
    return lhs.first_difference(rhs)


def untwisted_reflection_witness(Q: QTStructure, XB: LegElement):
    """R^{21} X^{02} R^{12} X^{01} = X^{01} R^{21} X^{02} R^{12}."""
    B = XB.legs[0]
    L = _legs(B, Q, 2)
    R12 = Q.R.embed([1, 2], L)
    R21 = Q.R.embed([2, 1], L)
    X01 = XB.embed([0, 1], L)
    X02 = XB.embed([0, 2], L)
    return (R21 * X02 * R12 * X01).first_difference(X01 * R21 * X02 * R12)


def check_k_reflection(Q: QTStructure, k: int, BD: BraidedDual | None = None, X: LegElement | None = None) -> Report:
    """Twisted reflection identity for the canonical element, plus the plain reflection equation."""
    if X is None:
        BD = BD or build_braided_dual(Q, k)
        X = canonical_X(BD)
    rep = Report()
    with rep.timed(f"k_reflection[k={k}]") as s:
        s.witness = reflection_witness(Q, k, X)
    with rep.timed("reflection_equation") as s:
        s.witness = untwisted_reflection_witness(Q, X)
    return rep


# ---------------------------------------------------------------------------
# shift isomorphisms


@dataclass(eq=False)
class ShiftIso:
    map: LinMap
    source_k: int
    target_k: int
    element: dict


def _is_algebra_map(f: LinMap, src: AlgebraData, dst: AlgebraData):
    """First basis pair (i, j) where f(e_i e_j) != f(e_i) f(e_j), or ('unit',)."""
    if f.apply(src.unit) != dst.unit:
        return ("unit",)
    cols = f.columns()
    for i, j in itertools.product(range(src.dim), repeat=2):
        if f.apply(src.mul_basis(i, j)) != dst.mul(cols[i], cols[j]):
            return (i, j)
    return None


def shift_iso(Q: QTStructure, k: int, step: int = 2, duals: dict | None = None) -> ShiftIso:
    """Algebra isomorphism f -> (c (x) 1) |> f between twisted duals k apart by ``step``.

    ``c`` is nu for step 2 and the ribbon element for step 1.  Both
    directions (k -> k - step and k -> k + step) and both c and c^-1 are tried;
    the first verified combination is returned with its direction recorded.
    """
    H = Q.H
    if step == 2:
        c = compute_u_nu(Q)[1]
    elif step == 1:
        if Q.ribbon is None:
            raise NotInvertible("step 1 needs a ribbon element")
        c = Q.ribbon
    else:
        raise ValueError("step must be 1 or 2")
    cinv = solve_in_algebra(H.algebra, c)
    duals = duals if duals is not None else {}

    def get(kk):
        if kk not in duals:
            duals[kk] = build_braided_dual(Q, kk)
        return duals[kk]

    src = get(k)
    for target in (k - step, k + step):
        dst = get(target)
        for elem in (c, cinv):
            f = dual_action_matrix(H, elem, H.unit)
            if _is_algebra_map(f, src.algebra, dst.algebra) is None:
                return ShiftIso(f, k, target, elem)
    raise IsoCheckFailed(f"no shift isomorphism from k={k} with step {step}")


# ---------------------------------------------------------------------------
# factorization


def factorization_map(Q: QTStructure) -> LinMap:
    """phi: f -> (f (x) id)(R^{21} R^{12}) from the dual to H."""
    d = Q.dim
    rows: dict = {}
    for (a, b), c in Q.D.items():
        rows.setdefault(b, {})[a] = rows.get(b, {}).get(a, 0) + c
    return LinMap(d, d, rows)


def is_factorizable(Q: QTStructure) -> bool:
    return factorization_map(Q).rank() == Q.dim


def factorization_image(Q: QTStructure) -> list[dict]:
    """Basis (column echelon) of I_H = im(phi)."""
    phi = factorization_map(Q)
    from .tensorcore import _row_echelon

    rows, _ = _row_echelon(phi.transpose().rows.values())
    return rows
