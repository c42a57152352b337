"""The element T, the elliptic doubles E^(k), the Heisenberg double and the map between them."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .braided_dual import BraidedDual, build_braided_dual, factorization_map, reflection_witness
from .hopf import InternalConventionError
from .quasitriangular import QTStructure, build_H2coop, dual_action_matrix, h2coop_delta, sandwich_map
from .report import Report
from .tensorcore import AlgebraData, LegElement, LinMap

__all__ = [
    "CoidealCheckFailed",
    "EllipticDouble",
    "HeisenbergDouble",
    "HomomorphismCheckFailed",
    "PhiData",
    "PreconditionFailed",
    "build_Phi",
    "build_T",
    "build_elliptic",
    "build_heisenberg",
    "check_T_hexagons",
    "check_associativity_budget",
    "check_elliptic_relation",
    "elliptic_witness",
    "image_rank",
    "leg_component",
    "pair_action",
    "T_factors",
    "universal_morphism",
]

# full associativity / multiplicativity sweeps are run up to this algebra dimension
EXHAUSTIVE_DIM = 16


class PreconditionFailed(AssertionError):
    def __init__(self, axiom: str, witness=None):
        super().__init__(f"{axiom} fails at {witness}")
        self.axiom = axiom
        self.witness = witness


class HomomorphismCheckFailed(AssertionError):
    pass


class CoidealCheckFailed(AssertionError):
    pass


# ---------------------------------------------------------------------------
# T


def T_factors(Q: QTStructure) -> list[LegElement]:
    """(R^{32})^-1, (R^{31})^-1, (R^{42})^-1, R^{14} as four-leg elements, in product order."""
    return [
        Q.r(2, 1, 4, inverse=True),
        Q.r(2, 0, 4, inverse=True),
        Q.r(3, 1, 4, inverse=True),
        Q.r(0, 3, 4),
    ]


def build_T(Q: QTStructure) -> LegElement:
    T = LegElement.one(Q.legs(4))
    for f in T_factors(Q):
        T = T * f
    return T


def _as_pair_element(Q: QTStructure, K_alg: AlgebraData, W4: LegElement) -> LegElement:
    d = Q.dim
    return LegElement([K_alg, K_alg], {(a * d + b, c * d + e): v for (a, b, c, e), v in W4.items()})


def check_T_hexagons(Q: QTStructure, T: LegElement | None = None, K=None) -> Report:
    """(id (x) Delta)T = T^{13} T^{12} and (Delta (x) id)T = T^{13} T^{23} over H^[2],coop."""
    K = K if K is not None else build_H2coop(Q, check=False)
    T = T if T is not None else build_T(Q)
    A = K.algebra
    T2 = _as_pair_element(Q, A, T)
    L3 = [A, A, A]
    rep = Report()
    with rep.timed("T_hexagon_left") as s:
        lhs = T2.split_leg(1, K.delta_basis, [A, A])
        s.witness = lhs.first_difference(T2.embed([0, 2], L3) * T2.embed([0, 1], L3))
    with rep.timed("T_hexagon_right") as s:
        lhs = T2.split_leg(0, K.delta_basis, [A, A])
        s.witness = lhs.first_difference(T2.embed([0, 2], L3) * T2.embed([1, 2], L3))
    return rep


def pair_action(Q: QTStructure, factors: list[LegElement]) -> LinMap:
    """Action on H^o (x) H^o of the product of four-leg elements (legs 0,1 act on the first slot)."""
    M = None
    for W in factors:
        A = sandwich_map(Q.H, W).transpose()
        M = A if M is None else M @ A
    return M


# ---------------------------------------------------------------------------
# helpers on canonical elements


def leg_component(XB: LegElement, i: int) -> dict:
    """(id (x) e^i)(X_B): the B-coefficient of the basis vector e_i in the H leg."""
    out: dict = {}
    for (b, h), c in XB.items():
        if h == i:
            out[b] = out.get(b, 0) + c
    return {k: v for k, v in out.items() if v}


def elliptic_witness(Q: QTStructure, X: LegElement, Y: LegElement):
    """First mismatch of X^{01} R^{21} Y^{02} = R^{21} Y^{02} R^{12} X^{01} R^{21}, else None."""
    B = X.legs[0]
    L = [B, Q.A, Q.A]
    R12 = Q.R.embed([1, 2], L)
    R21 = Q.R.embed([2, 1], L)
    X01 = X.embed([0, 1], L)
    Y02 = Y.embed([0, 2], L)
    return (X01 * R21 * Y02).first_difference(R21 * Y02 * R12 * X01 * R21)


def check_associativity_budget(alg: AlgebraData, samples: int = 10_000, seed: int = 0, generators=None):
    """Exhaustive associativity up to EXHAUSTIVE_DIM, else generator triples plus a seeded sample."""
    n = alg.dim
    if n <= EXHAUSTIVE_DIM:
        return alg.check_associativity()
    if generators is not None:
        w = alg.check_associativity(itertools.product(generators, repeat=3))
        if w is not None:
            return w
    rng = random.Random(seed)
    triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples)]
    return alg.check_associativity(triples)


# ---------------------------------------------------------------------------
# elliptic double


class EllipticDouble(AlgebraData):
    """E^(k) on the basis e^i (x) e^j (index i * d + j) with (f (x) g) = (f (x) 1)(1 (x) g).

    Cross relation (1 (x) g)(f (x) 1) = T |> (f (x) g); products are computed
    lazily from the T action and the product of the twisted dual.
    """

    def __init__(self, Q: QTStructure, BD: BraidedDual, cross: LinMap):
        d = BD.dim
        self.Q = Q
        self.k = BD.k
        self.braided = BD
        self.d = d
        self._cross = cross.columns()
        eps = BD.algebra.unit
        unit = {i * d + j: a * b for i, a in eps.items() for j, b in eps.items()}
        super().__init__(d * d, None, unit, BD.algebra.field, name=f"E^({BD.k})")

    def _compute_product(self, p: int, q: int) -> dict:
        d = self.d
        A = self.braided.algebra
        i, j = divmod(p, d)
        i2, j2 = divmod(q, d)
        out: dict = {}
        for ab, c in self._cross[i2 * d + j].items():
            a, b = divmod(ab, d)
            left = A.mul_basis(i, a)
            right = A.mul_basis(b, j2)
            for s, x in left.items():
                for t, y in right.items():
                    key = s * d + t
                    out[key] = out.get(key, 0) + c * x * y
        return out

    def first(self, f: dict) -> dict:
        """f (x) 1."""
        eps = self.braided.algebra.unit
        return {i * self.d + j: a * b for i, a in f.items() for j, b in eps.items()}

    def second(self, g: dict) -> dict:
        """1 (x) g."""
        eps = self.braided.algebra.unit
        return {i * self.d + j: a * b for i, a in eps.items() for j, b in g.items()}

    def generators(self) -> list[int]:
        """Basis indices of e^i (x) 1 and 1 (x) e^j when the unit of the dual is a basis vector."""
        eps = self.braided.algebra.unit
        if len(eps) != 1:
            return []
        (u,) = eps
        d = self.d
        return sorted({i * d + u for i in range(d)} | {u * d + j for j in range(d)})

    @property
    def X(self) -> LegElement:
        d = self.d
        eps = self.braided.algebra.unit
        return LegElement([self, self.Q.A], {(i * d + j, i): c for i in range(d) for j, c in eps.items()})

    @property
    def Y(self) -> LegElement:
        d = self.d
        eps = self.braided.algebra.unit
        return LegElement([self, self.Q.A], {(j * d + i, i): c for i in range(d) for j, c in eps.items()})


def build_elliptic(
    Q: QTStructure,
    k: int = 0,
    BD: BraidedDual | None = None,
    factors: list[LegElement] | None = None,
    check: bool = True,
    samples: int = 10_000,
    seed: int = 0,
) -> EllipticDouble:
    BD = BD if BD is not None else build_braided_dual(Q, k)
    cross = pair_action(Q, factors if factors is not None else T_factors(Q))
    E = EllipticDouble(Q, BD, cross)
    if check:
        w = check_associativity_budget(E, samples, seed, E.generators())
        if w is not None:
            raise InternalConventionError(f"E^({k}) is not associative at {w}")
    return E


def check_elliptic_relation(E: EllipticDouble, Q: QTStructure | None = None) -> Report:
    Q = Q or E.Q
    rep = Report()
    with rep.timed(f"elliptic_relation[k={E.k}]") as s:
        s.witness = elliptic_witness(Q, E.X, E.Y)
    return rep


# ---------------------------------------------------------------------------
# universal property


def _check_multiplicative(f: LinMap, src: AlgebraData, dst: AlgebraData, pairs):
    if f.apply(src.unit) != dst.unit:
        return ("unit",)
    cols = f.columns()
    for i, j in pairs:
        if f.apply(src.mul_basis(i, j)) != dst.mul(cols[i], cols[j]):
            return (i, j)
    return None


def _source_pairs(E: EllipticDouble):
    if E.dim <= EXHAUSTIVE_DIM or not E.generators():
        return itertools.product(range(E.dim), repeat=2)
    # f (x) g = (f (x) 1)(1 (x) g) by construction, so the defining relations suffice
    return itertools.product(E.generators(), repeat=2)


def universal_morphism(
    Q: QTStructure,
    k: int,
    B: AlgebraData,
    X_B: LegElement,
    Y_B: LegElement,
    E: EllipticDouble | None = None,
    check_pre: bool = True,
) -> LinMap:
    """The algebra map E^(k) -> B with e^i (x) e^j -> [(id (x) e^i) X_B] [(id (x) e^j) Y_B]."""
    if check_pre:
        for name, el in (("X", X_B), ("Y", Y_B)):
            w = reflection_witness(Q, k, el)
            if w is not None:
                raise PreconditionFailed(f"k_reflection[{name}]", w)
        w = elliptic_witness(Q, X_B, Y_B)
        if w is not None:
            raise PreconditionFailed("elliptic_relation", w)
    E = E if E is not None else build_elliptic(Q, k, check=False)
    d = Q.dim
    xs = [leg_component(X_B, i) for i in range(d)]
    ys = [leg_component(Y_B, j) for j in range(d)]
    cols = [B.mul(xs[i], ys[j]) for i in range(d) for j in range(d)]
    f = LinMap.from_columns(B.dim, cols)
    w = _check_multiplicative(f, E, B, _source_pairs(E))
    if w is not None:
        raise HomomorphismCheckFailed(f"universal morphism not multiplicative at {w}")
    return f


# ---------------------------------------------------------------------------
# Heisenberg double


class HeisenbergDouble(AlgebraData):
    """Smash product of the braided dual (k = 0) with the coideal subalgebra H (x) 1.

    Basis e^i (x) e_x with index i * d + x; (f (x) 1)(1 (x) h) = f (x) h and
    (1 (x) h)(f (x) 1) = sum (h_(2) |> f) (x) h_(1), the coproduct being that
    of H^[2],coop, whose first tensor factor stays in H (x) 1.
    """

    def __init__(self, Q: QTStructure, BD: BraidedDual, cross: dict):
        d = Q.dim
        self.Q = Q
        self.braided = BD
        self.d = d
        self._cross = cross
        eps = BD.algebra.unit
        unit = {i * d + x: a * b for i, a in eps.items() for x, b in Q.H.unit.items()}
        super().__init__(d * d, None, unit, BD.algebra.field, name=f"D_{Q.H.name}")

    def _compute_product(self, p: int, q: int) -> dict:
        d = self.d
        A = self.braided.algebra
        H = self.Q.A
        i, x = divmod(p, d)
        i2, x2 = divmod(q, d)
        out: dict = {}
        for (f, a), c in self._cross[x].get(i2, {}).items():
            for s, u in A.mul_basis(i, f).items():
                for t, v in H.mul_basis(a, x2).items():
                    key = s * d + t
                    out[key] = out.get(key, 0) + c * u * v
        return out

    def first(self, f: dict) -> dict:
        return {i * self.d + x: a * b for i, a in f.items() for x, b in self.Q.H.unit.items()}

    def second(self, h: dict) -> dict:
        eps = self.braided.algebra.unit
        return {i * self.d + x: a * b for i, a in eps.items() for x, b in h.items()}

    @property
    def X(self) -> LegElement:
        """X_D = sum (e^i (x) 1) (x) e_i."""
        d = self.d
        return LegElement([self, self.Q.A], {(i * d + u, i): c for i in range(d) for u, c in self.Q.H.unit.items()})

    @property
    def Y(self) -> LegElement:
        """Y_D = sum (1 (x) D_1) (x) D_2, the double braiding in D_H (x) H."""
        d = self.d
        eps = self.braided.algebra.unit
        out: dict = {}
        for (a, b), c in self.Q.D.items():
            for j, e in eps.items():
                key = (j * d + a, b)
                out[key] = out.get(key, 0) + c * e
        return LegElement([self, self.Q.A], out)


def _split_H1(vec: dict, d: int, unit: dict):
    """Write a vector of H (x) H as sum c_x e_x (x) 1, or return None if it is not of that form."""
    rows: dict = {}
    for ab, c in vec.items():
        a, b = divmod(ab, d)
        rows.setdefault(a, {})[b] = c
    u0 = next(iter(unit))
    out = {}
    for a, row in rows.items():
        lam = row.get(u0, 0) / unit[u0]
        if {b: lam * u for b, u in unit.items() if lam * u} != row:
            return None
        if lam:
            out[a] = lam
    return out


def build_heisenberg(Q: QTStructure, BD: BraidedDual | None = None, check: bool = True, samples: int = 10_000, seed: int = 0) -> HeisenbergDouble:
    H = Q.H
    d = H.dim
    BD = BD if BD is not None else build_braided_dual(Q, 0)
    # cross[x][f] = {(f', a): c}: (1 (x) e_x)(e^f (x) 1) = sum c e^{f'} (x) e_a
    cross: dict = {}
    actions: dict = {}
    for x in range(d):
        delta = h2coop_delta(Q, {x: 1}, H.unit)
        by_second: dict = {}
        for (p, q), c in delta.items():
            by_second.setdefault(q, {})[p] = c
        table: dict = {}
        for q, first in by_second.items():
            h1 = _split_H1(first, d, H.unit)
            if h1 is None:
                raise CoidealCheckFailed(f"Delta(e_{x} (x) 1) leaves H (x) 1 in its first factor")
            if q not in actions:
                a, b = divmod(q, d)
                actions[q] = dual_action_matrix(H, {a: 1}, {b: 1}).columns()
            cols = actions[q]
            for f in range(d):
                for f2, v in cols[f].items():
                    row = table.setdefault(f, {})
                    for a, lam in h1.items():
                        row[f2, a] = row.get((f2, a), 0) + v * lam
        cross[x] = {f: {k: v for k, v in row.items() if v} for f, row in table.items()}
    DH = HeisenbergDouble(Q, BD, cross)
    if check:
        w = DH.check_unit()
        if w is not None:
            raise InternalConventionError(f"Heisenberg double unit fails at {w}")
        w = check_associativity_budget(DH, samples, seed)
        if w is not None:
            raise InternalConventionError(f"Heisenberg double is not associative at {w}")
    return DH


# ---------------------------------------------------------------------------
# Phi


@dataclass(eq=False)
class PhiData:
    map: LinMap
    rank: int
    phi_rank: int
    inverse: LinMap | None


def image_rank(Phi: PhiData | LinMap) -> int:
    return Phi.rank if isinstance(Phi, PhiData) else Phi.rank()


def build_Phi(Q: QTStructure, E: EllipticDouble | None = None, DH: HeisenbergDouble | None = None) -> PhiData:
    """Phi: E^(0) -> D_H from the pair (X_D, Y_D); rank(Phi) = d rank(phi) is asserted."""
    DH = DH if DH is not None else build_heisenberg(Q)
    E = E if E is not None else build_elliptic(Q, 0, BD=DH.braided)
    M = universal_morphism(Q, 0, DH, DH.X, DH.Y, E=E)
    r = M.rank()
    pr = factorization_map(Q).rank()
    if r != Q.dim * pr:
        raise InternalConventionError(f"rank(Phi) = {r} but d * rank(phi) = {Q.dim * pr}")
    inv = M.inverse() if r == E.dim else None
    return PhiData(M, r, pr, inv)
