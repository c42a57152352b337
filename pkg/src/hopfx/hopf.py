"""Finite-dimensional Hopf algebras by structure constants.

A :class:`HopfData` stores the product as an :class:`AlgebraData`, the
coproduct as ``comult[i] = {(j, k): c}`` (so ``Delta(e_i) = sum c e_j (x) e_k``),
the counit as a covector and the antipode as a :class:`LinMap`.  The inverse
antipode is computed at construction.

The fixture generators at the bottom build the desk-scale examples used
throughout: group algebras, Sweedler's four-dimensional algebra with its
one-parameter family of R-matrices, and Drinfeld doubles of finite groups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .exactfield import QQ, Field, mpq
from .report import Report
from .tensorcore import AlgebraData, LegElement, LinMap, NotInvertible, linmap_of_left_mult

__all__ = [
    "HopfData",
    "InternalConventionError",
    "ModuleData",
    "NotAGroup",
    "cyclic_group",
    "dual_hopf",
    "example_drinfeld_double",
    "example_group_algebra",
    "example_sweedler",
    "regular_module",
    "symmetric_group",
    "trivial_R",
    "validate_hopf",
]


class NotAGroup(ValueError):
    pass


class InternalConventionError(AssertionError):
    """A construction produced data that fails an identity it must satisfy."""


@dataclass(eq=False)
class HopfData:
    algebra: AlgebraData
    comult: dict[int, dict[tuple[int, int], object]]
    counit: dict[int, object]
    antipode: LinMap
    name: str = ""
    antipode_inv: LinMap = field(init=False)

    def __post_init__(self):
        self.comult = {i: {k: v for k, v in c.items() if v} for i, c in self.comult.items()}
        self.counit = {i: v for i, v in self.counit.items() if v}
        try:
            self.antipode_inv = self.antipode.inverse()
        except NotInvertible:
            raise NotInvertible(f"antipode of {self.name or 'H'} is singular") from None

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def unit(self) -> dict:
        return self.algebra.unit

    def mul(self, x: dict, y: dict) -> dict:
        return self.algebra.mul(x, y)

    def delta(self, x: dict) -> LegElement:
        A = self.algebra
        out: dict = {}
        for i, a in x.items():
            for k, c in self.comult.get(i, {}).items():
                out[k] = out.get(k, 0) + a * c
        return LegElement([A, A], out)

    def delta_basis(self, i: int) -> dict:
        return self.comult.get(i, {})

    def eps(self, x: dict):
        return sum((a * self.counit[i] for i, a in x.items() if i in self.counit), mpq(0))

    def S(self, x: dict) -> dict:
        return self.antipode.apply(x)

    def Sinv(self, x: dict) -> dict:
        return self.antipode_inv.apply(x)

    def __repr__(self):
        return f"HopfData({self.name or 'H'}, dim={self.dim})"


@dataclass
class ModuleData:
    """Left module: ``action[i]`` is the matrix of basis element i of the acting algebra."""

    dim: int
    action: list[LinMap]
    name: str = ""

    def act(self, x: dict) -> LinMap:
        out = LinMap.zero(self.dim, self.dim)
        for i, c in x.items():
            out = out + self.action[i].scale(c)
        return out

    def check(self, algebra: AlgebraData) -> Report:
        rep = Report()
        unit_w = None if self.act(algebra.unit).is_identity() else ()
        rep.add("module_unit", unit_w)
        w = None
        for i, j in itertools.product(range(algebra.dim), repeat=2):
            if self.action[i] @ self.action[j] != self.act(algebra.mul_basis(i, j)):
                w = (i, j)
                break
        rep.add("module_product", w)
        return rep


def regular_module(algebra: AlgebraData) -> ModuleData:
    return ModuleData(
        algebra.dim,
        [linmap_of_left_mult(algebra, {i: 1}) for i in range(algebra.dim)],
        name=f"regular({algebra.name})",
    )


# ---------------------------------------------------------------------------
# validation


def _first(pairs):
    for idx, ok in pairs:
        if not ok:
            return idx
    return None


def validate_hopf(H: HopfData) -> Report:
    """Check every bialgebra and antipode axiom on basis elements.

    Each entry's witness is the lexicographically first failing basis index
    (or index tuple).
    """
    rep = Report()
    A = H.algebra
    d = H.dim
    AA = [A, A]
    one = LegElement.one(AA)

    rep.add("unit", A.check_unit())
    rep.add("associativity", A.check_associativity())

    def coassoc(i):
        D = H.delta({i: 1})
        left = D.split_leg(0, H.delta_basis, AA)
        right = D.split_leg(1, H.delta_basis, AA)
        return left == right

    rep.add("coassociativity", _first(((i,), coassoc(i)) for i in range(d)))

    def counit_law(i):
        D = H.delta({i: 1})
        e = {i: 1}
        return D.contract(0, H.counit).to_vector() == e and D.contract(1, H.counit).to_vector() == e

    rep.add("counit", _first(((i,), counit_law(i)) for i in range(d)))

    deltas = [H.delta({i: 1}) for i in range(d)]

    def mult_ok(i, j):
        return H.delta(A.mul_basis(i, j)) == deltas[i] * deltas[j]

    rep.add(
        "comult_multiplicative",
        _first(((i, j), mult_ok(i, j)) for i, j in itertools.product(range(d), repeat=2)),
    )
    rep.add("comult_unit", None if H.delta(A.unit) == one else ())

    def eps_ok(i, j):
        return H.eps(A.mul_basis(i, j)) == H.counit.get(i, 0) * H.counit.get(j, 0)

    rep.add(
        "counit_multiplicative",
        _first(((i, j), eps_ok(i, j)) for i, j in itertools.product(range(d), repeat=2)),
    )
    rep.add("counit_unit", None if H.eps(A.unit) == 1 else ())

    def antipode_ok(i, side):
        acc: dict = {}
        for (j, k), c in H.delta_basis(i).items():
            if side == "left":
                term = A.mul(H.S({j: 1}), {k: 1})
            else:
                term = A.mul({j: 1}, H.S({k: 1}))
            for m, v in term.items():
                acc[m] = acc.get(m, 0) + c * v
        acc = {m: v for m, v in acc.items() if v}
        eps_i = H.counit.get(i, 0)
        expected = {m: eps_i * u for m, u in A.unit.items() if eps_i * u}
        return acc == expected

    rep.add("antipode_left", _first(((i,), antipode_ok(i, "left")) for i in range(d)))
    rep.add("antipode_right", _first(((i,), antipode_ok(i, "right")) for i in range(d)))
    return rep


# ---------------------------------------------------------------------------
# dual


def dual_hopf(H: HopfData, name: str | None = None) -> HopfData:
    """Full linear dual in the literal dual basis e^i.

    Product is the transpose of the coproduct, ``(fg)(x) = f(x_1) g(x_2)``;
    coproduct is the transpose of the product; unit is the counit; counit is
    evaluation at 1; antipode is the transpose of S.
    """
    mult: dict = {}
    for k, terms in H.comult.items():
        for (i, j), c in terms.items():
            mult.setdefault((i, j), {})[k] = c
    comult: dict = {}
    for (i, j), prod in H.algebra.mult_table().items():
        for k, c in prod.items():
            comult.setdefault(k, {})[i, j] = c
    alg = AlgebraData(H.dim, mult, dict(H.counit), H.field, name=name or f"{H.name}*")
    return HopfData(alg, comult, dict(H.unit), H.antipode.transpose(), name=name or f"{H.name}*")


# ---------------------------------------------------------------------------
# groups


def _check_group(table: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    n = len(table)
    if n == 0 or any(len(r) != n for r in table):
        raise NotAGroup("multiplication table must be square and non-empty")
    if any(not 0 <= x < n for r in table for x in r):
        raise NotAGroup("table entry out of range")
    ids = [e for e in range(n) if all(table[e][a] == a and table[a][e] == a for a in range(n))]
    if not ids:
        raise NotAGroup("no identity element")
    e = ids[0]
    inv = []
    for a in range(n):
        cands = [b for b in range(n) if table[a][b] == e and table[b][a] == e]
        if not cands:
            raise NotAGroup(f"element {a} has no inverse")
        inv.append(cands[0])
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NotAGroup(f"not associative at {(a, b, c)}")
    return e, inv


def _normalize_group(table):
    """Relabel so the identity is element 0."""
    e, _ = _check_group(table)
    if e == 0:
        return [list(r) for r in table]
    n = len(table)
    perm = list(range(n))
    perm[0], perm[e] = e, 0  # new label -> old label
    old_to_new = {old: new for new, old in enumerate(perm)}
    return [[old_to_new[table[perm[a]][perm[b]]] for b in range(n)] for a in range(n)]


def cyclic_group(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def symmetric_group(n: int) -> list[list[int]]:
    """S_n with elements in lexicographic order (identity first); (ab)(x) = a(b(x))."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(a[b[x]] for x in range(n))] for b in perms] for a in perms]


def example_group_algebra(table: Sequence[Sequence[int]], field: Field = QQ, name: str = "") -> HopfData:
    """k[G] with Delta(g) = g (x) g, eps(g) = 1, S(g) = g^-1."""
    table = _normalize_group(table)
    _, inv = _check_group(table)
    n = len(table)
    one = field.one
    mult = {(a, b): {table[a][b]: one} for a in range(n) for b in range(n)}
    alg = AlgebraData(n, mult, {0: one}, field, name=name or f"k[G{n}]")
    comult = {g: {(g, g): one} for g in range(n)}
    counit = {g: one for g in range(n)}
    S = LinMap(n, n, {inv[g]: {g: one} for g in range(n)})
    return HopfData(alg, comult, counit, S, name=name or f"k[G{n}]")


def trivial_R(H: HopfData) -> LegElement:
    return LegElement.one([H.algebra, H.algebra])


# ---------------------------------------------------------------------------
# Sweedler


def example_sweedler(lam=0, field: Field = QQ) -> tuple[HopfData, LegElement]:
    """Sweedler's algebra on the basis (1, g, x, gx) with R-matrix R_lambda.

    g^2 = 1, x^2 = 0, xg = -gx, Delta(x) = x (x) 1 + g (x) x, S(x) = -gx.
    With this coproduct the quasitriangular family is
    R = 1/2 (1(x)1 + 1(x)g + g(x)1 - g(x)g) + lambda/2 (x(x)x - x(x)gx + gx(x)gx + gx(x)x).
    """
    lam = field(lam)
    one = field.one
    # index = a + 2 b for g^a x^b
    mult = {}
    for a, b, c, d in itertools.product((0, 1), repeat=4):
        if b + d > 1:
            continue
        sign = -one if (b * c) % 2 else one
        mult[a + 2 * b, c + 2 * d] = {((a + c) % 2) + 2 * (b + d): sign}
    alg = AlgebraData(4, mult, {0: one}, field, name="H4")
    AA = [alg, alg]
    dg = LegElement(AA, {(1, 1): one})
    dx = LegElement(AA, {(2, 0): one, (1, 2): one})
    comult = {}
    for a, b in itertools.product((0, 1), repeat=2):
        el = LegElement.one(AA)
        if a:
            el = el * dg
        if b:
            el = el * dx
        comult[a + 2 * b] = dict(el.data)
    counit = {0: one, 1: one}
    S = LinMap(4, 4, {0: {0: one}, 1: {1: one}, 3: {2: -one}, 2: {3: one}})
    H = HopfData(alg, comult, counit, S, name="H4")
    half = one / 2
    hl = lam / 2
    R = LegElement(
        AA,
        {
            (0, 0): half,
            (0, 1): half,
            (1, 0): half,
            (1, 1): -half,
            (2, 2): hl,
            (2, 3): -hl,
            (3, 3): hl,
            (3, 2): hl,
        },
    )
    return H, R


# ---------------------------------------------------------------------------
# Drinfeld double


def example_drinfeld_double(table: Sequence[Sequence[int]], field: Field = QQ, name: str = "") -> tuple[HopfData, LegElement]:
    """D(G) on the basis delta_g (x) h, index g * |G| + h.

    ``(d_g h)(d_g' h') = [g = h g' h^-1] d_g hh'``,
    ``Delta(d_g h) = sum_{ab = g} d_a h (x) d_b h``,
    ``R = sum_g d_g (x) g``.  The constants are validated before returning.
    """
    from .quasitriangular import QTStructure, validate_qt

    table = _normalize_group(table)
    _, inv = _check_group(table)
    n = len(table)
    one = field.one

    def idx(g, h):
        return g * n + h

    def conj(h, g):
        return table[table[h][g]][inv[h]]

    mult = {}
    for g, h, g2, h2 in itertools.product(range(n), repeat=4):
        if g == conj(h, g2):
            mult[idx(g, h), idx(g2, h2)] = {idx(g, table[h][h2]): one}
    unit = {idx(a, 0): one for a in range(n)}
    label = name or f"D(G{n})"
    alg = AlgebraData(n * n, mult, unit, field, name=label)
    comult = {}
    for g, h in itertools.product(range(n), repeat=2):
        comult[idx(g, h)] = {
            (idx(a, h), idx(b, h)): one for a in range(n) for b in range(n) if table[a][b] == g
        }
    counit = {idx(0, h): one for h in range(n)}
    # S(d_g h) = d_{h^-1 g^-1 h} h^-1
    S = LinMap(n * n, n * n, {})
    rows: dict = {}
    for g, h in itertools.product(range(n), repeat=2):
        hi = inv[h]
        tgt = idx(conj(hi, inv[g]), hi)
        rows.setdefault(tgt, {})[idx(g, h)] = one
    S = LinMap(n * n, n * n, rows)
    H = HopfData(alg, comult, counit, S, name=label)
    R = LegElement([alg, alg], {(idx(g, 0), idx(a, g)): one for g in range(n) for a in range(n)})
    hrep = validate_hopf(H)
    if not hrep.ok:
        raise InternalConventionError(f"D(G) failed Hopf axioms: {hrep.failures()}")
    qrep = validate_qt(QTStructure.build(H, R))
    if not qrep.ok:
        raise InternalConventionError(f"D(G) failed quasitriangularity: {qrep.failures()}")
    return H, R
