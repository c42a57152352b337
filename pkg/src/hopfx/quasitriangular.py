"""R-matrices: validation, Drinfeld element, ribbon search, H^e, H^[2],coop and twists.

Leg positions are 0-based list positions in this module; ``R.embed([1, 0], ...)``
is R^{2,1} of a two-leg ambient space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .exactfield import Cyclotomic, mpq
from .hopf import HopfData, InternalConventionError
from .report import Report
from .tensorcore import (
    AlgebraData,
    LegElement,
    LinMap,
    NotInvertible,
    solve_in_algebra,
    tensor_algebra,
)

__all__ = [
    "CoproductAlgebra",
    "QTStructure",
    "TwistData",
    "as_He_twist",
    "build_H2coop",
    "build_He",
    "check_ribbon",
    "check_twist",
    "compute_u_nu",
    "dual_action_matrix",
    "dual_product_matrix",
    "equivalent_twist",
    "find_ribbon",
    "h2coop_delta",
    "he_action_on_dual",
    "sandwich_map",
    "twist_element",
    "twist_equiv_map",
    "twisted_coproduct",
    "validate_qt",
]


@dataclass(eq=False)
class QTStructure:
    H: HopfData
    R: LegElement
    Rinv: LegElement
    D: LegElement
    ribbon: dict | None = None
    _u_nu: tuple | None = field(default=None, repr=False)

    @classmethod
    def build(cls, H: HopfData, R: LegElement, ribbon: dict | None = None) -> QTStructure:
        """Attach R to H; R^-1 is solved in H (x) H, never supplied."""
        A = H.algebra
        R = LegElement([A, A], R.data)
        Rinv = R.inverse()
        D = R.permute([1, 0]) * R
        return cls(H, R, Rinv, D, ribbon)

    @property
    def dim(self) -> int:
        return self.H.dim

    @property
    def A(self) -> AlgebraData:
        return self.H.algebra

    def legs(self, n: int) -> list[AlgebraData]:
        return [self.A] * n

    def r(self, i: int, j: int, n: int, inverse: bool = False) -> LegElement:
        """R^{i,j} (or its inverse) in H^{(x)n}, 0-based positions."""
        src = self.Rinv if inverse else self.R
        return src.embed([i, j], self.legs(n))

    @property
    def u(self) -> dict:
        return compute_u_nu(self)[0]

    @property
    def nu(self) -> dict:
        return compute_u_nu(self)[1]


def _apply_leg(el: LegElement, leg: int, f: LinMap) -> LegElement:
    return el.apply_leg(leg, f)


def _twisted_eq7(Q: QTStructure) -> LegElement:
    """sum S^-1(r1) r1' (x) r2' r2."""
    H = Q.H
    out: dict = {}
    sinv = {}
    for (a, b), c in Q.R.items():
        s = sinv.get(a)
        if s is None:
            s = sinv[a] = H.Sinv({a: 1})
        for (a2, b2), c2 in Q.R.items():
            first = H.mul(s, {a2: 1})
            if not first:
                continue
            second = H.mul({b2: 1}, {b: 1})
            for i, x in first.items():
                for j, y in second.items():
                    out[i, j] = out.get((i, j), 0) + c * c2 * x * y
    return LegElement(Q.legs(2), out)


def validate_qt(Q: QTStructure) -> Report:
    """Quasitriangularity, Yang-Baxter, the antipode identities for R, and (if present) ribbon axioms."""
    H, R = Q.H, Q.R
    A = H.algebra
    rep = Report()
    one2 = LegElement.one(Q.legs(2))

    with rep.timed("R_invertible") as s:
        s.witness = None if (R * Q.Rinv == one2 and Q.Rinv * R == one2) else ()

    with rep.timed("hexagon_left") as s:  # (Delta (x) id) R = R^13 R^23
        lhs = R.split_leg(0, H.delta_basis, [A, A])
        rhs = Q.r(0, 2, 3) * Q.r(1, 2, 3)
        s.witness = lhs.first_difference(rhs)

    with rep.timed("hexagon_right") as s:  # (id (x) Delta) R = R^13 R^12
        lhs = R.split_leg(1, H.delta_basis, [A, A])
        rhs = Q.r(0, 2, 3) * Q.r(0, 1, 3)
        s.witness = lhs.first_difference(rhs)

    with rep.timed("intertwining") as s:
        w = None
        for i in range(H.dim):
            d = H.delta({i: 1})
            if R * d != d.permute([1, 0]) * R:
                w = (i,)
                break
        s.witness = w

    with rep.timed("counit_R") as s:
        one1 = LegElement.one([A])
        ok = R.contract(0, H.counit) == one1 and R.contract(1, H.counit) == one1
        s.witness = None if ok else ()

    with rep.timed("yang_baxter") as s:
        lhs = Q.r(0, 1, 3) * Q.r(0, 2, 3) * Q.r(1, 2, 3)
        rhs = Q.r(1, 2, 3) * Q.r(0, 2, 3) * Q.r(0, 1, 3)
        s.witness = lhs.first_difference(rhs)

    with rep.timed("R_inverse_antipode") as s:  # R^-1 = (S (x) id) R = (id (x) S^-1) R
        a = R.apply_leg(0, H.antipode)
        b = R.apply_leg(1, H.antipode_inv)
        s.witness = a.first_difference(Q.Rinv) or b.first_difference(Q.Rinv)

    with rep.timed("antipode_R_identity") as s:
        s.witness = _twisted_eq7(Q).first_difference(one2)

    with rep.timed("D_commutes_with_coproduct") as s:
        w = None
        for i in range(H.dim):
            d = H.delta({i: 1})
            if Q.D * d != d * Q.D:
                w = (i,)
                break
        s.witness = w

    if Q.ribbon is not None:
        rep.extend(check_ribbon(Q, Q.ribbon))
    return rep


# ---------------------------------------------------------------------------
# Drinfeld element


def compute_u_nu(Q: QTStructure) -> tuple[dict, dict]:
    """u = m((S (x) id)(R^{2,1})) and nu = u S(u), with nu's identities asserted."""
    if Q._u_nu is not None:
        return Q._u_nu
    H = Q.H
    u: dict = {}
    for (a, b), c in Q.R.items():
        for k, v in H.mul(H.S({b: 1}), {a: 1}).items():
            u[k] = u.get(k, 0) + c * v
    u = {k: v for k, v in u.items() if v}
    nu = H.mul(u, H.S(u))
    A = H.algebra
    for i in range(H.dim):
        if A.mul(nu, {i: 1}) != A.mul({i: 1}, nu):
            raise InternalConventionError(f"nu is not central (basis {i})")
    Dinv2 = Q.D.inverse()
    Dinv2 = Dinv2 * Dinv2
    nn = LegElement.pure([A, A], [nu, nu])
    if H.delta(nu) != Dinv2 * nn:
        raise InternalConventionError("Delta(nu) != D^-2 (nu (x) nu)")
    Q._u_nu = (u, nu)
    return Q._u_nu


def check_ribbon(Q: QTStructure, v: dict) -> Report:
    H = Q.H
    A = H.algebra
    rep = Report()
    _, nu = compute_u_nu(Q)
    central = all(A.mul(v, {i: 1}) == A.mul({i: 1}, v) for i in range(H.dim))
    rep.add("ribbon_central", None if central else ())
    rep.add("ribbon_square", None if A.mul(v, v) == nu else ())
    rep.add("ribbon_S", None if H.S(v) == v else ())
    rep.add("ribbon_counit", None if H.eps(v) == 1 else ())
    lhs = H.delta(v)
    rhs = Q.D.inverse() * LegElement.pure([A, A], [v, v])
    rep.add("ribbon_coproduct", lhs.first_difference(rhs))
    return rep


def find_ribbon(Q: QTStructure) -> dict | None:
    """Search the centre for a ribbon element.

    Linear conditions (centrality, eps(v) = 1, S(v) = v) cut out an affine
    space; the quadratic conditions v^2 = nu and Delta(v) D = v (x) v are then
    solved exactly.  Among the solutions lying in the base field the
    lexicographically largest coefficient vector wins, so that v = 1 is
    preferred whenever it qualifies.
    """
    H = Q.H
    A = H.algebra
    d = H.dim
    center = A.center()
    # constraints on coefficients a of v = sum a_i c_i
    rows = []
    rhs = []
    for j in range(d):
        row = {}
        for i, c in enumerate(center):
            val = H.S(c).get(j, 0) - c.get(j, 0)
            if val:
                row[i] = val
        if row:
            rows.append(row)
            rhs.append(0)
    eps_row = {i: H.eps(c) for i, c in enumerate(center) if H.eps(c)}
    rows.append(eps_row)
    rhs.append(1)
    m = len(center)
    system = LinMap(len(rows), m, dict(enumerate(rows)))
    try:
        base = system.solve({i: r for i, r in enumerate(rhs) if r})
    except NotInvertible:
        return None
    kernel = system.nullspace()

    def vec_of(coeffs: dict) -> dict:
        out: dict = {}
        for i, a in coeffs.items():
            for j, c in center[i].items():
                out[j] = out.get(j, 0) + a * c
        return {j: x for j, x in out.items() if x}

    base_v = vec_of(base)
    dirs = [vec_of(k) for k in kernel]
    candidates = _solve_ribbon_quadratics(Q, base_v, dirs)
    good = []
    for v in candidates:
        if check_ribbon(Q, v).ok:
            good.append(v)
    if not good:
        return None
    good.sort(key=lambda v: [_sort_key(v.get(j, 0)) for j in range(d)], reverse=True)
    return good[0]


def _sort_key(x):
    if isinstance(x, Cyclotomic):
        return tuple(x.coeffs)
    return (mpq(x),)


def _solve_ribbon_quadratics(Q: QTStructure, base: dict, dirs: list[dict]) -> list[dict]:
    import sympy

    H = Q.H
    A = H.algebra
    fld = H.field
    deg = fld.degree
    if not dirs:
        return [base]
    # unknown t_j = sum_r s_{j,r} z^r, s rational
    syms = [[sympy.Symbol(f"s{j}_{r}") for r in range(deg)] for j in range(len(dirs))]
    z = sympy.Symbol("z")
    phi = sympy.Poly(list(reversed(_cyclo(fld.conductor))), z)

    def to_sym(x):
        if isinstance(x, Cyclotomic):
            return sum(sympy.Rational(int(c.numerator), int(c.denominator)) * z**r for r, c in enumerate(x.coeffs))
        x = mpq(x)
        return sympy.Rational(int(x.numerator), int(x.denominator))

    ts = [sum(s * z**r for r, s in enumerate(row)) for row in syms]

    def symvec(vec_base, vec_dirs):
        keys = set(vec_base)
        for dv in vec_dirs:
            keys |= set(dv)
        return {k: to_sym(vec_base.get(k, 0)) + sum(t * to_sym(dv.get(k, 0)) for t, dv in zip(ts, vec_dirs)) for k in keys}

    v = symvec(base, dirs)

    def smul(x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in A.mul_basis(i, j).items():
                    out[k] = out.get(k, 0) + a * b * to_sym(c)
        return out

    eqs = []
    _, nu = compute_u_nu(Q)
    sq = smul(v, v)
    for k in set(sq) | set(nu):
        eqs.append(sq.get(k, 0) - to_sym(nu.get(k, 0)))
    # Delta(v) D = v (x) v
    dv: dict = {}
    for i, a in v.items():
        for (j, k), c in H.delta_basis(i).items():
            dv[j, k] = dv.get((j, k), 0) + a * to_sym(c)
    lhs: dict = {}
    for (j, k), a in dv.items():
        for (p, q), c in Q.D.items():
            for x, cx in A.mul_basis(j, p).items():
                for y, cy in A.mul_basis(k, q).items():
                    lhs[x, y] = lhs.get((x, y), 0) + a * to_sym(c) * to_sym(cx) * to_sym(cy)
    for key in set(lhs) | {(i, j) for i in v for j in v}:
        rhs = v.get(key[0], 0) * v.get(key[1], 0)
        eqs.append(lhs.get(key, 0) - rhs)
    # split into rational components
    flat = [s for row in syms for s in row]
    poly_eqs = set()
    for e in eqs:
        e = sympy.expand(e)
        if e == 0:
            continue
        rem = sympy.Poly(e, z).rem(phi) if deg > 1 or fld.conductor > 1 else sympy.Poly(e, z)
        for coeff in rem.all_coeffs():
            c = sympy.expand(coeff)
            if c != 0:
                poly_eqs.add(c)
    if not poly_eqs:
        sols = [{}]
    else:
        sols = sympy.solve(sorted(poly_eqs, key=str), flat, dict=True)
    out = []
    for sol in sols:
        vals = []
        ok = True
        for s in flat:
            val = sol.get(s, sympy.Integer(0))
            val = val.subs({f: 0 for f in flat})
            if not val.is_rational:
                ok = False
                break
            vals.append(mpq(int(val.p), int(val.q)))
        if not ok:
            continue
        coeffs = [fld(0)] * len(dirs)
        for j in range(len(dirs)):
            coeffs[j] = sum((vals[j * deg + r] * fld.zeta(r) for r in range(deg)), fld(0))
        vec = dict(base)
        for c, dvec in zip(coeffs, dirs):
            for k, x in dvec.items():
                vec[k] = vec.get(k, 0) + c * x
        out.append({k: x for k, x in vec.items() if x})
    return out


def _cyclo(n):
    from .exactfield import cyclotomic_polynomial

    return cyclotomic_polynomial(n)


# ---------------------------------------------------------------------------
# H^e and H^[2],coop


@dataclass(eq=False)
class CoproductAlgebra:
    """An algebra on H (x) H (index x * d + y) with an explicit coproduct and counit."""

    algebra: AlgebraData
    comult: dict
    counit: dict
    name: str = ""

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def delta_basis(self, i: int) -> dict:
        return self.comult.get(i, {})

    def delta(self, x: dict) -> LegElement:
        out: dict = {}
        for i, a in x.items():
            for k, c in self.comult.get(i, {}).items():
                out[k] = out.get(k, 0) + a * c
        return LegElement([self.algebra] * 2, out)

    def check(self) -> Report:
        rep = Report()
        A = self.algebra
        AA = [A, A]
        w = None
        for i in range(self.dim):
            D = self.delta({i: 1})
            if D.split_leg(0, self.delta_basis, AA) != D.split_leg(1, self.delta_basis, AA):
                w = (i,)
                break
        rep.add("coassociativity", w)
        w = None
        for i in range(self.dim):
            D = self.delta({i: 1})
            e = {i: 1}
            if D.contract(0, self.counit).to_vector() != e or D.contract(1, self.counit).to_vector() != e:
                w = (i,)
                break
        rep.add("counit", w)
        w = None
        deltas = [self.delta({i: 1}) for i in range(self.dim)]
        for i, j in itertools.product(range(self.dim), repeat=2):
            if self.delta(A.mul_basis(i, j)) != deltas[i] * deltas[j]:
                w = (i, j)
                break
        rep.add("comult_multiplicative", w)
        return rep


def build_He(H: HopfData) -> HopfData:
    """H^e = H^coop (x) H; basis x (x) y has index x * d + y."""
    d = H.dim
    alg = tensor_algebra(H.algebra, H.algebra, name=f"{H.name}^e")
    comult = {}
    for x in range(d):
        for y in range(d):
            out = {}
            for (x1, x2), a in H.delta_basis(x).items():
                for (y1, y2), b in H.delta_basis(y).items():
                    key = (x2 * d + y1, x1 * d + y2)
                    out[key] = out.get(key, 0) + a * b
            comult[x * d + y] = out
    counit = {x * d + y: a * b for x, a in H.counit.items() for y, b in H.counit.items()}
    antipode = H.antipode_inv.kron(H.antipode)
    return HopfData(alg, comult, counit, antipode, name=f"{H.name}^e")


def h2coop_delta(Q: QTStructure, x: dict, y: dict) -> dict:
    """Coproduct of x (x) y in H^[2],coop as ``{(p, q): c}``, p and q indexing H (x) H."""
    H = Q.H
    d = H.dim
    L4 = Q.legs(4)
    terms: dict = {}
    for i, a in x.items():
        for j, b in y.items():
            for (x1, x2), u in H.delta_basis(i).items():
                for (y1, y2), v in H.delta_basis(j).items():
                    key = (x1, y1, x2, y2)
                    terms[key] = terms.get(key, 0) + a * b * u * v
    conj = Q.r(0, 3, 4, inverse=True) * LegElement(L4, terms) * Q.r(0, 3, 4)
    out: dict = {}
    for (p, q, r, s), c in conj.items():
        key = (p * d + q, r * d + s)
        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def build_H2coop(Q: QTStructure, check: bool = True) -> CoproductAlgebra:
    """H (x) H with coproduct (R^{14})^-1 tau^{23}(Delta(x) (x) Delta(y)) R^{14}.

    This is the twist of H^e by R^{13} R^{14}.  The twisted duals, whose
    product takes its factors in the opposite order, are module algebras
    over the coopposite coproduct through ``dual_action_matrix``.
    """
    H = Q.H
    d = H.dim
    A = H.algebra
    alg = tensor_algebra(A, A, name=f"{H.name}^[2],coop")
    comult = {x * d + y: h2coop_delta(Q, {x: 1}, {y: 1}) for x in range(d) for y in range(d)}
    counit = {x * d + y: a * b for x, a in H.counit.items() for y, b in H.counit.items()}
    K = CoproductAlgebra(alg, comult, counit, name=f"{H.name}^[2],coop")
    if check:
        rep = K.check()
        if not rep["coassociativity"].holds:
            raise InternalConventionError(f"H^[2],coop is not coassociative: {rep.failures()}")
    return K


# ---------------------------------------------------------------------------
# action of H (x) H on the dual


def dual_action_matrix(H: HopfData, x: dict, y: dict) -> LinMap:
    """Matrix of f -> (u -> f(S^-1(x) u y)) in the dual basis."""
    sx = H.Sinv(x)
    A = H.algebra
    # column i = image of e^i; entry j = e^i(S^-1(x) e_j y)
    rows: dict = {}
    for j in range(H.dim):
        val = A.mul(A.mul(sx, {j: 1}), y)
        for i, c in val.items():
            rows.setdefault(j, {})[i] = c
    return LinMap(H.dim, H.dim, rows)


def he_action_on_dual(H: HopfData) -> dict[tuple[int, int], LinMap]:
    """All basis-pair action matrices (e_a (x) e_b) |> on H^o."""
    return {
        (a, b): dual_action_matrix(H, {a: 1}, {b: 1}) for a in range(H.dim) for b in range(H.dim)
    }


def sandwich_map(H: HopfData, W: LegElement) -> LinMap:
    """For W in H^{(x)2n} the map on H^{(x)n}: (x)_p e_{j_p} -> sum (x)_p S^-1(W_{2p}) e_{j_p} W_{2p+1}.

    Its transpose is the action of W on (H^o)^{(x)n} in the dual basis.
    """
    d = H.dim
    A = H.algebra
    n = W.arity // 2
    cache: dict = {}

    def factor(a: int, b: int) -> LinMap:
        key = (a, b)
        m = cache.get(key)
        if m is None:
            sx = H.Sinv({a: 1})
            cols = [A.mul(A.mul(sx, {j: 1}), {b: 1}) for j in range(d)]
            m = cache[key] = LinMap.from_columns(d, cols)
        return m

    # group terms to build Kronecker products incrementally
    total_rows: dict = {}
    for key, c in W.items():
        mats = [factor(key[2 * p], key[2 * p + 1]) for p in range(n)]
        K = mats[0]
        for m in mats[1:]:
            K = K.kron(m)
        for i, row in K.rows.items():
            tgt = total_rows.setdefault(i, {})
            for j, v in row.items():
                tgt[j] = tgt.get(j, 0) + c * v
    return LinMap(d**n, d**n, total_rows)


def dual_product_matrix(H: HopfData) -> LinMap:
    """m: H^o (x) H^o -> H^o, (e^p (x) e^q) -> sum_t c_t^{pq} e^t."""
    d = H.dim
    rows: dict = {}
    for t, terms in H.comult.items():
        for (p, q), c in terms.items():
            rows.setdefault(t, {})[p * d + q] = c
    return LinMap(d, d * d, rows)


# ---------------------------------------------------------------------------
# twists


@dataclass(eq=False)
class TwistData:
    base: HopfData
    F: LegElement  # two legs over base


def twist_element(Q: QTStructure, k: int = 0) -> LegElement:
    """(D^{3,1})^-k R^{13} R^{14} as four H-legs, with D^{3,1} = R^{13} R^{31}.

    This is the twist that makes the k-twisted dual associative and satisfy
    the k-reflection identity; for k = 0 it is F = R^{13} R^{14}.
    """
    L4 = Q.legs(4)
    F = Q.r(0, 2, 4) * Q.r(0, 3, 4)
    if k:
        Dk = Q.D.inverse() if k > 0 else Q.D
        D31 = Dk.embed([2, 0], L4)
        for _ in range(abs(k)):
            F = D31 * F
    return F


def as_He_twist(Q: QTStructure, He: HopfData, F4: LegElement) -> TwistData:
    d = Q.dim
    F2 = LegElement([He.algebra, He.algebra], {(a * d + b, c * d + e): v for (a, b, c, e), v in F4.items()})
    return TwistData(He, F2)


def check_twist(T: TwistData) -> Report:
    """Cocycle F^{12,3} F^{1,2} = F^{1,23} F^{2,3} and counit normalisation."""
    H = T.base
    A = H.algebra
    L3 = [A, A, A]
    F = T.F
    rep = Report()
    lhs = F.split_leg(0, H.delta_basis, [A, A]) * F.embed([0, 1], L3)
    rhs = F.split_leg(1, H.delta_basis, [A, A]) * F.embed([1, 2], L3)
    rep.add("twist_cocycle", lhs.first_difference(rhs))
    one = LegElement.one([A])
    ok = F.contract(0, H.counit) == one and F.contract(1, H.counit) == one
    rep.add("twist_counit", None if ok else ())
    return rep


def twisted_coproduct(T: TwistData) -> dict:
    """Delta^F(x) = F^-1 Delta(x) F on basis elements."""
    H = T.base
    Finv = T.F.inverse()
    return {i: dict((Finv * H.delta({i: 1}) * T.F).data) for i in range(H.dim)}


def twist_equiv_map(H: HopfData, x: dict) -> LinMap:
    """Left multiplication by an equivalence element x (invertible, eps(x) = 1)."""
    if H.eps(x) != 1:
        raise NotInvertible("equivalence element must have counit 1")
    solve_in_algebra(H.algebra, x)
    return H.algebra.left_mult(x)


def equivalent_twist(H: HopfData, F: LegElement, x: dict) -> LegElement:
    """F' = Delta(x) F (x^-1 (x) x^-1)."""
    A = H.algebra
    xi = solve_in_algebra(A, x)
    return H.delta(x) * F * LegElement.pure([A, A], [xi, xi])
