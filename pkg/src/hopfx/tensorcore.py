"""Sparse exact multilinear algebra.

Three containers carry everything else in the package:

* :class:`LinMap` -- a sparse matrix between based spaces (dict of rows).
* :class:`AlgebraData` -- an associative algebra given by structure constants
  ``e_i e_j = sum_k m[i, j][k] e_k``.
* :class:`LegElement` -- a sparse element of ``A_1 (x) ... (x) A_m`` whose legs
  are algebras.  Products are leg-wise; :meth:`LegElement.embed` realises the
  superscript leg notation (``R^{2,1}``, ``X^{0,2}`` ...).

Vectors are plain ``dict[int, scalar]`` with zero entries dropped.
"""

from __future__ import annotations

import itertools
import os
from collections import defaultdict
from typing import Callable, Iterable, Sequence

from .exactfield import QQ, Field

__all__ = [
    "AlgebraData",
    "DimMismatch",
    "LegElement",
    "LinMap",
    "NotInvertible",
    "linmap_of_left_mult",
    "solve_in_algebra",
    "tensor_algebra",
    "vec_add",
    "vec_scale",
]


class DimMismatch(ValueError):
    pass


class NotInvertible(ArithmeticError):
    pass


def vec_add(x: dict, y: dict, scale=1) -> dict:
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, 0) + scale * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vec_scale(x: dict, c) -> dict:
    if not c:
        return {}
    return {k: c * v for k, v in x.items()}


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v}


# ---------------------------------------------------------------------------
# sparse matrices


class LinMap:
    """Sparse matrix ``dst_dim x src_dim``; column j is the image of basis vector j."""

    __slots__ = ("dst_dim", "src_dim", "rows")

    def __init__(self, dst_dim: int, src_dim: int, rows: dict | None = None):
        self.dst_dim = dst_dim
        self.src_dim = src_dim
        self.rows: dict[int, dict[int, object]] = {}
        for i, row in (rows or {}).items():
            row = _clean(row)
            if row:
                if not 0 <= i < dst_dim or any(not 0 <= j < src_dim for j in row):
                    raise DimMismatch("matrix entry out of range")
                self.rows[i] = row

    @property
    def shape(self) -> tuple[int, int]:
        return self.dst_dim, self.src_dim

    @classmethod
    def identity(cls, n: int) -> LinMap:
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def zero(cls, dst: int, src: int) -> LinMap:
        return cls(dst, src)

    @classmethod
    def from_columns(cls, dst_dim: int, columns: Sequence[dict]) -> LinMap:
        rows: dict[int, dict] = defaultdict(dict)
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
        return cls(dst_dim, len(columns), rows)

    @classmethod
    def from_dense(cls, matrix: Sequence[Sequence]) -> LinMap:
        n = len(matrix)
        m = len(matrix[0]) if n else 0
        return cls(n, m, {i: {j: v for j, v in enumerate(r) if v} for i, r in enumerate(matrix)})

    def to_dense(self) -> list[list]:
        out = [[0] * self.src_dim for _ in range(self.dst_dim)]
        for i, row in self.rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def columns(self) -> list[dict]:
        cols: list[dict] = [dict() for _ in range(self.src_dim)]
        for i, row in self.rows.items():
            for j, v in row.items():
                cols[j][i] = v
        return cols

    def column(self, j: int) -> dict:
        return {i: row[j] for i, row in self.rows.items() if j in row}

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def __getitem__(self, ij):
        i, j = ij
        return self.rows.get(i, {}).get(j, 0)

    def transpose(self) -> LinMap:
        rows: dict[int, dict] = defaultdict(dict)
        for i, row in self.rows.items():
            for j, v in row.items():
                rows[j][i] = v
        return LinMap(self.src_dim, self.dst_dim, rows)

    T = property(transpose)

    def apply(self, x: dict) -> dict:
        out: dict = {}
        for i, row in self.rows.items():
            s = 0
            for j, v in row.items():
                xj = x.get(j)
                if xj is not None:
                    s += v * xj
            if s:
                out[i] = s
        return out

    def __matmul__(self, other):
        if isinstance(other, dict):
            return self.apply(other)
        if not isinstance(other, LinMap):
            return NotImplemented
        if self.src_dim != other.dst_dim:
            raise DimMismatch(f"cannot compose {self.shape} with {other.shape}")
        orows = other.rows
        rows = {}
        for i, row in self.rows.items():
            acc: dict = {}
            for k, a in row.items():
                brow = orows.get(k)
                if brow is None:
                    continue
                for j, b in brow.items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = _clean(acc)
            if acc:
                rows[i] = acc
        out = LinMap(self.dst_dim, other.src_dim)
        out.rows = rows
        return out

    def __pow__(self, n: int) -> LinMap:
        if self.dst_dim != self.src_dim:
            raise DimMismatch("power of a non-square map")
        if n < 0:
            return self.inverse() ** (-n)
        result, base = LinMap.identity(self.dst_dim), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def _combine(self, other: LinMap, sign) -> LinMap:
        if self.shape != other.shape:
            raise DimMismatch(f"shape {self.shape} vs {other.shape}")
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, row in other.rows.items():
            tgt = rows.setdefault(i, {})
            for j, v in row.items():
                tgt[j] = tgt.get(j, 0) + sign * v
        return LinMap(self.dst_dim, self.src_dim, rows)

    def __add__(self, other: LinMap) -> LinMap:
        return self._combine(other, 1)

    def __sub__(self, other: LinMap) -> LinMap:
        return self._combine(other, -1)

    def __neg__(self) -> LinMap:
        return self.scale(-1)

    def scale(self, c) -> LinMap:
        return LinMap(self.dst_dim, self.src_dim, {i: vec_scale(r, c) for i, r in self.rows.items()})

    def __rmul__(self, c) -> LinMap:
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinMap):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self) -> str:
        return f"LinMap({self.dst_dim}x{self.src_dim}, nnz={self.nnz()})"

    def kron(self, other: LinMap) -> LinMap:
        """Kronecker product; index (i, k) -> i * other_dim + k."""
        od, os_ = other.dst_dim, other.src_dim
        rows = {}
        for i, arow in self.rows.items():
            for k, brow in other.rows.items():
                rows[i * od + k] = {
                    j * os_ + l: a * b for j, a in arow.items() for l, b in brow.items()
                }
        out = LinMap(self.dst_dim * od, self.src_dim * os_)
        out.rows = {i: r for i, r in rows.items() if r}
        return out

    def is_identity(self) -> bool:
        return self.dst_dim == self.src_dim and self == LinMap.identity(self.dst_dim)

    def is_zero(self) -> bool:
        return not self.rows

    # -- elimination -------------------------------------------------------

    def rank(self) -> int:
        return len(_row_echelon([dict(r) for r in self.rows.values()])[1])

    def nullspace(self) -> list[dict]:
        """Basis of the kernel, each vector normalised to 1 at its free pivot."""
        reduced, pivots = _rref([dict(r) for r in self.rows.values()])
        pivot_set = set(pivots)
        basis = []
        for free in range(self.src_dim):
            if free in pivot_set:
                continue
            vec = {free: 1}
            for row, p in zip(reduced, pivots):
                c = row.get(free)
                if c:
                    vec[p] = -c
            basis.append(vec)
        return basis

    def solve(self, b: dict) -> dict:
        """One solution x of self @ x = b, or raise NotInvertible."""
        aug_col = self.src_dim
        rows = []
        for i in range(self.dst_dim):
            row = dict(self.rows.get(i, {}))
            if b.get(i):
                row[aug_col] = b[i]
            if row:
                rows.append(row)
        reduced, pivots = _rref(rows)
        x = {}
        for row, p in zip(reduced, pivots):
            if p == aug_col:
                raise NotInvertible("inconsistent linear system")
            c = row.get(aug_col)
            if c:
                x[p] = c
        return x

    def inverse(self) -> LinMap:
        n = self.dst_dim
        if n != self.src_dim:
            raise NotInvertible("non-square map")
        rows = []
        for i in range(n):
            row = dict(self.rows.get(i, {}))
            row[n + i] = 1
            rows.append(row)
        reduced, pivots = _rref(rows)
        if pivots != list(range(n)):
            raise NotInvertible("singular matrix")
        inv_rows = {}
        for row, p in zip(reduced, pivots):
            inv_rows[p] = {j - n: v for j, v in row.items() if j >= n}
        return LinMap(n, n, inv_rows)

    def to_flint(self):
        import flint

        m = flint.fmpq_mat(self.dst_dim, self.src_dim)
        for i, row in self.rows.items():
            for j, v in row.items():
                m[i, j] = flint.fmpq(int(v.numerator), int(v.denominator))
        return m


def _row_echelon(rows: list[dict]) -> tuple[list[dict], list[int]]:
    """Forward elimination; returns echelon rows (leading entry 1) and pivot columns."""
    rows = [r for r in rows if r]
    echelon: dict[int, dict] = {}
    for row in rows:
        row = dict(row)
        while row:
            p = min(row)
            if p in echelon:
                prow = echelon[p]
                f = row[p]
                for j, v in prow.items():
                    s = row.get(j, 0) - f * v
                    if s:
                        row[j] = s
                    else:
                        row.pop(j, None)
            else:
                inv = 1 / row[p]
                echelon[p] = {j: v * inv for j, v in row.items()}
                break
    pivots = sorted(echelon)
    return [echelon[p] for p in pivots], pivots


def _rref(rows: list[dict]) -> tuple[list[dict], list[int]]:
    echelon, pivots = _row_echelon(rows)
    # back substitution, last pivot first
    for idx in range(len(pivots) - 1, -1, -1):
        p, prow = pivots[idx], echelon[idx]
        for other in range(idx):
            row = echelon[other]
            f = row.get(p)
            if f:
                for j, v in prow.items():
                    s = row.get(j, 0) - f * v
                    if s:
                        row[j] = s
                    else:
                        row.pop(j, None)
    return echelon, pivots


# ---------------------------------------------------------------------------
# algebras


class AlgebraData:
    """Algebra by structure constants.  Associativity is checked, not assumed.

    ``mult`` maps ``(i, j)`` to a sparse vector.  Subclasses may instead
    override :meth:`_compute_product` to produce basis products lazily; results
    are cached either way.
    """

    def __init__(
        self,
        dim: int,
        mult: dict | None = None,
        unit: dict | None = None,
        field: Field = QQ,
        name: str = "",
    ):
        self.dim = dim
        self.field = field
        self.name = name
        self._mult: dict = {}
        if mult is not None:
            for (i, j), v in mult.items():
                v = _clean(v)
                if v:
                    self._mult[i, j] = v
            self._complete = True
        else:
            self._complete = False
        self.unit: dict = _clean(unit if unit is not None else {0: 1})

    def __repr__(self):
        return f"AlgebraData({self.name or 'anonymous'}, dim={self.dim})"

    def _compute_product(self, i: int, j: int) -> dict:
        raise NotImplementedError

    def mul_basis(self, i: int, j: int) -> dict:
        key = (i, j)
        try:
            return self._mult[key]
        except KeyError:
            if self._complete:
                return {}
        r = _clean(self._compute_product(i, j))
        self._mult[key] = r
        return r

    def mult_table(self) -> dict:
        """The full sparse tensor ``{(i, j): {k: c}}`` (forces lazy products)."""
        return {
            (i, j): self.mul_basis(i, j)
            for i in range(self.dim)
            for j in range(self.dim)
            if self.mul_basis(i, j)
        }

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                ab = a * b
                for k, c in self.mul_basis(i, j).items():
                    out[k] = out.get(k, 0) + ab * c
        return _clean(out)

    def basis(self, i: int) -> dict:
        return {i: 1}

    def power(self, x: dict, n: int) -> dict:
        if n < 0:
            return self.power(solve_in_algebra(self, x), -n)
        out = dict(self.unit)
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def check_unit(self) -> tuple | None:
        for i in range(self.dim):
            e = {i: 1}
            if self.mul(self.unit, e) != e:
                return ("left", i)
            if self.mul(e, self.unit) != e:
                return ("right", i)
        return None

    def check_associativity(self, triples: Iterable[tuple[int, int, int]] | None = None):
        """First basis triple (i, j, k) with (e_i e_j) e_k != e_i (e_j e_k), else None."""
        if triples is None:
            triples = itertools.product(range(self.dim), repeat=3)
        for i, j, k in triples:
            left = self.mul(self.mul_basis(i, j), {k: 1})
            right = self.mul({i: 1}, self.mul_basis(j, k))
            if left != right:
                return (i, j, k)
        return None

    def is_commutative(self) -> bool:
        return all(
            self.mul_basis(i, j) == self.mul_basis(j, i)
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
        )

    def left_mult(self, x: dict) -> LinMap:
        return linmap_of_left_mult(self, x)

    def right_mult(self, x: dict) -> LinMap:
        cols = [self.mul({j: 1}, x) for j in range(self.dim)]
        return LinMap.from_columns(self.dim, cols)

    def center(self) -> list[dict]:
        """Basis of the centre: kernel of the stacked maps y -> e_i y - y e_i."""
        rows: list[dict] = []
        for i in range(self.dim):
            comm = linmap_of_left_mult(self, {i: 1}) - self.right_mult({i: 1})
            rows.extend(comm.rows.values())
        stacked = LinMap(len(rows), self.dim, dict(enumerate(rows)))
        return stacked.nullspace()

    def opposite(self) -> AlgebraData:
        mult = {(j, i): v for (i, j), v in self.mult_table().items()}
        return AlgebraData(self.dim, mult, self.unit, self.field, name=f"{self.name}^op")


def tensor_algebra(a: AlgebraData, b: AlgebraData, name: str = "") -> AlgebraData:
    """``a (x) b`` with basis index i * b.dim + j."""
    mult = {}
    for (i, k), ab in a.mult_table().items():
        for (j, l), bb in b.mult_table().items():
            mult[i * b.dim + j, k * b.dim + l] = {
                p * b.dim + q: u * v for p, u in ab.items() for q, v in bb.items()
            }
    unit = {i * b.dim + j: u * v for i, u in a.unit.items() for j, v in b.unit.items()}
    return AlgebraData(a.dim * b.dim, mult, unit, a.field, name=name or f"{a.name}*{b.name}")


def linmap_of_left_mult(A: AlgebraData, x: dict) -> LinMap:
    """Matrix of y -> x y."""
    cols = [A.mul(x, {j: 1}) for j in range(A.dim)]
    return LinMap.from_columns(A.dim, cols)


def solve_in_algebra(A: AlgebraData, x: dict) -> dict:
    """Two-sided inverse of x, found from the left-multiplication system and re-verified."""
    L = linmap_of_left_mult(A, x)
    try:
        y = L.solve(A.unit)
    except NotInvertible:
        raise NotInvertible("element is not invertible") from None
    if A.mul(x, y) != A.unit or A.mul(y, x) != A.unit:
        raise NotInvertible("no two-sided inverse")
    return y


# ---------------------------------------------------------------------------
# leg elements


class LegElement:
    """Sparse element of ``legs[0] (x) legs[1] (x) ...``; keys are index tuples."""

    __slots__ = ("legs", "data")

    def __init__(self, legs: Sequence[AlgebraData], data: dict | None = None):
        self.legs = tuple(legs)
        self.data: dict[tuple, object] = {}
        n = len(self.legs)
        for key, v in (data or {}).items():
            if v:
                if len(key) != n:
                    raise DimMismatch(f"index {key} has arity {len(key)}, expected {n}")
                self.data[tuple(key)] = v

    @classmethod
    def one(cls, legs: Sequence[AlgebraData]) -> LegElement:
        out = {(): 1}
        for leg in legs:
            out = {k + (i,): c * u for k, c in out.items() for i, u in leg.unit.items()}
        return cls(legs, out)

    @classmethod
    def from_vector(cls, alg: AlgebraData, vec: dict) -> LegElement:
        return cls([alg], {(i,): v for i, v in vec.items()})

    @classmethod
    def pure(cls, legs: Sequence[AlgebraData], vectors: Sequence[dict]) -> LegElement:
        """Pure tensor v_1 (x) v_2 (x) ..."""
        out = {(): 1}
        for vec in vectors:
            out = {k + (i,): c * u for k, c in out.items() for i, u in vec.items()}
        return cls(legs, out)

    @property
    def arity(self) -> int:
        return len(self.legs)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(l.dim for l in self.legs)

    def __len__(self):
        return len(self.data)

    def items(self):
        return self.data.items()

    def __repr__(self):
        return f"LegElement(dims={self.dims}, nnz={len(self.data)})"

    def _check_same(self, other: LegElement):
        if self.dims != other.dims:
            raise DimMismatch(f"leg dims {self.dims} vs {other.dims}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, LegElement):
            return NotImplemented
        return self.dims == other.dims and self.data == other.data

    def __add__(self, other: LegElement) -> LegElement:
        self._check_same(other)
        out = dict(self.data)
        for k, v in other.data.items():
            out[k] = out.get(k, 0) + v
        return LegElement(self.legs, out)

    def __sub__(self, other: LegElement) -> LegElement:
        return self + other.scale(-1)

    def __neg__(self) -> LegElement:
        return self.scale(-1)

    def scale(self, c) -> LegElement:
        return LegElement(self.legs, {k: c * v for k, v in self.data.items()})

    def __mul__(self, other):
        if not isinstance(other, LegElement):
            return self.scale(other)
        return leg_product(self, other)

    def is_zero(self) -> bool:
        return not self.data

    def embed(self, targets: Sequence[int], ambient: Sequence[AlgebraData]) -> LegElement:
        """Place leg i of self on ambient leg ``targets[i]``; units everywhere else."""
        if len(targets) != self.arity or len(set(targets)) != len(targets):
            raise DimMismatch("target legs must be distinct, one per leg")
        for t, leg in zip(targets, self.legs):
            if ambient[t].dim != leg.dim:
                raise DimMismatch(f"leg of dim {leg.dim} cannot sit on ambient leg {t}")
        free = [p for p in range(len(ambient)) if p not in targets]
        filler = {(): 1}
        for p in free:
            filler = {k + (i,): c * u for k, c in filler.items() for i, u in ambient[p].unit.items()}
        out = {}
        n = len(ambient)
        for key, v in self.data.items():
            for fkey, fc in filler.items():
                full = [0] * n
                for t, i in zip(targets, key):
                    full[t] = i
                for p, i in zip(free, fkey):
                    full[p] = i
                full = tuple(full)
                out[full] = out.get(full, 0) + v * fc
        return LegElement(ambient, out)

    def permute(self, order: Sequence[int]) -> LegElement:
        """New element whose leg p is old leg ``order[p]``."""
        legs = [self.legs[o] for o in order]
        return LegElement(legs, {tuple(k[o] for o in order): v for k, v in self.data.items()})

    def apply_leg(self, leg: int, f: LinMap, new_leg: AlgebraData | None = None) -> LegElement:
        """Apply a linear map to one leg."""
        cols: dict[int, dict] = {}
        out: dict = {}
        for key, v in self.data.items():
            i = key[leg]
            col = cols.get(i)
            if col is None:
                col = cols[i] = f.column(i)
            for j, c in col.items():
                nk = key[:leg] + (j,) + key[leg + 1 :]
                out[nk] = out.get(nk, 0) + v * c
        legs = list(self.legs)
        legs[leg] = new_leg if new_leg is not None else self.legs[leg]
        return LegElement(legs, out)

    def split_leg(self, leg: int, comult: Callable[[int], dict], new_legs: Sequence[AlgebraData]) -> LegElement:
        """Replace one leg by two using ``comult(i) = {(j, k): c}``."""
        out: dict = {}
        for key, v in self.data.items():
            for (j, k), c in comult(key[leg]).items():
                nk = key[:leg] + (j, k) + key[leg + 1 :]
                out[nk] = out.get(nk, 0) + v * c
        legs = list(self.legs[:leg]) + list(new_legs) + list(self.legs[leg + 1 :])
        return LegElement(legs, out)

    def contract(self, leg: int, functional: dict) -> LegElement:
        """Pair one leg with a covector, dropping that leg."""
        out: dict = {}
        for key, v in self.data.items():
            c = functional.get(key[leg])
            if c:
                nk = key[:leg] + key[leg + 1 :]
                out[nk] = out.get(nk, 0) + v * c
        return LegElement(self.legs[:leg] + self.legs[leg + 1 :], out)

    def merge_legs(self, first: int, merged: AlgebraData) -> LegElement:
        """Fuse legs (first, first+1) into one leg of ``merged`` (index i * d2 + j)."""
        d2 = self.legs[first + 1].dim
        out = {
            k[:first] + (k[first] * d2 + k[first + 1],) + k[first + 2 :]: v
            for k, v in self.data.items()
        }
        return LegElement(self.legs[:first] + (merged,) + self.legs[first + 2 :], out)

    def unmerge_leg(self, leg: int, a: AlgebraData, b: AlgebraData) -> LegElement:
        out = {k[:leg] + divmod(k[leg], b.dim) + k[leg + 1 :]: v for k, v in self.data.items()}
        return LegElement(self.legs[:leg] + (a, b) + self.legs[leg + 1 :], out)

    def slice(self, leg_values: dict[int, int]) -> LegElement:
        """Coefficient element on the remaining legs for fixed indices on some legs."""
        keep = [p for p in range(self.arity) if p not in leg_values]
        out: dict = {}
        for key, v in self.data.items():
            if all(key[p] == i for p, i in leg_values.items()):
                nk = tuple(key[p] for p in keep)
                out[nk] = out.get(nk, 0) + v
        return LegElement([self.legs[p] for p in keep], out)

    def to_vector(self) -> dict:
        if self.arity != 1:
            raise DimMismatch("to_vector needs a single leg")
        return {k[0]: v for k, v in self.data.items()}

    def inverse(self) -> LegElement:
        """Two-sided inverse, solved in the tensor product algebra of the legs."""
        return _leg_inverse(self)

    def first_difference(self, other: LegElement):
        """Lexicographically first index where the two elements differ, or None."""
        keys = set(self.data) | set(other.data)
        diff = sorted(k for k in keys if self.data.get(k, 0) != other.data.get(k, 0))
        return diff[0] if diff else None


def leg_product(x: LegElement, y: LegElement) -> LegElement:
    """Leg-wise product; legs must agree."""
    x._check_same(y)
    legs = x.legs
    n = len(legs)
    muls = [leg.mul_basis for leg in legs]
    out: dict = {}
    get = out.get
    if n == 1:
        m0 = muls[0]
        for (i,), a in x.data.items():
            for (j,), b in y.data.items():
                ab = a * b
                for k, c in m0(i, j).items():
                    key = (k,)
                    out[key] = get(key, 0) + ab * c
        return LegElement(legs, out)
    for I, a in x.data.items():
        for J, b in y.data.items():
            parts = []
            for p in range(n):
                r = muls[p](I[p], J[p])
                if not r:
                    break
                parts.append(r)
            else:
                ab = a * b
                if all(len(r) == 1 for r in parts):
                    key = tuple(next(iter(r)) for r in parts)
                    coef = ab
                    for r in parts:
                        coef = coef * next(iter(r.values()))
                    out[key] = get(key, 0) + coef
                    continue
                for combo in itertools.product(*(r.items() for r in parts)):
                    coef = ab
                    for _, c in combo:
                        coef = coef * c
                    key = tuple(k for k, _ in combo)
                    out[key] = get(key, 0) + coef
    return LegElement(legs, out)


def _leg_inverse(x: LegElement) -> LegElement:
    alg = x.legs[0]
    for leg in x.legs[1:]:
        alg = tensor_algebra(alg, leg)
    dims = x.dims
    flat = {}
    for key, v in x.data.items():
        idx = 0
        for k, d in zip(key, dims):
            idx = idx * d + k
        flat[idx] = v
    inv = solve_in_algebra(alg, flat)
    out = {}
    for idx, v in inv.items():
        key = []
        for d in reversed(dims):
            idx, r = divmod(idx, d)
            key.append(r)
        out[tuple(reversed(key))] = v
    return LegElement(x.legs, out)


def worker_count() -> int:
    """Worker cap from HOPFX_THREADS (default 1: single process)."""
    try:
        return max(1, int(os.environ.get("HOPFX_THREADS", "1")))
    except ValueError:
        return 1
