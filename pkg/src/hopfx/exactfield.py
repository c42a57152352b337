"""Exact scalars: rationals and elements of cyclotomic fields Q(zeta_N).

Rationals are ``gmpy2.mpq`` values.  Elements of Q(zeta_N) for N > 1 are
:class:`Cyclotomic` instances holding the coefficient vector of a polynomial
in zeta_N reduced modulo the N-th cyclotomic polynomial.

A :class:`Field` fixes the conductor for a session.  It coerces, parses and
prints scalars; every structure built on top of it shares that conductor.
"""

from __future__ import annotations

import re
from functools import lru_cache

from gmpy2 import mpq

__all__ = [
    "ConductorMismatch",
    "Cyclotomic",
    "Field",
    "ParseError",
    "QQ",
    "cyclotomic_polynomial",
    "euler_phi",
    "format_scalar",
    "mpq",
    "scalar_arith",
    "scalar_parse",
]


class ConductorMismatch(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(out) - 1, -1, -1):
        c = num[shift + len(den) - 1]
        out[shift] = c
        if c:
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coordinates of z^m for 0 <= m < 2*phi(n), used by products."""
    deg = euler_phi(n)
    phi = cyclotomic_polynomial(n)
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(max(2 * deg - 1, n)):
        rows.append(tuple(cur))
        # multiply by z, reduce z^deg = -sum phi[i] z^i
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


class Cyclotomic:
    """Element of Q(zeta_N) in the power basis 1, z, ..., z^(phi(N)-1).

    Values are immutable and hashable.  Rationals (``int``, ``mpq``,
    ``Fraction``) combine freely with any conductor; two cyclotomic values
    must share their conductor.
    """

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor: int, coeffs):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        deg = euler_phi(conductor)
        cs = [mpq(c) for c in coeffs]
        if len(cs) > deg:
            cs = _reduce(conductor, cs)
        cs += [mpq(0)] * (deg - len(cs))
        self.conductor = conductor
        self.coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def rational(cls, conductor: int, value) -> Cyclotomic:
        return cls(conductor, [mpq(value)])

    @classmethod
    def zeta(cls, conductor: int, power: int = 1) -> Cyclotomic:
        power %= conductor
        return cls(conductor, _power_table(conductor)[power])

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def _coerce(self, other) -> Cyclotomic | None:
        if isinstance(other, Cyclotomic):
            if other.conductor != self.conductor:
                raise ConductorMismatch(
                    f"conductor {self.conductor} vs {other.conductor}"
                )
            return other
        if isinstance(other, (int, type(mpq(0)))) or hasattr(other, "denominator"):
            return Cyclotomic(self.conductor, [mpq(other)])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.conductor, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.conductor, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        deg = len(self.coeffs)
        prod = [mpq(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return Cyclotomic(self.conductor, _reduce(self.conductor, prod))

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        if not self:
            raise ZeroDivisionError("division by zero in Q(zeta_%d)" % self.conductor)
        deg = len(self.coeffs)
        if deg == 1:
            return Cyclotomic(self.conductor, [1 / self.coeffs[0]])
        # columns: self * z^j; solve M c = e_0
        z = Cyclotomic.zeta(self.conductor)
        cols, cur = [], self
        for _ in range(deg):
            cols.append(cur.coeffs)
            cur = cur * z
        matrix = [[cols[j][i] for j in range(deg)] for i in range(deg)]
        rhs = [mpq(1)] + [mpq(0)] * (deg - 1)
        return Cyclotomic(self.conductor, _solve_dense(matrix, rhs))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclotomic(self.conductor, [1])
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.conductor == other.conductor and self.coeffs == other.coeffs
        try:
            o = self._coerce(other)
        except ConductorMismatch:
            return False
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self._hash is None:
            # rational values hash like the rational so dict keys agree
            self._hash = hash(self.coeffs[0]) if self.is_rational() else hash(
                (self.conductor, self.coeffs)
            )
        return self._hash

    def __repr__(self):
        return f"Cyclotomic({self.conductor}, {format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _reduce(n: int, coeffs: list) -> list:
    deg = euler_phi(n)
    table = _power_table(n)
    if len(coeffs) > len(table):
        coeffs = _fold_mod_n(n, coeffs)
    out = [mpq(0)] * deg
    for m, c in enumerate(coeffs):
        if c:
            row = table[m]
            for i in range(deg):
                if row[i]:
                    out[i] += c * row[i]
    return out


def _fold_mod_n(n: int, coeffs: list) -> list:
    out = [mpq(0)] * n
    for m, c in enumerate(coeffs):
        out[m % n] += c
    return out


def _solve_dense(matrix: list[list], rhs: list) -> list:
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# text form

_TOKEN = re.compile(r"\s*(?:(\d+)|([+\-*/^])|(z))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        tokens.append((m.group(m.lastindex), start))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


def parse_terms(text: str) -> dict[int, mpq]:
    """Parse scalar text into {power of z: rational coefficient}."""
    toks = _tokenize(text)
    i = 0
    out: dict[int, mpq] = {}

    def peek():
        return toks[i][0]

    def take(expected=None):
        nonlocal i
        tok, pos = toks[i]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, got {tok or 'end of input'!r}", pos)
        i += 1
        return tok, pos

    def posint():
        tok, pos = take()
        if not tok.isdigit():
            raise ParseError("expected integer", pos)
        return int(tok)

    def power():
        take("z")
        if peek() == "^":
            take("^")
            return posint()
        return 1

    def term(sign: int):
        if peek() == "z":
            return power(), mpq(sign)
        tok, pos = toks[i]
        if not tok.isdigit():
            raise ParseError("expected term", pos)
        value = mpq(posint())
        if peek() == "/":
            _, dpos = take("/")
            den = posint()
            if den == 0:
                raise ParseError("zero denominator", dpos)
            value /= den
        if peek() == "*":
            take("*")
            return power(), sign * value
        return 0, sign * value

    sign = 1
    if peek() in "+-" and peek():
        sign = -1 if take()[0] == "-" else 1
    while True:
        p, c = term(sign)
        out[p] = out.get(p, mpq(0)) + c
        tok, pos = toks[i]
        if tok == "":
            break
        if tok not in "+-":
            raise ParseError(f"unexpected token {tok!r}", pos)
        take()
        sign = -1 if tok == "-" else 1
    return out


def format_scalar(x) -> str:
    if isinstance(x, Cyclotomic):
        coeffs = x.coeffs
    else:
        coeffs = (mpq(x),)
    parts = []
    for p, c in enumerate(coeffs):
        if not c:
            continue
        neg = c < 0
        mag = -c if neg else c
        if p == 0:
            body = str(mag)
        else:
            zpart = "z" if p == 1 else f"z^{p}"
            body = zpart if mag == 1 and parts else f"{mag}*{zpart}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# session field


class Field:
    """Q(zeta_N) for a fixed conductor N.  For N = 1 elements are plain ``mpq``."""

    def __init__(self, conductor: int = 1):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        self.conductor = conductor
        self.degree = euler_phi(conductor)

    def __eq__(self, other):
        return isinstance(other, Field) and other.conductor == self.conductor

    def __hash__(self):
        return hash(("Field", self.conductor))

    def __repr__(self):
        return f"Field({self.conductor})"

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def z(self):
        return self.zeta(1)

    def zeta(self, power: int = 1):
        if self.conductor == 1:
            return mpq(1)
        return Cyclotomic.zeta(self.conductor, power)

    def __call__(self, value):
        """Coerce an int, rational, string or Cyclotomic into this field."""
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Cyclotomic):
            if value.conductor != self.conductor:
                if value.is_rational():
                    value = value.coeffs[0]
                else:
                    raise ConductorMismatch(
                        f"conductor {value.conductor} in a Field({self.conductor}) session"
                    )
            else:
                return value.coeffs[0] if self.conductor == 1 else value
        if self.conductor == 1:
            return mpq(value)
        return Cyclotomic(self.conductor, [mpq(value)])

    def parse(self, text: str):
        terms = parse_terms(text)
        if self.conductor == 1:
            return sum(terms.values(), mpq(0))
        table = _power_table(self.conductor)
        coeffs = [mpq(0)] * self.degree
        for p, c in terms.items():
            row = table[p % self.conductor]
            for i in range(self.degree):
                coeffs[i] += c * row[i]
        return Cyclotomic(self.conductor, coeffs)

    def format(self, x) -> str:
        return format_scalar(x)

    def check(self, x) -> None:
        if isinstance(x, Cyclotomic) and x.conductor != self.conductor:
            raise ConductorMismatch(f"conductor {x.conductor} in Field({self.conductor})")


QQ = Field(1)


def scalar_parse(text: str, conductor: int) -> Cyclotomic:
    """Parse text into a canonical :class:`Cyclotomic` of the given conductor."""
    x = Field(conductor).parse(text)
    if isinstance(x, Cyclotomic):
        return x
    return Cyclotomic(conductor, [x])


def scalar_arith(a, b, op: str):
    if isinstance(a, Cyclotomic) and isinstance(b, Cyclotomic) and a.conductor != b.conductor:
        raise ConductorMismatch(f"conductor {a.conductor} vs {b.conductor}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")
