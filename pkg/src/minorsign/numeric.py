"""Exact scalars, dense rational matrices and univariate polynomials.

Everything here works over :class:`fractions.Fraction`. Floats are accepted
as input but converted exactly (every binary float is a dyadic rational);
nothing is rounded or snapped to zero.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property, reduce
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import InputError

Rational = Fraction

__all__ = [
    "Rational",
    "to_rational",
    "sign",
    "Matrix",
    "Polynomial",
    "det",
    "bareiss_det",
    "poly_eval",
    "poly_negate_variable",
    "poly_gcd",
]


def to_rational(value) -> Fraction:
    """Convert ``value`` to a Fraction without loss.

    Accepts ints, Fractions (and other ``numbers.Rational``), finite floats,
    and strings of the form ``"p/q"``, ``"-12"`` or ``"0.125"``.
    """
    if isinstance(value, bool):
        raise InputError(f"booleans are not matrix entries: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise InputError(f"non-finite entry: {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            out = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse {value!r} as an exact rational") from exc
        return out
    raise InputError(f"unsupported entry type {type(value).__name__}: {value!r}")


def sign(a) -> int:
    """Three-way sign: +1, 0 or -1."""
    return (a > 0) - (a < 0)


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    flip = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    flip = -flip
                    break
            else:
                return 0
        row_k = m[k]
        pivot = row_k[k]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
        prev = pivot
    return flip * m[n - 1][n - 1]


class Matrix:
    """Immutable dense square matrix of Fractions.

    Indices are 0-based in the Python API; index sets printed for humans are
    1-based (see :mod:`minorsign.minors`).
    """

    def __init__(self, rows: Iterable[Iterable]):
        grid = tuple(tuple(to_rational(x) for x in row) for row in rows)
        n = len(grid)
        if n == 0:
            raise InputError("matrix must have at least one row")
        for i, row in enumerate(grid):
            if len(row) != n:
                raise InputError(
                    f"matrix is not square: row {i + 1} has {len(row)} entries, expected {n}"
                )
        self._rows = grid
        self.n = n

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int) -> "Matrix":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._rows)
        return f"Matrix([{body}])"

    @cached_property
    def symmetric(self) -> bool:
        r = self._rows
        return all(r[i][j] == r[j][i] for i in range(self.n) for j in range(i + 1, self.n))

    @cached_property
    def integer_form(self) -> tuple[tuple[tuple[int, ...], ...], int]:
        """``(B, L)`` with integer ``B`` and ``L >= 1`` such that ``self == B / L``."""
        denom = reduce(math.lcm, (x.denominator for row in self._rows for x in row), 1)
        ints = tuple(
            tuple(x.numerator * (denom // x.denominator) for x in row) for row in self._rows
        )
        return ints, denom

    def trace(self) -> Fraction:
        return sum((self._rows[i][i] for i in range(self.n)), Fraction(0))

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self._rows))

    def __neg__(self) -> "Matrix":
        return Matrix([[-x for x in row] for row in self._rows])

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __mul__(self, scalar) -> "Matrix":
        c = to_rational(scalar)
        return Matrix([[c * x for x in row] for row in self._rows])

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        cols = list(zip(*other._rows))
        return Matrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self._rows]
        )

    def _check_same(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix) or other.n != self.n:
            raise InputError("matrix dimensions do not agree")

    def submatrix(self, indices: Sequence[int]) -> "Matrix":
        """Principal submatrix on the given 0-based rows/columns."""
        r = self._rows
        return Matrix([[r[i][j] for j in indices] for i in indices])

    def det(self) -> Fraction:
        ints, denom = self.integer_form
        return Fraction(bareiss_det(ints), denom**self.n)

    def inverse(self) -> "Matrix":
        """Exact inverse by Gauss-Jordan elimination over the rationals."""
        n = self.n
        aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self._rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return Matrix([row[n:] for row in aug])


def det(m: Matrix) -> Fraction:
    """Exact determinant of ``m``."""
    return m.det()


class Polynomial:
    """Univariate polynomial with Fraction coefficients, highest degree first.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_rational(c) for c in coeffs]
        i = 0
        while i < len(cs) and cs[i] == 0:
            i += 1
        self.coeffs: tuple[Fraction, ...] = tuple(cs[i:])

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable, leading=1) -> "Polynomial":
        p = cls([leading])
        for r in roots:
            p = p * cls([1, -to_rational(r)])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"{type(self).__name__}([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        d = self.degree
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = d - k
            mag = abs(c)
            body = "" if (mag == 1 and e > 0) else str(mag)
            if e >= 1:
                body += "x" if e == 1 else f"x^{e}"
            terms.append(("-" if c < 0 else "+", body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for s, body in terms[1:]:
            out += f" {s} {body}"
        return out

    def __call__(self, x) -> Fraction:
        return poly_eval(self, x)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        pad = len(a) - len(b)
        return Polynomial(list(a[:pad]) + [x + y for x, y in zip(a[pad:], b)])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = to_rational(other)
            return Polynomial([c * x for x in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        out = Polynomial([1])
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dv = other.coeffs
        lead = dv[0]
        if len(rem) < len(dv):
            return Polynomial(), Polynomial(rem)
        quot = []
        for i in range(len(rem) - len(dv) + 1):
            q = rem[i] / lead
            quot.append(q)
            if q:
                for j in range(1, len(dv)):
                    rem[i + j] -= q * dv[j]
        return Polynomial(quot), Polynomial(rem[len(quot):])

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def derivative(self) -> "Polynomial":
        d = self.degree
        return Polynomial([c * (d - k) for k, c in enumerate(self.coeffs[:-1])])

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        lead = self.coeffs[0]
        return Polynomial([c / lead for c in self.coeffs])

    def trailing_zeros(self) -> int:
        """Multiplicity of 0 as a root."""
        k = 0
        for c in reversed(self.coeffs):
            if c != 0:
                break
            k += 1
        return k

    def shift_down(self, k: int) -> "Polynomial":
        """Divide by ``x**k``; the caller guarantees ``k <= trailing_zeros()``."""
        return Polynomial(self.coeffs[: len(self.coeffs) - k]) if k else self

    def negate_variable(self) -> "Polynomial":
        return poly_negate_variable(self)


def poly_eval(p: Polynomial, x) -> Fraction:
    """Horner evaluation of ``p`` at the exact point ``x``."""
    x = to_rational(x)
    acc = Fraction(0)
    for c in p.coeffs:
        acc = acc * x + c
    return acc


def poly_negate_variable(p: Polynomial) -> Polynomial:
    """Return ``q`` with ``q(x) == p(-x)``."""
    d = p.degree
    return Polynomial([-c if (d - k) % 2 else c for k, c in enumerate(p.coeffs)])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()
