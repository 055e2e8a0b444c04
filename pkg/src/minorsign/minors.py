"""Principal minors, their sums E_k and the characteristic polynomial.

Two independent routes to the characteristic polynomial are provided:
enumerating every principal minor (``char_poly_from_minors``) and the
Faddeev-LeVerrier trace recurrence (``char_poly_faddeev``). They must agree
coefficient for coefficient.

Index sets in this module are 1-based, matching how minors are reported.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator

from .errors import CapacityError, InputError
from .numeric import Matrix, Polynomial, bareiss_det

DEFAULT_CAP = 12
CAP_ENV_VAR = "MINORSIGN_CAP"

IndexSet = tuple[int, ...]


def default_cap() -> int:
    """Minor-enumeration cap, honouring the ``MINORSIGN_CAP`` environment variable."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InputError(f"{CAP_ENV_VAR} must be an integer, got {raw!r}") from exc
    if cap < 0:
        raise InputError(f"{CAP_ENV_VAR} must be non-negative, got {cap}")
    return cap


def index_set(indices: Iterable[int], n: int) -> IndexSet:
    """Validate and normalise a 1-based index set for an ``n x n`` matrix."""
    s = tuple(sorted(indices))
    if not s:
        raise InputError("index set must be nonempty")
    if len(set(s)) != len(s):
        raise InputError(f"index set has repeated indices: {s}")
    if s[0] < 1 or s[-1] > n:
        raise InputError(f"index set {s} out of range 1..{n}")
    return s


def index_sets(n: int, k: int) -> list[IndexSet]:
    """All k-subsets of {1..n} in colexicographic order."""
    return sorted(combinations(range(1, n + 1), k), key=lambda s: s[::-1])


def iter_index_sets(n: int) -> Iterator[IndexSet]:
    """Every nonempty subset, grouped by cardinality, colex within a group."""
    for k in range(1, n + 1):
        yield from index_sets(n, k)


def _minor_from_ints(ints, denom: int, s: IndexSet) -> Fraction:
    sub = [[ints[i - 1][j - 1] for j in s] for i in s]
    return Fraction(bareiss_det(sub), denom ** len(s))


def principal_minor(a: Matrix, s: Iterable[int]) -> Fraction:
    """Determinant of the submatrix of ``a`` on rows and columns ``s`` (1-based)."""
    s = index_set(s, a.n)
    ints, denom = a.integer_form
    return _minor_from_ints(ints, denom, s)


@dataclass(frozen=True)
class MinorTable:
    """All ``2**n - 1`` principal minors of a matrix plus their sums by size.

    ``sums[k - 1]`` holds E_k, the sum of all k x k principal minors.
    """

    n: int
    entries: dict[IndexSet, Fraction]
    sums: tuple[Fraction, ...]

    def minor(self, s: Iterable[int]) -> Fraction:
        return self.entries[index_set(s, self.n)]

    def of_size(self, k: int) -> Iterator[tuple[IndexSet, Fraction]]:
        return ((s, v) for s, v in self.entries.items() if len(s) == k)


def all_principal_minors(a: Matrix, cap: int | None = None) -> MinorTable:
    """Enumerate every principal minor of ``a``; raises CapacityError above ``cap``."""
    cap = default_cap() if cap is None else cap
    n = a.n
    if n > cap:
        raise CapacityError(n, cap)
    ints, denom = a.integer_form
    entries: dict[IndexSet, Fraction] = {}
    sums = []
    for k in range(1, n + 1):
        total = 0
        for s in index_sets(n, k):
            # Integer determinant first so the size-k sum is a single division.
            sub = [[ints[i - 1][j - 1] for j in s] for i in s]
            d = bareiss_det(sub)
            entries[s] = Fraction(d, denom**k)
            total += d
        sums.append(Fraction(total, denom**k))
    return MinorTable(n, entries, tuple(sums))


class CharPoly(Polynomial):
    """Monic characteristic polynomial ``det(x I - A)``, coefficients a_0 = 1, a_1, ..., a_n."""

    __slots__ = ()

    def __init__(self, coeffs: Iterable):
        coeffs = list(coeffs)
        super().__init__(coeffs)
        if not self.coeffs or self.coeffs[0] != 1 or len(self.coeffs) != len(coeffs):
            raise InputError("characteristic polynomial must be monic with a_0 = 1")

    @property
    def n(self) -> int:
        return self.degree

    def a(self, k: int) -> Fraction:
        return self.coeffs[k]

    def minor_sums(self) -> tuple[Fraction, ...]:
        """Recover E_1..E_n via E_k = (-1)^k a_k."""
        return tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs) if k > 0)


def char_poly_from_minors(table: MinorTable) -> CharPoly:
    """Characteristic polynomial from minor sums: a_k = (-1)^k E_k."""
    return CharPoly([1] + [e if k % 2 == 0 else -e for k, e in enumerate(table.sums, start=1)])


def _faddeev_integer(b: tuple[tuple[int, ...], ...]) -> list[int]:
    n = len(b)
    cols_b = b
    m = [[0] * n for _ in range(n)]
    coeffs = [1]
    for k in range(1, n + 1):
        # M_k = B M_{k-1} + c_{k-1} I
        prev_cols = list(zip(*m))
        m = [[sum(x * y for x, y in zip(row, col)) for col in prev_cols] for row in cols_b]
        for i in range(n):
            m[i][i] += coeffs[-1]
        # tr(B M_k) without forming the product
        tr = sum(b[i][j] * m[j][i] for i in range(n) for j in range(n))
        c, r = divmod(-tr, k)
        assert r == 0, "Faddeev-LeVerrier division must be exact over the integers"
        coeffs.append(c)
    return coeffs


def char_poly_faddeev(a: Matrix) -> CharPoly:
    """Characteristic polynomial by the Faddeev-LeVerrier recurrence.

    Runs on the integer matrix ``B = L * A`` where every step divides exactly,
    then rescales a_k by ``L**-k``.
    """
    ints, denom = a.integer_form
    coeffs = _faddeev_integer(ints)
    return CharPoly(Fraction(c, denom**k) for k, c in enumerate(coeffs))


def minor_sums_fast(a: Matrix) -> tuple[Fraction, ...]:
    """E_1..E_n without enumerating minors (via the Faddeev-LeVerrier coefficients)."""
    return char_poly_faddeev(a).minor_sums()
