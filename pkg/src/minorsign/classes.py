"""The 24 principal-minor sign classes and exact membership tests.

Six families (P, N, PN on individual principal minors; Q, R, QR on the sums
E_k of k x k principal minors) each come in four variants:

* strict   -- every size-k quantity has the family sign s_k
* almost   -- as strict below size n, determinant has sign -s_n
* weak     -- sizes below n may also be zero, determinant has sign s_n
* sub-zero -- every size may have sign s_k or be zero

with s_k = +1 for P/Q, -1 for N/R and (-1)**(k-1) for PN/QR.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .errors import CapacityError, InputError
from .minors import IndexSet, MinorTable, all_principal_minors, default_cap, minor_sums_fast
from .numeric import Matrix, bareiss_det, sign


class Family(enum.Enum):
    P = "p"
    N = "n"
    PN = "pn"
    Q = "q"
    R = "r"
    QR = "qr"

    @property
    def uses_minors(self) -> bool:
        return self in (Family.P, Family.N, Family.PN)

    def family_sign(self, k: int) -> int:
        if self in (Family.P, Family.Q):
            return 1
        if self in (Family.N, Family.R):
            return -1
        return 1 if k % 2 == 1 else -1

    @property
    def counterpart(self) -> "Family":
        """Sum-based family containing this minor-based one (P -> Q, N -> R, PN -> QR)."""
        return {Family.P: Family.Q, Family.N: Family.R, Family.PN: Family.QR}.get(self, self)


class Variant(enum.Enum):
    STRICT = "strict"
    ALMOST = "almost"
    WEAK = "weak"
    SUB_ZERO = "sub-zero"


class MatrixClass(enum.Enum):
    """One of the 24 classes; the value is the kebab-case name used in I/O."""

    P = "p"
    ALMOST_P = "almost-p"
    WEAK_P = "weak-p"
    P0 = "p0"
    N = "n"
    ALMOST_N = "almost-n"
    WEAK_N = "weak-n"
    N0 = "n0"
    PN = "pn"
    ALMOST_PN = "almost-pn"
    WEAK_PN = "weak-pn"
    PN0 = "pn0"
    Q = "q"
    ALMOST_Q = "almost-q"
    WEAK_Q = "weak-q"
    Q0 = "q0"
    R = "r"
    ALMOST_R = "almost-r"
    WEAK_R = "weak-r"
    R0 = "r0"
    QR = "qr"
    ALMOST_QR = "almost-qr"
    WEAK_QR = "weak-qr"
    QR0 = "qr0"

    @property
    def family(self) -> Family:
        return _PARTS[self][0]

    @property
    def variant(self) -> Variant:
        return _PARTS[self][1]

    @classmethod
    def of(cls, family: Family, variant: Variant) -> "MatrixClass":
        return _BY_PARTS[(family, variant)]

    @classmethod
    def parse(cls, name: str) -> "MatrixClass":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(c.value for c in cls)
            raise InputError(f"unknown class {name!r}; valid names: {valid}") from None

    @property
    def counterpart(self) -> "MatrixClass":
        """The sum-based class implied by this one (itself for Q/R/QR classes)."""
        return MatrixClass.of(self.family.counterpart, self.variant)

    @property
    def label(self) -> str:
        fam = self.family.name
        if self.variant is Variant.STRICT:
            return fam
        if self.variant is Variant.SUB_ZERO:
            return f"{fam}0" if len(fam) == 1 else f"({fam})0"
        return f"{self.variant.value} {fam}"


def _split(c: MatrixClass) -> tuple[Family, Variant]:
    name = c.value
    if name.startswith("almost-"):
        return Family(name[7:]), Variant.ALMOST
    if name.startswith("weak-"):
        return Family(name[5:]), Variant.WEAK
    if name.endswith("0"):
        return Family(name[:-1]), Variant.SUB_ZERO
    return Family(name), Variant.STRICT


_PARTS = {c: _split(c) for c in MatrixClass}
_BY_PARTS = {v: k for k, v in _PARTS.items()}

ALL_CLASSES: tuple[MatrixClass, ...] = tuple(MatrixClass)


@dataclass(frozen=True)
class SignPattern:
    """Declarative sign requirements of a class at dimension ``n``.

    ``others[k]`` is the set of signs allowed for each size-k quantity with
    k < n (a single principal minor, or E_k for sum families); ``det`` is the
    set allowed for the determinant (the unique n x n minor, equal to E_n).
    """

    cls: MatrixClass
    n: int
    on_minors: bool
    others: dict[int, frozenset[int]]
    det: frozenset[int]

    def allowed(self, k: int) -> frozenset[int]:
        return self.det if k == self.n else self.others[k]


def required_signs(c: MatrixClass, n: int) -> SignPattern:
    if n < 1:
        raise InputError("dimension must be at least 1")
    fam, var = c.family, c.variant
    others = {}
    for k in range(1, n):
        s = fam.family_sign(k)
        others[k] = frozenset({s}) if var in (Variant.STRICT, Variant.ALMOST) else frozenset({s, 0})
    s_n = fam.family_sign(n)
    det = {
        Variant.STRICT: frozenset({s_n}),
        Variant.ALMOST: frozenset({-s_n}),
        Variant.WEAK: frozenset({s_n}),
        Variant.SUB_ZERO: frozenset({s_n, 0}),
    }[var]
    return SignPattern(c, n, fam.uses_minors, others, det)


@dataclass(frozen=True)
class Violation:
    """First witness that a matrix is not in a class.

    ``where`` is the 1-based index set of the offending minor, or the size k
    of the offending sum E_k.
    """

    cls: MatrixClass
    where: IndexSet | int
    value: Fraction
    allowed: frozenset[int]

    @property
    def sign(self) -> int:
        return sign(self.value)

    def describe(self) -> str:
        allowed = "/".join({1: "+", 0: "0", -1: "-"}[s] for s in sorted(self.allowed, reverse=True))
        if isinstance(self.where, int):
            what = f"E_{self.where}"
        else:
            what = "minor{" + ",".join(map(str, self.where)) + "}"
        return f"{what} = {self.value} has sign {self.sign:+d}, required {allowed}"


@dataclass(frozen=True)
class Verdict:
    member: bool
    evidence: Violation | None = None

    def __bool__(self) -> bool:
        return self.member


@lru_cache(maxsize=None)
def _lex_index_sets(n: int) -> tuple[IndexSet, ...]:
    # Plain lexicographic order over all nonempty subsets: (1,) < (1,2) < (1,2,3) < (1,3) < (2,) ...
    subsets = [s for k in range(1, n + 1) for s in combinations(range(1, n + 1), k)]
    return tuple(sorted(subsets))


def _first_minor_violation(
    pattern: SignPattern, minors: Iterator[tuple[IndexSet, Fraction]]
) -> Violation | None:
    for s, value in minors:
        allowed = pattern.allowed(len(s))
        if sign(value) not in allowed:
            return Violation(pattern.cls, s, value, allowed)
    return None


def _first_sum_violation(pattern: SignPattern, sums: tuple[Fraction, ...]) -> Violation | None:
    for k, value in enumerate(sums, start=1):
        allowed = pattern.allowed(k)
        if sign(value) not in allowed:
            return Violation(pattern.cls, k, value, allowed)
    return None


def _lazy_minors(a: Matrix) -> Iterator[tuple[IndexSet, Fraction]]:
    ints, denom = a.integer_form
    for s in _lex_index_sets(a.n):
        sub = [[ints[i - 1][j - 1] for j in s] for i in s]
        yield s, Fraction(bareiss_det(sub), denom ** len(s))


def is_class(a: Matrix, c: MatrixClass, cap: int | None = None) -> Verdict:
    """Single-class membership, stopping at the first violation."""
    pattern = required_signs(c, a.n)
    if pattern.on_minors:
        cap = default_cap() if cap is None else cap
        if a.n > cap:
            raise CapacityError(a.n, cap)
        bad = _first_minor_violation(pattern, _lazy_minors(a))
    else:
        bad = _first_sum_violation(pattern, minor_sums_fast(a))
    return Verdict(bad is None, bad)


@dataclass(frozen=True)
class ClassSet:
    """Classes a matrix belongs to, with the first violation for each rejected class.

    Minor-based classes are left in ``not_evaluated`` when the dimension is
    above the enumeration cap.
    """

    n: int
    members: frozenset[MatrixClass]
    evidence: dict[MatrixClass, Violation] = field(default_factory=dict)
    not_evaluated: frozenset[MatrixClass] = frozenset()
    table: MinorTable | None = field(default=None, repr=False, compare=False)
    sums: tuple[Fraction, ...] = field(default=(), repr=False, compare=False)

    def __contains__(self, c: MatrixClass) -> bool:
        return c in self.members

    def __iter__(self) -> Iterator[MatrixClass]:
        return (c for c in ALL_CLASSES if c in self.members)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def complete(self) -> bool:
        return not self.not_evaluated

    @property
    def names(self) -> list[str]:
        return [c.value for c in self]


def classify(a: Matrix, cap: int | None = None, table: MinorTable | None = None) -> ClassSet:
    """Evaluate all 24 classes exactly."""
    cap = default_cap() if cap is None else cap
    if table is None and a.n <= cap:
        table = all_principal_minors(a, cap=cap)
    sums = table.sums if table is not None else minor_sums_fast(a)
    lex = None
    if table is not None:
        lex = [(s, table.entries[s]) for s in _lex_index_sets(a.n)]

    members = set()
    evidence = {}
    skipped = set()
    for c in ALL_CLASSES:
        pattern = required_signs(c, a.n)
        if pattern.on_minors:
            if lex is None:
                skipped.add(c)
                continue
            bad = _first_minor_violation(pattern, iter(lex))
        else:
            bad = _first_sum_violation(pattern, sums)
        if bad is None:
            members.add(c)
        else:
            evidence[c] = bad
    return ClassSet(a.n, frozenset(members), evidence, frozenset(skipped), table, tuple(sums))


_CHAINS = ((Variant.STRICT, Variant.WEAK), (Variant.WEAK, Variant.SUB_ZERO))


def inclusion_violations(cs: ClassSet) -> list[tuple[MatrixClass, MatrixClass]]:
    """Pairs ``(a, b)`` where membership in ``a`` should imply ``b`` but does not.

    Covers the variant chains strict -> weak -> sub-zero inside every family and
    the family inclusions P -> Q, N -> R, PN -> QR for each variant.
    """
    out = []
    for c in cs:
        implied = [MatrixClass.of(c.family, b) for a, b in _CHAINS if c.variant is a]
        if c.family.uses_minors:
            implied.append(c.counterpart)
        for d in implied:
            if d not in cs.not_evaluated and d not in cs:
                out.append((c, d))
    return out
