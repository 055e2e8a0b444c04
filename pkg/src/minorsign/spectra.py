"""Eigenvalue-count predictions for each class and their exact verification.

Predictions transcribe, class by class, how many real eigenvalues of each
sign a matrix may have. Verification never computes eigenvalues: it counts
real roots of the characteristic polynomial with Sturm sequences, after a
square-free decomposition so multiplicities are honoured.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .classes import ClassSet, Family, MatrixClass, Variant, classify
from .descartes import var
from .errors import ContractViolation, InputError
from .minors import CharPoly, char_poly_faddeev, char_poly_from_minors
from .numeric import Matrix, Polynomial, poly_gcd, poly_negate_variable, sign

INF = math.inf
POSITIVE_AXIS = (Fraction(0), INF)
NEGATIVE_AXIS = (-INF, Fraction(0))
REAL_LINE = (-INF, INF)


# -- exact real-root counting ------------------------------------------------


def _primitive(coeffs: Sequence[Fraction]) -> list[int]:
    denom = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    ints = [c.numerator * (denom // c.denominator) for c in coeffs]
    g = math.gcd(*ints) if ints else 0
    return [x // g for x in ints] if g > 1 else ints


def _positive_rem(a: list[int], b: list[int]) -> list[int]:
    """Primitive positive multiple of the remainder of ``a`` by ``b``."""
    r = list(a)
    lb = b[0]
    steps = 0
    while len(r) >= len(b) and r:
        lead = r[0]
        r = [lb * x for x in r]
        for j, y in enumerate(b):
            r[j] -= lead * y
        r.pop(0)
        steps += 1
        while r and r[0] == 0:
            r.pop(0)
    if lb < 0 and steps % 2:
        r = [-x for x in r]
    g = math.gcd(*r) if r else 0
    return [x // g for x in r] if g > 1 else r


def _int_derivative(p: list[int]) -> list[int]:
    d = len(p) - 1
    out = [c * (d - k) for k, c in enumerate(p[:-1])]
    while out and out[0] == 0:
        out.pop(0)
    return out


def _int_chain(f: Polynomial) -> list[list[int]]:
    p0 = _primitive(f.coeffs)
    chain = [p0]
    p1 = _int_derivative(p0)
    while p1:
        chain.append(p1)
        p1 = [-x for x in _positive_rem(chain[-2], chain[-1])]
    return chain


def sturm_chain(f: Polynomial) -> list[Polynomial]:
    """Sturm sequence f, f', -rem(f, f'), ... up to positive constant factors."""
    if f.is_zero():
        raise InputError("Sturm chain of the zero polynomial is undefined")
    return [Polynomial(p) for p in _int_chain(f)]


def _sign_at(p: list[int], x) -> int:
    if x == INF:
        return sign(p[0])
    if x == -INF:
        return sign(p[0]) * (-1 if (len(p) - 1) % 2 else 1)
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    # sign of den**d * p(num/den) with den > 0: homogenised Horner, sum c_k num^(d-k) den^k
    acc = 0
    scale = 1
    for c in p:
        acc = acc * num + c * scale
        scale *= den
    return sign(acc)


def _variations_at(chain: list[list[int]], x) -> int:
    return var(_sign_at(p, x) for p in chain)


def count_real_roots(f: Polynomial, interval=REAL_LINE) -> int:
    """Number of distinct real roots of ``f`` in the open ``interval``.

    Endpoints are Fractions (or anything exact) or +/- ``math.inf``; neither
    may be a root of ``f``.
    """
    lo, hi = interval
    if not (lo < hi):
        raise InputError(f"empty interval ({lo}, {hi})")
    if f.is_zero():
        raise InputError("root count of the zero polynomial is undefined")
    chain = _int_chain(f)
    for x in (lo, hi):
        if x not in (INF, -INF) and _sign_at(chain[0], x) == 0:
            raise ContractViolation(f"interval endpoint {x} is a root of {f}")
    return _variations_at(chain, lo) - _variations_at(chain, hi)


def squarefree_decompose(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: ``f = lc * prod(g_i ** i)`` with monic, square-free, coprime ``g_i``.

    Constant factors are omitted, so a constant ``f`` yields an empty list.
    """
    if f.is_zero():
        raise InputError("square-free decomposition of the zero polynomial is undefined")
    if f.degree == 0:
        return []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f // a
    c = df // a
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        b = b // g
        c = d // g
        d = c - b.derivative()
        if g.degree > 0:
            out.append((g, i))
        i += 1
    return out


@dataclass(frozen=True)
class RootCount:
    """Real roots by sign, with multiplicity; ``nonreal`` counts roots, not pairs."""

    pos: int
    neg: int
    zero: int
    nonreal: int

    @property
    def n(self) -> int:
        return self.pos + self.neg + self.zero + self.nonreal


def root_count_with_multiplicity(f: Polynomial) -> RootCount:
    if f.is_zero():
        raise InputError("root count of the zero polynomial is undefined")
    n = f.degree
    zero = f.trailing_zeros()
    g = f.shift_down(zero)
    pos = neg = 0
    if g.degree > 0:
        for factor, mult in squarefree_decompose(g):
            pos += mult * count_real_roots(factor, POSITIVE_AXIS)
            neg += mult * count_real_roots(factor, NEGATIVE_AXIS)
    nonreal = n - pos - neg - zero
    if nonreal < 0 or nonreal % 2:
        raise ContractViolation(f"impossible root count for {f}: {pos}/{neg}/{zero}")
    return RootCount(pos, neg, zero, nonreal)


# -- predictions -------------------------------------------------------------

_POS, _NEG = "positive", "negative"

# (constrained side, allowed counts on that side, zero eigenvalues allowed in the symmetric case)
_RULES: dict[tuple[str, Variant], tuple[str, tuple[int, ...], bool]] = {
    ("pq", Variant.STRICT): (_NEG, (0,), False),
    ("pq", Variant.WEAK): (_NEG, (0,), False),
    ("pq", Variant.SUB_ZERO): (_NEG, (0,), True),
    ("pq", Variant.ALMOST): (_NEG, (1,), False),
    ("nr", Variant.STRICT): (_NEG, (1,), False),
    ("nr", Variant.WEAK): (_NEG, (1,), False),
    ("nr", Variant.SUB_ZERO): (_NEG, (0, 1), True),
    ("nr", Variant.ALMOST): (_NEG, (0, 2), False),
    ("pnqr", Variant.STRICT): (_POS, (1,), False),
    ("pnqr", Variant.WEAK): (_POS, (1,), False),
    ("pnqr", Variant.SUB_ZERO): (_POS, (0, 1), True),
    ("pnqr", Variant.ALMOST): (_POS, (0, 2), False),
}

_GROUP = {
    Family.P: "pq",
    Family.Q: "pq",
    Family.N: "nr",
    Family.R: "nr",
    Family.PN: "pnqr",
    Family.QR: "pnqr",
}


@dataclass(frozen=True)
class Outcome:
    """A box of admissible (pos, neg, zero) counts; the rest must be nonreal."""

    pos: range
    neg: range
    zero: range
    nonreal_allowed: bool

    def admits(self, rc: RootCount) -> bool:
        return (
            rc.pos in self.pos
            and rc.neg in self.neg
            and rc.zero in self.zero
            and (self.nonreal_allowed or rc.nonreal == 0)
        )


@dataclass(frozen=True)
class EigenPrediction:
    """Admissible real-eigenvalue counts for one class, general or symmetric.

    ``n`` may be ``None`` for a symbolic prediction (used to render the table).
    """

    cls: MatrixClass
    symmetric: bool
    n: int | None
    side: str
    counts: tuple[int, ...]
    zero_allowed: bool

    @property
    def allowed_outcomes(self) -> tuple[Outcome, ...]:
        if self.n is None:
            raise ValueError("symbolic prediction has no concrete outcomes")
        n = self.n
        full = range(0, n + 1)
        out = []
        for c in self.counts:
            if c > n:
                continue
            fixed = range(c, c + 1)
            if self.symmetric:
                zero = range(0, n - c + 1) if self.zero_allowed else range(0, 1)
                other = range(0, n - c + 1)
                nonreal = False
            else:
                zero, other, nonreal = full, full, True
            if self.side == _POS:
                out.append(Outcome(fixed, other, zero, nonreal))
            else:
                out.append(Outcome(other, fixed, zero, nonreal))
        return tuple(out)

    def admits(self, rc: RootCount) -> bool:
        return any(o.admits(rc) for o in self.allowed_outcomes)

    def describe(self) -> str:
        side = self.side
        if not self.symmetric:
            if self.counts == (0, 1):
                return f"≤ 1 {side}"
            return " or ".join(f"{c} {side}" for c in self.counts)
        other = _NEG if side == _POS else _POS
        if self.zero_allowed:
            # the complement of the constrained side then also holds the zero eigenvalues
            other = "non negative" if other == _POS else "non positive"
        parts = []
        for c in self.counts:
            rest = "n" if c == 0 else f"n−{c}"
            parts.append(f"{rest} {other}" if c == 0 else f"{rest} {other} and {c} {side}")
        return ", or ".join(parts)


def predict(c: MatrixClass, symmetric: bool, n: int | None) -> EigenPrediction:
    if n is not None and n < 1:
        raise InputError("dimension must be at least 1")
    side, counts, zero_ok = _RULES[(_GROUP[c.family], c.variant)]
    return EigenPrediction(c, bool(symmetric), n, side, counts, zero_ok)


# -- consistency report ------------------------------------------------------


@dataclass(frozen=True)
class ClassCheck:
    cls: MatrixClass
    prediction: EigenPrediction
    holds: bool

    @property
    def case(self) -> str:
        return "symmetric" if self.prediction.symmetric else "general"


@dataclass(frozen=True)
class EigenCountReport:
    matrix: Matrix
    classes: ClassSet
    char_poly: CharPoly
    char_poly_paths_agree: bool | None
    var_pos: int
    var_neg: int
    roots: RootCount
    descartes_ok: bool
    checks: tuple[ClassCheck, ...]

    @property
    def complete(self) -> bool:
        return self.classes.complete

    @property
    def consistent(self) -> bool:
        return (
            all(ch.holds for ch in self.checks)
            and self.descartes_ok
            and self.char_poly_paths_agree is not False
        )

    def violations(self) -> list[ClassCheck]:
        return [ch for ch in self.checks if not ch.holds]


def descartes_compatible(roots: RootCount, var_pos: int, var_neg: int, symmetric: bool) -> bool:
    """Root counts never exceed sign variations and share their parity; exact when all real."""
    ok = (
        roots.pos <= var_pos
        and (var_pos - roots.pos) % 2 == 0
        and roots.neg <= var_neg
        and (var_neg - roots.neg) % 2 == 0
    )
    if symmetric:
        ok = ok and roots.nonreal == 0 and roots.pos == var_pos and roots.neg == var_neg
    return ok


def check_consistency(a: Matrix, cap: int | None = None) -> EigenCountReport:
    """Classify ``a``, predict eigenvalue counts for every member class and verify them.

    Above the minor cap the minor-based classes are skipped (the report is
    then marked incomplete) and the two characteristic-polynomial routes are
    not cross-checked.
    """
    classes = classify(a, cap=cap)
    cp = char_poly_faddeev(a)
    agree = None
    if classes.table is not None:
        agree = char_poly_from_minors(classes.table) == cp
    var_pos = var(cp.coeffs)
    var_neg = var(poly_negate_variable(cp).coeffs)
    roots = root_count_with_multiplicity(cp)
    checks = []
    for c in classes:
        cases = (False, True) if a.symmetric else (False,)
        for sym in cases:
            pred = predict(c, sym, a.n)
            checks.append(ClassCheck(c, pred, pred.admits(roots)))
    return EigenCountReport(
        matrix=a,
        classes=classes,
        char_poly=cp,
        char_poly_paths_agree=agree,
        var_pos=var_pos,
        var_neg=var_neg,
        roots=roots,
        descartes_ok=descartes_compatible(roots, var_pos, var_neg, a.symmetric),
        checks=tuple(checks),
    )
