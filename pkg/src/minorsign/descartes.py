"""Sign variations and Descartes bounds on the number of positive/negative roots."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .errors import InputError
from .numeric import Polynomial, poly_negate_variable, sign


def var(seq: Iterable) -> int:
    """Number of sign changes in ``seq`` once zeros are dropped.

    The all-zero (or empty) sequence has no sign changes.
    """
    changes = 0
    last = 0
    for x in seq:
        s = sign(x)
        if s == 0:
            continue
        if last and s != last:
            changes += 1
        last = s
    return changes


def _parity_candidates(v: int) -> tuple[int, ...]:
    return tuple(range(v, -1, -2))


@dataclass(frozen=True)
class DescartesBound:
    var_pos: int
    var_neg: int

    @property
    def pos_root_candidates(self) -> tuple[int, ...]:
        """Possible positive-root counts, largest first."""
        return _parity_candidates(self.var_pos)

    @property
    def neg_root_candidates(self) -> tuple[int, ...]:
        return _parity_candidates(self.var_neg)


def descartes_bounds(p: Polynomial) -> DescartesBound:
    if p.is_zero():
        raise InputError("Descartes bounds are undefined for the zero polynomial")
    return DescartesBound(var(p.coeffs), var(poly_negate_variable(p).coeffs))


def exact_count_if_all_real(p: Polynomial) -> int:
    """Positive-root count (with multiplicity) of a polynomial known to have only real roots.

    The caller vouches for real-rootedness; nothing here checks it.
    """
    return var(p.coeffs)


class Conclusion(enum.Enum):
    EXACTLY_ONE_POS = "exactly-one-positive"
    NO_POS = "no-positive"
    INDETERMINATE_POS = "indeterminate-positive"
    EXACTLY_ONE_NEG = "exactly-one-negative"
    NO_NEG = "no-negative"
    INDETERMINATE_NEG = "indeterminate-negative"


@dataclass(frozen=True)
class CorollaryConclusion:
    positive: Conclusion
    negative: Conclusion
    pos_candidates: tuple[int, ...]
    neg_candidates: tuple[int, ...]


def corollary_conclusion(bound: DescartesBound) -> CorollaryConclusion:
    """What Descartes' rule pins down on each side.

    A variation count of 0 or 1 fixes the number of roots on that side; anything
    larger only fixes its parity, so the candidate counts are reported instead.
    """
    pos = {0: Conclusion.NO_POS, 1: Conclusion.EXACTLY_ONE_POS}.get(
        bound.var_pos, Conclusion.INDETERMINATE_POS
    )
    neg = {0: Conclusion.NO_NEG, 1: Conclusion.EXACTLY_ONE_NEG}.get(
        bound.var_neg, Conclusion.INDETERMINATE_NEG
    )
    return CorollaryConclusion(pos, neg, bound.pos_root_candidates, bound.neg_root_candidates)
