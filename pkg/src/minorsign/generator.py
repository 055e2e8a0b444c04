"""Seeded, verified generation of witness matrices for each class.

Randomness comes from SplitMix64, a fixed 64-bit integer recurrence, so a
given seed yields the same matrices on every platform:

    state += 0x9E3779B97F4A7C15
    z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    out = z ^ (z >> 31)                      (all arithmetic mod 2**64)

Trial ``t`` of a run with seed ``s`` draws from its own stream, seeded with
the first output of ``SplitMix64(s ^ (t * 0xD1B54A32D192ED03 mod 2**64))``.
Trials are therefore independent and can be evaluated in any order.

Every returned matrix has been checked with :func:`minorsign.classes.is_class`;
constructions only make hits likely, they are never trusted.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil, floor
from typing import Callable

from .classes import ALL_CLASSES, Family, MatrixClass, SignPattern, Variant, is_class, required_signs
from .errors import CapacityError, InputError
from .minors import default_cap
from .numeric import Matrix, bareiss_det, sign

log = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_TRIAL_MULT = 0xD1B54A32D192ED03


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]`` (rejection sampling, no modulo bias)."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        span = hi - lo + 1
        if span == 1:
            return lo
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            x = self.next_u64()
            if x < limit:
                return lo + x % span

    def chance(self, num: int, den: int) -> bool:
        return self.randint(0, den - 1) < num

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]

    def shuffled(self, seq) -> list:
        out = list(seq)
        for i in range(len(out) - 1, 0, -1):
            j = self.randint(0, i)
            out[i], out[j] = out[j], out[i]
        return out


def trial_rng(seed: int, trial: int) -> SplitMix64:
    root = SplitMix64((seed ^ (trial * _TRIAL_MULT)) & MASK64)
    return SplitMix64(root.next_u64())


@dataclass(frozen=True)
class EntryRange:
    """Entries ``p / denominator`` with ``lo <= p / denominator <= hi``."""

    lo: int = -3
    hi: int = 3
    denominator: int = 1

    def __post_init__(self):
        if self.hi < self.lo:
            raise InputError(f"empty entry range [{self.lo}, {self.hi}]")
        if self.denominator < 1:
            raise InputError("entry range denominator must be positive")

    @property
    def magnitude(self) -> int:
        return max(abs(self.lo), abs(self.hi), 1)

    def draw(self, rng: SplitMix64) -> Fraction:
        d = self.denominator
        return Fraction(rng.randint(self.lo * d, self.hi * d), d)

    @classmethod
    def parse(cls, text: str) -> "EntryRange":
        """Parse ``"LO:HI"`` or ``"LO:HI:DEN"``."""
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise InputError(f"range must look like LO:HI or LO:HI:DEN, got {text!r}")
        try:
            nums = [int(p) for p in parts]
        except ValueError as exc:
            raise InputError(f"range bounds must be integers, got {text!r}") from exc
        return cls(*nums)

    def __str__(self) -> str:
        base = f"{self.lo}:{self.hi}"
        return base if self.denominator == 1 else f"{base}:{self.denominator}"


@dataclass(frozen=True)
class GenSpec:
    target: MatrixClass
    n: int
    symmetric: bool = False
    entry_range: EntryRange = field(default_factory=EntryRange)
    seed: int = 0
    max_trials: int = 10_000
    count: int = 1
    cap: int | None = None


@dataclass
class Witnesses:
    """Verified matrices from one :func:`generate` call, in trial order."""

    spec: GenSpec
    matrices: list[Matrix]
    trials: int
    trial_indices: list[int] = field(default_factory=list)

    @property
    def exhausted(self) -> bool:
        return len(self.matrices) < self.spec.count

    def __iter__(self):
        return iter(self.matrices)

    def __len__(self) -> int:
        return len(self.matrices)


# -- small exact helpers -----------------------------------------------------


def _det(rows) -> Fraction:
    if not rows:
        return Fraction(1)
    from math import lcm

    denom = 1
    for row in rows:
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                denom = lcm(denom, x.denominator)
    if denom == 1:
        return Fraction(bareiss_det([[int(x) for x in row] for row in rows]))
    ints = [[int(x * denom) for x in row] for row in rows]
    return Fraction(bareiss_det(ints), denom ** len(rows))


def _random_grid(rng: SplitMix64, n: int, rng_range: EntryRange, symmetric: bool) -> list[list[Fraction]]:
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if symmetric and j < i:
                g[i][j] = g[j][i]
            else:
                g[i][j] = rng_range.draw(rng)
    return g


def _pick(rng, lo, lo_closed, hi, hi_closed, spread: int, want_endpoint: bool):
    """Choose a value in the interval bounded by ``lo``/``hi`` (None = unbounded)."""
    closed = [x for x, c in ((lo, lo_closed), (hi, hi_closed)) if x is not None and c]
    if want_endpoint and closed:
        return rng.choice(closed)
    if lo is not None:
        i0 = ceil(lo) if lo_closed else floor(lo) + 1
    if hi is not None:
        i1 = floor(hi) if hi_closed else ceil(hi) - 1
    if lo is not None and hi is not None:
        if i0 <= i1:
            return Fraction(rng.randint(i0, min(i1, i0 + spread)))
        k = rng.randint(2, 6)
        return lo + (hi - lo) * Fraction(rng.randint(1, k - 1), k)
    if lo is not None:
        return Fraction(rng.randint(i0, i0 + spread))
    if hi is not None:
        return Fraction(rng.randint(i1 - spread, i1))
    return Fraction(rng.randint(-spread, spread))


class _Interval:
    """Intersection of half-lines in one unknown; tracks open/closed ends."""

    def __init__(self):
        self.lo = self.hi = None
        self.lo_closed = self.hi_closed = False
        self.empty = False

    def lower(self, x, closed: bool):
        if self.lo is None or x > self.lo or (x == self.lo and not closed):
            self.lo, self.lo_closed = x, closed

    def upper(self, x, closed: bool):
        if self.hi is None or x < self.hi or (x == self.hi and not closed):
            self.hi, self.hi_closed = x, closed

    def require(self, coef, const, allowed: frozenset[int]):
        """Constrain ``t`` so that ``sign(coef * t + const)`` lies in ``allowed``."""
        if coef == 0:
            if sign(const) not in allowed:
                self.empty = True
            return
        nonzero = [s for s in allowed if s != 0]
        if len(nonzero) != 1:
            raise AssertionError("sign sets are {s} or {s, 0}")
        root = -const / coef
        closed = 0 in allowed
        # sign(coef * t + const) = sign(coef) * sign(t - root)
        if nonzero[0] * sign(coef) > 0:
            self.lower(root, closed)
        else:
            self.upper(root, closed)

    def feasible(self) -> bool:
        if self.empty:
            return False
        if self.lo is None or self.hi is None:
            return True
        return self.lo < self.hi or (self.lo == self.hi and self.lo_closed and self.hi_closed)

    def pick(self, rng, spread: int, want_endpoint: bool):
        return _pick(rng, self.lo, self.lo_closed, self.hi, self.hi_closed, spread, want_endpoint)


def _wants_zeros(rng, pattern: SignPattern) -> bool:
    return pattern.cls.variant in (Variant.WEAK, Variant.SUB_ZERO) and rng.chance(1, 2)


# -- constructions -----------------------------------------------------------


def _border_minors(rng, pattern: SignPattern, rr: EntryRange, symmetric: bool, retries: int = 6):
    """Grow a matrix one row/column at a time, solving for each new diagonal entry.

    With the leading block fixed, every principal minor that contains the new
    index m is ``a * det(A[S]) + h_S`` in the new diagonal entry ``a``, so the
    sign requirements of all of them cut out an interval for ``a``.
    """
    n = pattern.n
    spread = 2 * rr.magnitude
    zeros = _wants_zeros(rng, pattern)
    first = _Interval()
    first.require(Fraction(1), Fraction(0), pattern.allowed(1))
    g = [[first.pick(rng, spread, zeros)]]
    minors = {(): Fraction(1), (0,): g[0][0]}
    for m in range(1, n):
        for _ in range(retries):
            col = [rr.draw(rng) for _ in range(m)]
            row = list(col) if symmetric else [rr.draw(rng) for _ in range(m)]
            iv = _Interval()
            consts = {}
            for k in range(0, m + 1):
                allowed = pattern.allowed(k + 1)
                for s in combinations(range(m), k):
                    sub = [[g[i][j] for j in s] + [col[i]] for i in s]
                    sub.append([row[j] for j in s] + [Fraction(0)])
                    h = _det(sub)
                    consts[s] = h
                    iv.require(minors[s], h, allowed)
                    if iv.empty:
                        break
                if not iv.feasible():
                    break
            if iv.feasible():
                break
        else:
            return None
        a = iv.pick(rng, spread, zeros and rng.chance(1, 2))
        for i in range(m):
            g[i].append(col[i])
        g.append(row + [a])
        for s, h in consts.items():
            minors[s + (m,)] = a * minors[s] + h
    return g


def _border_sums(rng, pattern: SignPattern, rr: EntryRange, symmetric: bool, base=None):
    """Random leading block plus one border, with the corner solved from the E_k signs."""
    n = pattern.n
    spread = 2 * rr.magnitude
    m = n - 1
    if base is None:
        base = _random_grid(rng, m, rr, symmetric)
    col = [rr.draw(rng) for _ in range(m)]
    row = list(col) if symmetric else [rr.draw(rng) for _ in range(m)]
    # E_k(final) = E_k(base) + sum_{|S| = k-1} (a * det(base[S]) + h_S)
    coef = [Fraction(0)] * (n + 1)
    const = [Fraction(0)] * (n + 1)
    for k in range(0, m + 1):
        for s in combinations(range(m), k):
            d = _det([[base[i][j] for j in s] for i in s])
            if k >= 1:
                const[k] += d
            sub = [[base[i][j] for j in s] + [col[i]] for i in s]
            sub.append([row[j] for j in s] + [Fraction(0)])
            coef[k + 1] += d
            const[k + 1] += _det(sub)
    iv = _Interval()
    for k in range(1, n + 1):
        iv.require(coef[k], const[k], pattern.allowed(k))
        if not iv.feasible():
            return None
    a = iv.pick(rng, spread, _wants_zeros(rng, pattern))
    g = [list(r) + [col[i]] for i, r in enumerate(base)]
    g.append(row + [a])
    return g


def _minor_sums_signs(values: list[int], n: int) -> list[Fraction]:
    # elementary symmetric functions e_1..e_n of the given eigenvalues
    e = [Fraction(1)] + [Fraction(0)] * n
    for v in values:
        for k in range(n, 0, -1):
            e[k] += e[k - 1] * v
    return e[1:]


def _sum_signs_ok(pattern: SignPattern, sums) -> bool:
    return all(sign(x) in pattern.allowed(k) for k, x in enumerate(sums, start=1))


def _companion(rng, pattern: SignPattern, rr: EntryRange):
    """Companion matrix with E_k of the required signs, scrambled by unimodular similarity."""
    n = pattern.n
    spread = 3 * rr.magnitude
    zeros = _wants_zeros(rng, pattern)
    sums = []
    for k in range(1, n + 1):
        allowed = sorted(pattern.allowed(k))
        s = rng.choice(allowed) if (zeros and 0 in allowed) else max(allowed, key=abs)
        sums.append(s * rng.randint(1, spread))
    coeffs = [(-1) ** k * e for k, e in enumerate(sums, start=1)]
    # x^n + a_1 x^(n-1) + ... + a_n; last row holds -a_n ... -a_1
    g = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        g[i][i + 1] = 1
    for j in range(n):
        g[n - 1][j] = -coeffs[n - 1 - j]
    for _ in range(rng.randint(n, 3 * n)):
        i, j = rng.randint(0, n - 1), rng.randint(0, n - 1)
        if i == j:
            continue
        t = rng.choice((-1, 1, 2, -2))
        # T = I + t e_i e_j^T: row_i += t row_j, then col_j -= t col_i
        g[i] = [x + t * y for x, y in zip(g[i], g[j])]
        for r in range(n):
            g[r][j] -= t * g[r][i]
    perm = rng.shuffled(range(n))
    return [[g[perm[i]][perm[j]] for j in range(n)] for i in range(n)]


def _cayley_orthogonal(rng, n: int) -> Matrix:
    k = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-2, 2)
            k[i][j], k[j][i] = v, -v
    km = Matrix(k)
    eye = Matrix.identity(n)
    return (eye - km) @ (eye + km).inverse()


def _spectral(rng, pattern: SignPattern, rr: EntryRange):
    """Symmetric matrix Q diag(eigs) Q^T with a rational orthogonal Q."""
    n = pattern.n
    spread = 3 * rr.magnitude
    negatives = rng.randint(0, n)
    eigs = []
    for i in range(n):
        if pattern.cls.variant is Variant.SUB_ZERO and rng.chance(1, 4):
            eigs.append(0)
            continue
        mag = rng.randint(1, spread)
        eigs.append(-mag if i < negatives else mag)
    if not _sum_signs_ok(pattern, _minor_sums_signs(eigs, n)):
        return None
    q = _cayley_orthogonal(rng, n)
    return (q @ Matrix.diagonal(eigs) @ q.transpose()).rows


def _gram(rng, pattern: SignPattern, rr: EntryRange, symmetric: bool):
    """B B^T (+ d I, + a skew part when not symmetric): P, weak P or P0 candidates."""
    n = pattern.n
    singular = pattern.cls.variant is Variant.SUB_ZERO
    rank = rng.randint(1, n - 1) if (singular and n > 1) else n
    b = [[rr.draw(rng) for _ in range(rank)] for _ in range(n)]
    g = [[sum(b[i][t] * b[j][t] for t in range(rank)) for j in range(n)] for i in range(n)]
    if not singular:
        d = rng.randint(0 if pattern.cls.variant is Variant.WEAK else 1, rr.magnitude)
        for i in range(n):
            g[i][i] += d
    if not symmetric:
        for i in range(n):
            for j in range(i + 1, n):
                v = rr.draw(rng)
                g[i][j] += v
                g[j][i] -= v
    return g


def _structured_n(rng, pattern: SignPattern, rr: EntryRange, symmetric: bool):
    """D1 (s I - J) D2 with positive diagonals D1, D2 and 0 <= s <= 1.

    Its k x k principal minors have the sign of s**(k-1) * (s - k): all negative
    for 0 < s < 1, zero at size 1 and negative above for s = 1 (weak N), and a
    rank-one N0 matrix for s = 0.
    """
    n = pattern.n
    den = rng.randint(2, 6)
    lo, hi = 1, den - 1
    if pattern.cls.variant in (Variant.WEAK, Variant.SUB_ZERO):
        hi = den
    if pattern.cls.variant is Variant.SUB_ZERO:
        lo = 0
    s = Fraction(rng.randint(lo, hi), den)
    d1 = [rng.randint(1, rr.magnitude) for _ in range(n)]
    d2 = d1 if symmetric else [rng.randint(1, rr.magnitude) for _ in range(n)]
    return [[d1[i] * ((s if i == j else 0) - 1) * d2[j] for j in range(n)] for i in range(n)]


def _structured_almost_n(rng, pattern: SignPattern, rr: EntryRange, symmetric: bool):
    """Almost-N witness: leading block s I - J (0 < s < 1), constant border b, corner a.

    For an index set S of size m inside the leading block, the minor on
    S + {last} equals det(block[S]) * (a - g_m) with g_m = m b**2 / (s - m) < 0,
    and g_m increases with m. Choosing g_(n-2) < a < g_(n-1) makes every proper
    minor negative and the determinant positive.
    """
    n = pattern.n
    den = rng.randint(2, 6)
    s = Fraction(rng.randint(1, den - 1), den)
    b = Fraction(rng.choice((-1, 1)) * rng.randint(1, rr.magnitude))
    g = lambda m: m * b * b / (s - m)  # noqa: E731
    iv = _Interval()
    iv.upper(g(n - 1), False)
    if n >= 3:
        iv.lower(g(n - 2), False)
    a = iv.pick(rng, 2 * rr.magnitude, False)
    m = [[(s if i == j else 0) - 1 for j in range(n - 1)] + [b] for i in range(n - 1)]
    m.append([b] * (n - 1) + [a])
    d1 = [rng.randint(1, rr.magnitude) for _ in range(n)]
    d2 = d1 if symmetric else [rng.randint(1, rr.magnitude) for _ in range(n)]
    perm = rng.shuffled(range(n))
    return [[d1[i] * m[perm[i]][perm[j]] * d2[j] for j in range(n)] for i in range(n)]


def _scrambled(strategy):
    """Run a symmetric construction, then break symmetry with D A D^-1 (minors unchanged)."""

    def run(rng, n, rr, sym):
        g = strategy(rng, n, rr, True)
        if g is None:
            return None
        d = [rng.randint(1, rr.magnitude + 1) for _ in range(n)]
        return [[x * Fraction(d[i], d[j]) for j, x in enumerate(row)] for i, row in enumerate(g)]

    return run


def _inverse_of(rng, n: int, rr: EntryRange, symmetric: bool, source: MatrixClass):
    """Invert a bordered witness of ``source``: almost-P and N are exchanged by inversion."""
    g = _border_minors(rng, required_signs(source, n), rr, symmetric)
    if g is None:
        return None
    try:
        return Matrix(g).inverse().rows
    except ZeroDivisionError:
        return None


# A strategy maps (rng, n, entry range, symmetric) to a candidate grid or None.
Strategy = Callable[[SplitMix64, int, EntryRange, bool], object]

_NEGATED_FAMILY = {Family.PN: Family.N, Family.QR: Family.R}
_MINOR_TWIN = {Family.Q: Family.P, Family.R: Family.N}


def _negate(strategy: Strategy) -> Strategy:
    def run(rng, n, rr, sym):
        g = strategy(rng, n, rr, sym)
        return None if g is None else [[-x for x in row] for row in g]

    return run


def _strategies(target: MatrixClass) -> list[Strategy]:
    fam, variant = target.family, target.variant
    if fam in _NEGATED_FAMILY:
        # A is in a PN (QR) class exactly when -A is in the matching N (R) class.
        source = MatrixClass.of(_NEGATED_FAMILY[fam], variant)
        return [_negate(s) for s in _strategies(source)]

    def pattern(n):
        return required_signs(target, n)

    def sample(rng, n, rr, sym):
        return _random_grid(rng, n, rr, sym)

    if fam.uses_minors:
        border = lambda rng, n, rr, sym: _border_minors(rng, pattern(n), rr, sym)  # noqa: E731
        out: list[Strategy] = [border, border, sample]
        if fam is Family.P and variant is not Variant.ALMOST:
            out.append(lambda rng, n, rr, sym: _gram(rng, pattern(n), rr, sym))
        if target is MatrixClass.ALMOST_P:
            out += [lambda rng, n, rr, sym: _inverse_of(rng, n, rr, sym, MatrixClass.N)] * 2
        if fam is Family.N and variant is not Variant.ALMOST:
            out += [lambda rng, n, rr, sym: _structured_n(rng, pattern(n), rr, sym)] * 2
        if target is MatrixClass.N:
            out.append(lambda rng, n, rr, sym: _inverse_of(rng, n, rr, sym, MatrixClass.ALMOST_P))
        if target is MatrixClass.ALMOST_N:
            out += [lambda rng, n, rr, sym: _structured_almost_n(rng, pattern(n), rr, sym)] * 2
        return out

    border = lambda rng, n, rr, sym: _border_sums(rng, pattern(n), rr, sym)  # noqa: E731

    def eigen(rng, n, rr, sym):
        return _spectral(rng, pattern(n), rr) if sym else _companion(rng, pattern(n), rr)

    out = [border, border, sample, eigen]
    # every P (N) class sits inside the Q (R) class of the same variant
    out += _strategies(MatrixClass.of(_MINOR_TWIN[fam], variant))
    return out


def _check_n(target: MatrixClass, n: int, cap: int | None) -> None:
    if n < 1:
        raise InputError("dimension must be at least 1")
    cap = default_cap() if cap is None else cap
    if target.family.uses_minors and n > cap:
        raise CapacityError(n, cap)


def _single_entry(rng, pattern: SignPattern, rr: EntryRange):
    iv = _Interval()
    iv.require(Fraction(1), Fraction(0), pattern.allowed(1))
    return [[iv.pick(rng, 2 * rr.magnitude, _wants_zeros(rng, pattern))]]


def generate(spec: GenSpec) -> Witnesses:
    """Deterministically search for ``spec.count`` verified witnesses of ``spec.target``.

    Stops early once enough are found; otherwise returns what ``max_trials``
    produced (check ``.exhausted``).
    """
    _check_n(spec.target, spec.n, spec.cap)
    pattern = required_signs(spec.target, spec.n)
    strategies = _strategies(spec.target)
    found: list[Matrix] = []
    hits: list[int] = []
    trial = 0
    while trial < spec.max_trials and len(found) < spec.count:
        rng = trial_rng(spec.seed, trial)
        trial += 1
        if spec.n == 1:
            # the single entry is the only minor, the determinant and E_1
            grid = _single_entry(rng, pattern, spec.entry_range)
        else:
            strategy = strategies[rng.randint(0, len(strategies) - 1)]
            if not spec.symmetric and rng.chance(1, 4):
                strategy = _scrambled(strategy)
            grid = strategy(rng, spec.n, spec.entry_range, spec.symmetric)
        if grid is None:
            continue
        m = Matrix(grid)
        if spec.symmetric and not m.symmetric:
            continue
        if is_class(m, spec.target, cap=spec.cap):
            found.append(m)
            hits.append(trial - 1)
    if len(found) < spec.count:
        log.info(
            "trials exhausted for %s (n=%d): %d of %d witnesses after %d trials",
            spec.target.value, spec.n, len(found), spec.count, trial,
        )
    return Witnesses(spec, found, trial, hits)


def coverage_report(
    n: int,
    budget: int,
    *,
    seed: int = 0,
    symmetric: bool = False,
    entry_range: EntryRange | None = None,
    stop_at: int | None = None,
) -> dict[MatrixClass, int]:
    """Witness counts per class after ``budget`` trials each (zero marks a gap, not a failure)."""
    rr = entry_range or EntryRange()
    out = {}
    for c in ALL_CLASSES:
        spec = GenSpec(c, n, symmetric, rr, seed, max_trials=budget, count=stop_at or budget)
        out[c] = len(generate(spec))
    return out
