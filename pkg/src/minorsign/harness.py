"""Batch consistency run: generate witnesses, classify, predict and verify.

A task is one (dimension, class, general-or-symmetric) cell. Tasks are
independent and seeded from the run seed, so running them in a process pool
gives the same summary as running them one after another.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from .classes import ALL_CLASSES, MatrixClass, classify, inclusion_violations
from .documents import matrix_entries
from .generator import MASK64, EntryRange, GenSpec, SplitMix64, generate
from .numeric import Matrix
from .spectra import check_consistency

log = logging.getLogger(__name__)

CASES = ("general", "symmetric")


@dataclass(frozen=True)
class Task:
    n: int
    cls: MatrixClass
    case: str
    count: int
    seed: int
    max_trials: int
    entry_range: EntryRange
    cap: int | None


@dataclass
class TaskResult:
    n: int
    cls: MatrixClass
    case: str
    requested: int
    found: int
    trials: int
    inconsistent: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)


def task_seed(seed: int, n: int, cls: MatrixClass, case: str) -> int:
    """Derive a per-task seed from the run seed (stable across runs and platforms)."""
    key = (n << 16) | (ALL_CLASSES.index(cls) << 1) | CASES.index(case)
    return SplitMix64(seed ^ (key * 0x9E3779B97F4A7C15 & MASK64)).next_u64()


def _roundtrip_problem(m: Matrix, members) -> str | None:
    """Almost-P and N must be exchanged by inversion."""
    if MatrixClass.ALMOST_P in members or MatrixClass.N in members:
        inv_members = classify(m.inverse()).members
        if MatrixClass.ALMOST_P in members and MatrixClass.N not in inv_members:
            return "inverse of an almost-P matrix is not N"
        if MatrixClass.N in members and MatrixClass.ALMOST_P not in inv_members:
            return "inverse of an N matrix is not almost-P"
    return None


def check_matrix(m: Matrix, cap: int | None = None) -> list[str]:
    """Every problem found for one matrix (empty list when all claims hold)."""
    rep = check_consistency(m, cap=cap)
    problems = []
    for ch in rep.violations():
        problems.append(f"{ch.cls.value} ({ch.case}): expected {ch.prediction.describe()}, got {rep.roots}")
    if not rep.descartes_ok:
        problems.append(f"Descartes bound violated: var=({rep.var_pos},{rep.var_neg}) roots={rep.roots}")
    if rep.char_poly_paths_agree is False:
        problems.append("characteristic polynomial paths disagree")
    for a, b in inclusion_violations(rep.classes):
        problems.append(f"{a.value} member but not {b.value}")
    if rep.classes.complete:
        issue = _roundtrip_problem(m, rep.classes.members)
        if issue:
            problems.append(issue)
    return problems


def run_task(task: Task) -> TaskResult:
    spec = GenSpec(
        task.cls,
        task.n,
        task.case == "symmetric",
        task.entry_range,
        task.seed,
        max_trials=task.max_trials,
        count=task.count,
        cap=task.cap,
    )
    wit = generate(spec)
    res = TaskResult(task.n, task.cls, task.case, task.count, len(wit), wit.trials)
    for m in wit:
        problems = check_matrix(m, cap=task.cap)
        if problems:
            res.inconsistent += 1
            if len(res.failures) < 3:
                res.failures.append({"entries": matrix_entries(m), "problems": problems})
    return res


@dataclass
class SuiteResult:
    seed: int
    n_min: int
    n_max: int
    per_class: int
    results: list[TaskResult]

    @property
    def inconsistencies(self) -> int:
        return sum(r.inconsistent for r in self.results)

    @property
    def checked(self) -> int:
        return sum(r.found for r in self.results)

    def coverage(self) -> dict[tuple[MatrixClass, int], int]:
        """Witnesses per (class, n), general and symmetric combined."""
        out: dict[tuple[MatrixClass, int], int] = {}
        for r in self.results:
            out[(r.cls, r.n)] = out.get((r.cls, r.n), 0) + r.found
        return out

    def gaps(self) -> list[tuple[MatrixClass, int, str]]:
        return [(r.cls, r.n, r.case) for r in self.results if r.requested and r.found == 0]

    def to_json(self) -> dict[str, Any]:
        per_class = {}
        for c in ALL_CLASSES:
            rs = [r for r in self.results if r.cls is c]
            per_class[c.value] = {
                "checked": sum(r.found for r in rs),
                "passed": sum(r.found - r.inconsistent for r in rs),
                "failed": sum(r.inconsistent for r in rs),
                "by_n": {
                    str(n): {
                        case: next((r.found for r in rs if r.n == n and r.case == case), 0)
                        for case in CASES
                    }
                    for n in range(self.n_min, self.n_max + 1)
                },
            }
        return {
            "schema": "minorsign/1",
            "command": "suite",
            "seed": self.seed,
            "n_min": self.n_min,
            "n_max": self.n_max,
            "per_class": self.per_class,
            "checked": self.checked,
            "inconsistencies": self.inconsistencies,
            "classes": per_class,
            "coverage_gaps": [
                {"class": c.value, "n": n, "case": case} for c, n, case in self.gaps()
            ],
            "failures": [
                {"class": r.cls.value, "n": r.n, "case": r.case, **f}
                for r in self.results
                for f in r.failures
            ],
        }


def build_tasks(
    n_max: int,
    per_class: int,
    seed: int,
    *,
    n_min: int = 1,
    entry_range: EntryRange | None = None,
    cap: int | None = None,
    trials_per_witness: int = 20,
) -> list[Task]:
    rr = entry_range or EntryRange()
    tasks = []
    for n in range(n_min, n_max + 1):
        for c in ALL_CLASSES:
            # split each per-class budget between general and symmetric witnesses
            counts = {"general": (per_class + 1) // 2, "symmetric": per_class // 2}
            for case in CASES:
                k = counts[case]
                tasks.append(
                    Task(n, c, case, k, task_seed(seed, n, c, case), max(k * trials_per_witness, 1), rr, cap)
                )
    return tasks


def run_suite(
    n_max: int,
    per_class: int,
    seed: int = 0,
    *,
    n_min: int = 1,
    jobs: int = 1,
    entry_range: EntryRange | None = None,
    cap: int | None = None,
) -> SuiteResult:
    tasks = build_tasks(n_max, per_class, seed, n_min=n_min, entry_range=entry_range, cap=cap)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_task, tasks, chunksize=4))
    else:
        results = [run_task(t) for t in tasks]
    out = SuiteResult(seed, n_min, n_max, per_class, results)
    log.info("suite: %d matrices checked, %d inconsistent", out.checked, out.inconsistencies)
    return out
