"""Command line front end: ``minorsign classify | verify | hunt | table | suite``.

Exit codes:
    0  success
    1  a class prediction failed, or expected_classes did not match
    2  bad input (parse error, non-square matrix, unknown class name)
    3  minor-enumeration cap exceeded (partial Q/R/QR results are printed)
    4  hunt ran out of trials before finding --count witnesses
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Sequence

from . import __version__
from .classes import ALL_CLASSES, Family, MatrixClass, Variant, classify
from .documents import (
    DocumentError,
    MatrixDocument,
    classify_report,
    dumps,
    parse_documents,
    verify_report,
)
from .errors import CapacityError, InputError
from .generator import EntryRange, GenSpec, generate
from .harness import run_suite
from .spectra import check_consistency, predict

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP, EXIT_EXHAUSTED = 0, 1, 2, 3, 4

log = logging.getLogger("minorsign")


def _read_input(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _format_hint(args) -> str | None:
    if args.format:
        return args.format
    if args.path and args.path.lower().endswith(".csv"):
        return "csv"
    return None


def _load(args) -> tuple[list[MatrixDocument], bool]:
    return parse_documents(_read_input(args.path), _format_hint(args))


def _emit(args, reports: list[dict[str, Any]], as_array: bool) -> None:
    if args.pretty:
        sys.stdout.write("\n".join(_pretty_report(r) for r in reports))
    else:
        sys.stdout.write(dumps(reports if as_array else reports[0]))


def _pretty_report(rep: dict[str, Any]) -> str:
    inp = rep["input"]
    lines = []
    title = inp.get("name") or "matrix"
    lines.append(f"{title}  (n = {inp['n']}, {'symmetric' if inp['symmetric'] else 'not symmetric'})")
    width = max(len(x) for row in inp["entries"] for x in row)
    for row in inp["entries"]:
        lines.append("  [ " + "  ".join(x.rjust(width) for x in row) + " ]")
    cls = rep["classes"]
    lines.append("classes:        " + (", ".join(cls["members"]) or "(none)"))
    if cls["not_evaluated"]:
        lines.append("not evaluated:  " + ", ".join(cls["not_evaluated"]))
    lines.append("E_1..E_n:       " + ", ".join(rep["minor_sums"]))
    if "char_poly" in rep:
        lines.append("char poly:      " + ", ".join(rep["char_poly"]))
        lines.append(f"Var(C(x)) = {rep['var']['pos']}, Var(C(-x)) = {rep['var']['neg']}")
        r = rep["roots"]
        lines.append(f"roots:          {r['pos']} positive, {r['neg']} negative, {r['zero']} zero, {r['nonreal']} nonreal")
        for p in rep["predictions"]:
            mark = "ok  " if p["verified"] else "FAIL"
            lines.append(f"  {mark} {p['class']:<10} {p['case']:<9} {p['prediction']}")
        lines.append(f"consistent:     {str(rep['consistent']).lower()}")
    if "expected_classes" in rep:
        ex = rep["expected_classes"]
        if ex["match"]:
            lines.append("expected classes: match")
        else:
            lines.append("expected classes: MISMATCH")
            for c in ex["missing"]:
                lines.append(f"  - {c}  (expected, not found)")
            for c in ex["unexpected"]:
                lines.append(f"  + {c}  (found, not expected)")
    return "\n".join(lines) + "\n"


def _status(reports: list[dict[str, Any]]) -> int:
    failed = any(
        (r.get("expected_classes") and not r["expected_classes"]["match"]) or r.get("consistent") is False
        for r in reports
    )
    if failed:
        return EXIT_FAIL
    if any(not r["complete"] for r in reports):
        return EXIT_CAP
    return EXIT_OK


def _report_diff_to_stderr(reports: list[dict[str, Any]]) -> None:
    for r in reports:
        ex = r.get("expected_classes")
        if ex and not ex["match"]:
            name = r["input"].get("name") or "matrix"
            print(
                f"{name}: expected_classes mismatch; missing: {', '.join(ex['missing']) or '-'}; "
                f"unexpected: {', '.join(ex['unexpected']) or '-'}",
                file=sys.stderr,
            )


def cmd_classify(args) -> int:
    docs, as_array = _load(args)
    reports = [classify_report(d, classify(d.matrix, cap=args.cap)) for d in docs]
    _emit(args, reports, as_array)
    _report_diff_to_stderr(reports)
    code = _status(reports)
    if code == EXIT_CAP:
        print("minor-enumeration cap exceeded: P/N/PN classes not evaluated", file=sys.stderr)
    return code


def cmd_verify(args) -> int:
    docs, as_array = _load(args)
    reports = []
    for d in docs:
        rep = check_consistency(d.matrix, cap=args.cap)
        if rep.char_poly_paths_agree is not None:
            log.info(
                "%s: minor-sum and Faddeev-LeVerrier characteristic polynomials %s",
                d.name or "matrix",
                "agree" if rep.char_poly_paths_agree else "DISAGREE",
            )
        reports.append(verify_report(d, rep))
    _emit(args, reports, as_array)
    _report_diff_to_stderr(reports)
    code = _status(reports)
    if code == EXIT_CAP:
        print("minor-enumeration cap exceeded: P/N/PN classes not evaluated", file=sys.stderr)
    return code


def cmd_hunt(args) -> int:
    target = MatrixClass.parse(args.cls)
    rr = EntryRange.parse(args.range)
    spec = GenSpec(
        target,
        args.n,
        args.symmetric,
        rr,
        args.seed,
        max_trials=args.max_trials,
        count=args.count,
        cap=args.cap,
    )
    wit = generate(spec)
    docs = []
    for idx, (m, trial) in enumerate(zip(wit.matrices, wit.trial_indices)):
        found = classify(m, cap=args.cap)
        docs.append(
            MatrixDocument(
                m,
                name=f"{target.value}-n{args.n}-seed{args.seed}-{idx}",
                expected_classes=tuple(found),
                extra={
                    "provenance": {
                        "class": target.value,
                        "n": args.n,
                        "symmetric": args.symmetric,
                        "seed": args.seed,
                        "range": str(rr),
                        "trial": trial,
                    }
                },
            ).to_json()
        )
    sys.stdout.write(dumps(docs))
    if wit.exhausted:
        print(
            f"trials exhausted: {len(wit)} of {args.count} witnesses for {target.value} "
            f"(n={args.n}, seed={args.seed}) after {wit.trials} trials",
            file=sys.stderr,
        )
        return EXIT_EXHAUSTED
    return EXIT_OK


def table_rows() -> list[tuple[str, str, str]]:
    """Rows of the eigenvalue table, derived from ``predict`` for symbolic n.

    Classes whose general and symmetric predictions coincide share a row.
    """
    rows: list[tuple[list[str], str, str]] = []
    groups = ((Family.Q, Family.P), (Family.R, Family.N), (Family.QR, Family.PN))
    order = (Variant.STRICT, Variant.WEAK, Variant.SUB_ZERO, Variant.ALMOST)
    for fams in groups:
        for fam in fams:
            for variant in order:
                c = MatrixClass.of(fam, variant)
                key = (predict(c, False, None).describe(), predict(c, True, None).describe())
                for row in rows:
                    if (row[1], row[2]) == key and _same_group(row[0][0], c):
                        row[0].append(c.label)
                        break
                else:
                    rows.append(([c.label], *key))
    return [(" or ".join(labels), g, s) for labels, g, s in rows]


def _same_group(label: str, c: MatrixClass) -> bool:
    first = next(x for x in ALL_CLASSES if x.label == label)
    groups = ({Family.P, Family.Q}, {Family.N, Family.R}, {Family.PN, Family.QR})
    return any(first.family in g and c.family in g for g in groups)


def cmd_table(args) -> int:
    rows = [("Type of matrix", "General case", "Symmetric case")] + table_rows()
    widths = [max(len(r[i]) for r in rows) for i in range(3)]
    sep = "+" + "+".join("-" * (w + 2) for w in widths) + "+"
    out = [sep]
    for i, r in enumerate(rows):
        out.append("| " + " | ".join(x.ljust(w) for x, w in zip(r, widths)) + " |")
        if i == 0:
            out.append(sep.replace("-", "="))
    out.append(sep)
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_suite(args) -> int:
    rr = EntryRange.parse(args.range)
    res = run_suite(
        args.n_max,
        args.per_class,
        args.seed,
        n_min=args.n_min,
        jobs=args.jobs,
        entry_range=rr,
        cap=args.cap,
    )
    summary = res.to_json()
    if args.pretty:
        lines = [
            f"suite seed={res.seed} n={res.n_min}..{res.n_max} per-class={res.per_class}",
            f"{'class':<10} {'checked':>8} {'passed':>8} {'failed':>8}",
        ]
        for name, row in summary["classes"].items():
            lines.append(f"{name:<10} {row['checked']:>8} {row['passed']:>8} {row['failed']:>8}")
        lines.append(f"total checked: {res.checked}, inconsistencies: {res.inconsistencies}")
        if summary["coverage_gaps"]:
            lines.append("coverage gaps (no witness found):")
            for g in summary["coverage_gaps"]:
                lines.append(f"  {g['class']} n={g['n']} {g['case']}")
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(dumps(summary))
    return EXIT_OK if res.inconsistencies == 0 else EXIT_FAIL


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _pos_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


_GLOBAL_DEFAULTS = {"pretty": False, "cap": None, "seed": 0, "verbose": False}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a value given before the subcommand from being reset by the subparser
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help="human-readable output")
    common.add_argument("--cap", type=_nonneg_int, default=argparse.SUPPRESS, help="minor-enumeration cap (default 12 or $MINORSIGN_CAP)")
    common.add_argument("--seed", type=_seed, default=argparse.SUPPRESS, help="u64 seed for randomized commands (default 0)")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(
        prog="minorsign",
        description="Principal-minor sign classes and exact real-eigenvalue counts.",
        parents=[common],
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    for name, func, helptext in (
        ("classify", cmd_classify, "class membership and principal minors"),
        ("verify", cmd_verify, "full consistency report"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("path", nargs="?", help="JSON or CSV file (default: stdin)")
        sp.add_argument("--format", choices=("json", "csv"), help="input format (default: detect)")
        sp.set_defaults(func=func)

    sp = sub.add_parser("hunt", parents=[common], help="search for verified witnesses of a class")
    sp.add_argument("--class", dest="cls", required=True, help="class name, e.g. n, almost-p, qr0")
    sp.add_argument("--n", type=_pos_int, required=True)
    sp.add_argument("--count", type=_pos_int, default=1)
    sp.add_argument("--symmetric", action="store_true")
    sp.add_argument("--max-trials", type=_pos_int, default=10_000)
    sp.add_argument("--range", default="-3:3", help="entry range LO:HI or LO:HI:DEN (default -3:3)")
    sp.set_defaults(func=cmd_hunt)

    sp = sub.add_parser("table", parents=[common], help="print the eigenvalue-count table")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("suite", parents=[common], help="generate -> classify -> predict -> verify")
    sp.add_argument("--n-max", type=_pos_int, default=4)
    sp.add_argument("--n-min", type=_pos_int, default=1)
    sp.add_argument("--per-class", type=_nonneg_int, default=100)
    sp.add_argument("--jobs", type=_pos_int, default=1)
    sp.add_argument("--range", default="-3:3")
    sp.set_defaults(func=cmd_suite)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, matching the input-error code
        return int(exc.code or 0)
    # the global flags are shared actions, so their defaults are filled in here
    for key, value in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
