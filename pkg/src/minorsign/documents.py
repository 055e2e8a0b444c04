"""Matrix documents (JSON or CSV input) and the ``minorsign/1`` report schema.

Rationals are always written as strings in lowest terms (``"-3"``, ``"1/3"``),
never as JSON numbers, and every report is emitted with a fixed key order so
that re-running a command on the same input reproduces it byte for byte.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .classes import ClassSet, MatrixClass, Violation, inclusion_violations
from .errors import InputError
from .numeric import Matrix, to_rational
from .spectra import EigenCountReport

SCHEMA = "minorsign/1"


class DocumentError(InputError):
    """Input document could not be parsed; carries a 1-based position when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class MatrixDocument:
    matrix: Matrix
    name: str | None = None
    expected_classes: tuple[MatrixClass, ...] | None = None
    extra: dict | None = None

    @property
    def n(self) -> int:
        return self.matrix.n

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"n": self.n, "entries": matrix_entries(self.matrix)}
        if self.name is not None:
            out["name"] = self.name
        if self.expected_classes is not None:
            out["expected_classes"] = [c.value for c in self.expected_classes]
        if self.extra:
            out.update(self.extra)
        return out


def fmt(x: Fraction) -> str:
    return str(x)


def matrix_entries(m: Matrix) -> list[list[str]]:
    return [[fmt(x) for x in row] for row in m.rows]


def _entry(value, where: str) -> Fraction:
    if isinstance(value, float):
        # JSON numbers are parsed as exact decimals below; a bare float here is a caller object
        return to_rational(value)
    if not isinstance(value, (int, str, Fraction)) or isinstance(value, bool):
        raise DocumentError(f"{where}: entry must be an integer, decimal string or 'p/q', got {value!r}")
    try:
        return to_rational(value)
    except InputError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def document_from_json(obj: Any) -> MatrixDocument:
    if not isinstance(obj, dict):
        raise DocumentError("matrix document must be a JSON object")
    if "entries" not in obj:
        raise DocumentError("matrix document needs an 'entries' field")
    rows = obj["entries"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise DocumentError("'entries' must be a nonempty list of rows")
    n = obj.get("n", len(rows))
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DocumentError(f"'n' must be a positive integer, got {n!r}")
    if len(rows) != n:
        raise DocumentError(f"'n' is {n} but 'entries' has {len(rows)} rows")
    grid = []
    for i, row in enumerate(rows, start=1):
        if len(row) != n:
            raise DocumentError(f"matrix is not square: row {i} has {len(row)} entries, expected {n}")
        grid.append([_entry(x, f"entry ({i},{j})") for j, x in enumerate(row, start=1)])
    expected = obj.get("expected_classes")
    if expected is not None:
        if not isinstance(expected, list) or not all(isinstance(c, str) for c in expected):
            raise DocumentError("'expected_classes' must be a list of class names")
        expected = tuple(MatrixClass.parse(c) for c in expected)
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise DocumentError("'name' must be a string")
    known = {"n", "entries", "name", "expected_classes"}
    extra = {k: v for k, v in obj.items() if k not in known} or None
    return MatrixDocument(Matrix(grid), name, expected, extra)


def _loads(text: str):
    try:
        # decimals stay exact: never round-trip through binary floats
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, exc.lineno, exc.colno) from None


def parse_csv(text: str) -> MatrixDocument:
    """A square grid of integers or decimals, one row per line."""
    grid = []
    for line_no, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        parsed = []
        col = 1
        for cell in row:
            token = cell.strip()
            if "/" in token:
                raise DocumentError("CSV entries must be integers or decimals", line_no, col)
            try:
                parsed.append(Fraction(token))
            except (ValueError, ZeroDivisionError):
                raise DocumentError(f"cannot parse {token!r} as a number", line_no, col) from None
            col += len(cell) + 1
        grid.append(parsed)
    if not grid:
        raise DocumentError("empty CSV input")
    n = len(grid)
    for i, row in enumerate(grid, start=1):
        if len(row) != n:
            raise DocumentError(f"matrix is not square: row {i} has {len(row)} entries, expected {n}")
    return MatrixDocument(Matrix(grid))


def parse_documents(text: str, fmt_hint: str | None = None) -> tuple[list[MatrixDocument], bool]:
    """Parse JSON (one document or an array of them) or CSV.

    Returns the documents and whether the input was an array.
    """
    stripped = text.lstrip()
    if fmt_hint == "csv" or (fmt_hint is None and stripped[:1] not in ("{", "[")):
        return [parse_csv(text)], False
    obj = _loads(text)
    if isinstance(obj, list):
        return [document_from_json(o) for o in obj], True
    return [document_from_json(obj)], False


# -- reports -----------------------------------------------------------------


def _evidence_json(v: Violation) -> dict[str, Any]:
    where: Any = f"E_{v.where}" if isinstance(v.where, int) else list(v.where)
    return {
        "where": where,
        "value": fmt(v.value),
        "sign": v.sign,
        "allowed": sorted(v.allowed, reverse=True),
    }


def _classes_json(cs: ClassSet) -> dict[str, Any]:
    return {
        "members": cs.names,
        "not_evaluated": [c.value for c in MatrixClass if c in cs.not_evaluated],
        "evidence": {c.value: _evidence_json(cs.evidence[c]) for c in MatrixClass if c in cs.evidence},
        "inclusion_violations": [[a.value, b.value] for a, b in inclusion_violations(cs)],
    }


def _input_json(doc: MatrixDocument) -> dict[str, Any]:
    out: dict[str, Any] = {"n": doc.n}
    if doc.name is not None:
        out["name"] = doc.name
    out["entries"] = matrix_entries(doc.matrix)
    out["symmetric"] = doc.matrix.symmetric
    return out


def expected_diff(doc: MatrixDocument, cs: ClassSet) -> dict[str, list[str]] | None:
    """Missing/unexpected classes relative to ``expected_classes``; None when nothing to compare."""
    if doc.expected_classes is None:
        return None
    expected = set(doc.expected_classes)
    evaluated = set(MatrixClass) - set(cs.not_evaluated)
    missing = [c.value for c in MatrixClass if c in expected and c in evaluated and c not in cs]
    unexpected = [c.value for c in MatrixClass if c in cs and c not in expected]
    return {"missing": missing, "unexpected": unexpected}


def classify_report(doc: MatrixDocument, cs: ClassSet) -> dict[str, Any]:
    out: dict[str, Any] = {"schema": SCHEMA, "input": _input_json(doc), "classes": _classes_json(cs)}
    if cs.table is not None:
        out["minors"] = [
            {"indices": list(s), "value": fmt(v)} for s, v in cs.table.entries.items()
        ]
    else:
        out["minors"] = None
    out["minor_sums"] = [fmt(e) for e in cs.sums]
    diff = expected_diff(doc, cs)
    if diff is not None:
        out["expected_classes"] = {
            "expected": [c.value for c in MatrixClass if c in set(doc.expected_classes)],
            **diff,
            "match": not diff["missing"] and not diff["unexpected"],
        }
    out["complete"] = cs.complete
    return out


def verify_report(doc: MatrixDocument, rep: EigenCountReport) -> dict[str, Any]:
    out = classify_report(doc, rep.classes)
    complete = out.pop("complete")
    out["char_poly"] = [fmt(c) for c in rep.char_poly.coeffs]
    out["char_poly_paths_agree"] = rep.char_poly_paths_agree
    out["var"] = {"pos": rep.var_pos, "neg": rep.var_neg}
    r = rep.roots
    out["roots"] = {"pos": r.pos, "neg": r.neg, "zero": r.zero, "nonreal": r.nonreal}
    out["descartes_ok"] = rep.descartes_ok
    out["predictions"] = [
        {
            "class": ch.cls.value,
            "case": ch.case,
            "prediction": ch.prediction.describe(),
            "verified": ch.holds,
        }
        for ch in rep.checks
    ]
    out["complete"] = complete
    out["consistent"] = rep.consistent
    return out


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
