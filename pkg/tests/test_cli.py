import io
import json
import sys

import pytest

from minorsign import Matrix, MatrixClass, classify
from minorsign.cli import main, table_rows
from minorsign.documents import DocumentError, parse_documents

WORKED = '{"n": 2, "entries": [[-1, -2], [-2, -1]], "name": "worked"}'


def run(argv, stdin="", monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdin, sys.stdout, sys.stderr
    sys.stdin, sys.stdout, sys.stderr = io.StringIO(stdin), out, err
    try:
        code = main(argv)
    finally:
        sys.stdin, sys.stdout, sys.stderr = old
    return code, out.getvalue(), err.getvalue()


def test_classify_identity():
    doc = json.dumps({"n": 3, "entries": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
    code, out, _ = run(["classify"], doc)
    assert code == 0
    members = json.loads(out)["classes"]["members"]
    assert {"p", "q", "p0", "q0", "weak-p", "weak-q"} <= set(members)


def test_classify_worked_and_byte_stable():
    code, out, _ = run(["classify"], WORKED)
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == "minorsign/1"
    assert {"n", "r"} <= set(rep["classes"]["members"])
    assert [m["value"] for m in rep["minors"]] == ["-1", "-1", "-3"]
    assert run(["classify"], WORKED)[1] == out


def test_rationals_and_decimals_roundtrip():
    doc = '{"entries": [["1/3", "0.5"], [-0.25, 2]]}'
    rep = json.loads(run(["classify"], doc)[1])
    assert rep["input"]["entries"] == [["1/3", "1/2"], ["-1/4", "2"]]


def test_expected_classes_mismatch():
    doc = '{"entries": [[1, 0], [0, 1]], "expected_classes": ["n", "p"]}'
    code, out, err = run(["classify"], doc)
    assert code == 1
    diff = json.loads(out)["expected_classes"]
    assert diff["missing"] == ["n"] and "q" in diff["unexpected"] and not diff["match"]
    assert "mismatch" in err


def test_expected_classes_match():
    names = classify(Matrix([[1, 0], [0, 1]])).names
    doc = json.dumps({"entries": [[1, 0], [0, 1]], "expected_classes": names})
    assert run(["classify"], doc)[0] == 0


@pytest.mark.parametrize(
    "text, fragment",
    [
        ('{"n": 2,\n  "entries": [[1, 2], [3 4]]}', "line 2, column"),
        ('{"entries": [[1, 2], [3]]}', "not square"),
        ('{"entries": [[1, "x"], [3, 4]]}', "entry (1,2)"),
        ("1,2\n3\n", "not square"),
        ("1,2\n3,1/2\n", "line 2, column 3"),
    ],
)
def test_input_errors_exit_2(text, fragment):
    code, _, err = run(["classify"], text)
    assert code == 2 and fragment in err


def test_csv_input():
    code, out, _ = run(["classify"], "-1,-2\n-2,-1\n")
    assert code == 0 and "n" in json.loads(out)["classes"]["members"]


def test_array_input_gives_array_output():
    code, out, _ = run(["verify"], f"[{WORKED}, {WORKED}]")
    assert code == 0 and len(json.loads(out)) == 2


def test_cap_exceeded_exit_3_with_partial_results():
    doc = json.dumps({"entries": [[1 if i == j else 0 for j in range(5)] for i in range(5)]})
    code, out, err = run(["--cap", "4", "classify"], doc)
    assert code == 3
    rep = json.loads(out)
    assert rep["minors"] is None and "q" in rep["classes"]["members"]
    assert "p" in rep["classes"]["not_evaluated"]
    assert run(["classify", "--cap", "4"], doc)[0] == 3


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("MINORSIGN_CAP", "1")
    assert run(["classify"], WORKED)[0] == 3


def test_verify_worked_example():
    code, out, _ = run(["verify"], WORKED)
    rep = json.loads(out)
    assert code == 0 and rep["consistent"] is True
    assert rep["roots"] == {"pos": 1, "neg": 1, "zero": 0, "nonreal": 0}
    assert rep["char_poly"] == ["1", "2", "-3"]


def test_verify_zero_matrix():
    rep = json.loads(run(["verify"], '{"entries": [[0, 0], [0, 0]]}')[1])
    assert rep["consistent"]
    assert {p["class"] for p in rep["predictions"]} == {"p0", "q0", "n0", "r0", "pn0", "qr0"}


def test_verify_identity_var():
    doc = json.dumps({"entries": [[int(i == j) for j in range(4)] for i in range(4)]})
    rep = json.loads(run(["verify"], doc)[1])
    assert rep["var"]["pos"] == 4 and rep["roots"]["pos"] == 4


def test_pretty_output():
    code, out, _ = run(["--pretty", "verify"], WORKED)
    assert code == 0 and "consistent:     true" in out


def test_hunt_n():
    code, out, _ = run(["hunt", "--class", "n", "--n", "2", "--count", "1", "--seed", "7"])
    docs = json.loads(out)
    assert code == 0 and len(docs) == 1
    m = parse_documents(json.dumps(docs[0]))[0][0].matrix
    assert MatrixClass.N in classify(m)
    assert docs[0]["provenance"]["seed"] == 7
    assert docs[0]["expected_classes"] == classify(m).names


def test_hunt_output_reclassifies_cleanly():
    _, out, _ = run(["hunt", "--class", "almost-p", "--n", "2", "--count", "3"])
    code, _, _ = run(["classify"], out)
    assert code == 0


def test_hunt_errors():
    assert run(["hunt", "--class", "zz", "--n", "2"])[0] == 2
    assert run(["hunt", "--class", "p", "--n", "20"])[0] == 3
    assert run(["hunt", "--class", "p", "--n", "13"])[0] == 3
    assert run(["hunt", "--class", "p", "--n", "13", "--cap", "13", "--max-trials", "1"])[0] in (0, 4)
    code, out, err = run(["hunt", "--class", "almost-qr", "--n", "3", "--count", "500", "--max-trials", "3"])
    assert code == 4 and "exhausted" in err and isinstance(json.loads(out), list)


def test_usage_error_exit_2():
    assert run(["nosuch"])[0] == 2
    assert run(["hunt", "--n", "2"])[0] == 2


def test_table():
    rows = {r[0]: r[1:] for r in table_rows()}
    assert rows["Q or weak Q or P or weak P"] == ("0 negative", "n positive")
    assert rows["almost R or almost N"][1] == "n positive, or n−2 positive and 2 negative"
    assert rows["(QR)0 or (PN)0"][0] == "≤ 1 positive"
    code, out, _ = run(["table"])
    assert code == 0 and "General case" in out


def test_suite_small_and_deterministic():
    argv = ["suite", "--n-max", "3", "--per-class", "4", "--seed", "1"]
    code, out, _ = run(argv)
    rep = json.loads(out)
    assert code == 0 and rep["inconsistencies"] == 0 and rep["coverage_gaps"] == []
    assert run(argv)[1] == out
    code, out, _ = run(argv + ["--pretty"])
    assert "inconsistencies: 0" in out


def test_parse_documents_rejects_non_objects():
    with pytest.raises(DocumentError):
        parse_documents("[1, 2]")
    with pytest.raises(DocumentError):
        parse_documents('{"n": 3, "entries": [[1]]}')
