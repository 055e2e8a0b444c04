import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minorsign import (
    ALL_CLASSES,
    CapacityError,
    InputError,
    Matrix,
    MatrixClass,
    classify,
    inclusion_violations,
    is_class,
    required_signs,
)

from conftest import matrices, random_matrix, sympy_matrix

WORKED = Matrix([[-1, -2], [-2, -1]])
C = MatrixClass


def oracle_members(m: Matrix) -> set[MatrixClass]:
    """Class membership straight from the definitions, with sympy determinants."""
    sm = sympy_matrix(m)
    n = m.n

    def sgn(x):
        return int(bool(x > 0)) - int(bool(x < 0))

    minors = {
        s: sgn(sm.extract(list(s), list(s)).det())
        for k in range(1, n + 1)
        for s in combinations(range(n), k)
    }
    sums = [sgn(sum(sm.extract(list(s), list(s)).det() for s in combinations(range(n), k))) for k in range(1, n + 1)]
    fam_sign = {
        "p": lambda k: 1, "q": lambda k: 1,
        "n": lambda k: -1, "r": lambda k: -1,
        "pn": lambda k: (-1) ** (k - 1), "qr": lambda k: (-1) ** (k - 1),
    }
    out = set()
    for fam, s in fam_sign.items():
        signs = [(len(x), v) for x, v in minors.items()] if fam in ("p", "n", "pn") else list(enumerate(sums, start=1))
        below = [(k, v) for k, v in signs if k < n]
        det_sign = sums[-1]
        strict_below = all(v == s(k) for k, v in below)
        weak_below = all(v in (s(k), 0) for k, v in below)
        if strict_below and det_sign == s(n):
            out.add(C(fam))
        if strict_below and det_sign == -s(n):
            out.add(C("almost-" + fam))
        if weak_below and det_sign == s(n):
            out.add(C("weak-" + fam))
        if weak_below and det_sign in (s(n), 0):
            out.add(C(fam + "0"))
    return out


def test_identity_3():
    assert set(classify(Matrix.identity(3))) == {C.P, C.WEAK_P, C.P0, C.Q, C.WEAK_Q, C.Q0}


def test_worked_example():
    assert set(classify(WORKED)) == {C.N, C.WEAK_N, C.N0, C.R, C.WEAK_R, C.R0}


def test_zero_matrix():
    assert set(classify(Matrix.zeros(2))) == {C.P0, C.Q0, C.N0, C.R0, C.PN0, C.QR0}


def test_is_class_examples():
    v = is_class(Matrix.identity(2), C.ALMOST_P)
    assert not v and v.evidence.where == (1, 2) and v.evidence.sign == 1
    assert is_class(Matrix([["1/3", "-2/3"], ["-2/3", "1/3"]]), C.ALMOST_P)
    v = is_class(Matrix([[0, 1], [1, 0]]), C.Q)
    assert not v and v.evidence.where == 1 and v.evidence.value == 0


def test_evidence_is_lexicographically_first():
    m = Matrix([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    v = is_class(m, C.P)
    assert v.evidence.where == (1, 2)
    assert classify(m).evidence[C.P] == v.evidence


def test_required_signs_examples():
    qr = required_signs(C.QR, 3)
    assert [next(iter(qr.allowed(k))) for k in (1, 2, 3)] == [1, -1, 1]
    wn = required_signs(C.WEAK_N, 2)
    assert wn.det == {-1} and wn.allowed(1) == {-1, 0}
    aqr = required_signs(C.ALMOST_QR, 3)
    assert aqr.det == {-1} and aqr.allowed(1) == {1} and aqr.allowed(2) == {-1}
    assert not required_signs(C.Q, 2).on_minors and required_signs(C.PN, 2).on_minors
    with pytest.raises(InputError):
        required_signs(C.P, 0)


def test_names_and_labels():
    assert len(ALL_CLASSES) == 24 == len({c.value for c in ALL_CLASSES})
    assert C.parse("Almost-QR") is C.ALMOST_QR
    with pytest.raises(InputError, match="valid names"):
        C.parse("p-matrix")
    assert C.QR0.label == "(QR)0" and C.P0.label == "P0" and C.WEAK_N.label == "weak N"
    assert C.ALMOST_PN.counterpart is C.ALMOST_QR


@settings(max_examples=120, deadline=None)
@given(matrices(n_max=4, elements=st.sampled_from([Fraction(x) for x in (-2, -1, 0, 0, 1, 2)] + [Fraction(1, 2)])))
def test_classify_matches_definition_oracle(m):
    cs = classify(m)
    assert set(cs) == oracle_members(m)
    assert inclusion_violations(cs) == []
    for c in ALL_CLASSES:
        v = is_class(m, c)
        assert bool(v) == (c in cs)
        if not v:
            assert v.evidence == cs.evidence[c]


def test_inclusions_on_random_matrices():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 5)
        m = random_matrix(rng, n, lo=-2, hi=3, max_den=1)
        assert inclusion_violations(classify(m)) == []


def test_almost_p_and_p_exclusive():
    rng = random.Random(3)
    for _ in range(200):
        cs = classify(random_matrix(rng, rng.randint(1, 4), lo=-3, hi=3, max_den=1))
        for fam in ("p", "n", "pn", "q", "r", "qr"):
            assert not (C(fam) in cs and C("almost-" + fam) in cs)


def test_cap_behaviour():
    m = Matrix.identity(5)
    cs = classify(m, cap=4)
    assert not cs.complete
    assert cs.not_evaluated == {c for c in ALL_CLASSES if c.family.uses_minors}
    assert C.Q in cs and C.P not in cs
    with pytest.raises(CapacityError):
        is_class(m, C.P, cap=4)
    assert is_class(m, C.Q, cap=4)
