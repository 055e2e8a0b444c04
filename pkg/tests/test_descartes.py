import pytest

from minorsign import Conclusion, InputError, Polynomial, corollary_conclusion, descartes_bounds, var
from minorsign.descartes import DescartesBound, exact_count_if_all_real


@pytest.mark.parametrize("seq, expected", [((1, -2, 3), 2), ((1, 0, -1), 1), ((), 0), ((0, 0), 0)])
def test_var_examples(seq, expected):
    assert var(seq) == expected


@pytest.mark.parametrize("n", range(2, 9))
def test_var_alternating_ends(n):
    seq = [1] + [-1] * (n - 1) + [1]
    assert len(seq) == n + 1 and var(seq) == 2


def test_bounds_examples():
    b = descartes_bounds(Polynomial([1, 2, -3]))
    assert (b.var_pos, b.var_neg) == (1, 1)
    b = descartes_bounds(Polynomial([1, 0, 1]))
    assert (b.var_pos, b.var_neg) == (0, 0)
    b = descartes_bounds(Polynomial([1, -2, 1]))
    assert b.var_pos == 2 and b.pos_root_candidates == (2, 0)
    with pytest.raises(InputError):
        descartes_bounds(Polynomial())


@pytest.mark.parametrize("coeffs, expected", [([1, -2, 1], 2), ([1, 2, -3], 1), ([1, 0, 0, 0], 0)])
def test_exact_count_for_real_rooted(coeffs, expected):
    assert exact_count_if_all_real(Polynomial(coeffs)) == expected


def test_corollary_conclusions():
    c = corollary_conclusion(DescartesBound(1, 0))
    assert c.positive is Conclusion.EXACTLY_ONE_POS and c.negative is Conclusion.NO_NEG
    c = corollary_conclusion(DescartesBound(2, 1))
    assert c.positive is Conclusion.INDETERMINATE_POS and c.pos_candidates == (2, 0)
    assert c.negative is Conclusion.EXACTLY_ONE_NEG
    c = corollary_conclusion(DescartesBound(0, 3))
    assert c.positive is Conclusion.NO_POS and c.neg_candidates == (3, 1)
