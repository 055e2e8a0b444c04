from fractions import Fraction

import pytest

from minorsign import ALL_CLASSES, CapacityError, InputError, Matrix, MatrixClass, is_class
from minorsign.generator import EntryRange, GenSpec, SplitMix64, coverage_report, generate, trial_rng

C = MatrixClass


def test_splitmix_reference_vector():
    # first outputs for seed 0, as published with the reference implementation
    rng = SplitMix64(0)
    assert rng.next_u64() == 0xE220A8397B1DCDAF
    assert rng.next_u64() == 0x6E789E6AA1B965F4


def test_randint_bounds_and_determinism():
    a, b = SplitMix64(5), SplitMix64(5)
    xs = [a.randint(-3, 3) for _ in range(500)]
    assert xs == [b.randint(-3, 3) for _ in range(500)]
    assert set(xs) == set(range(-3, 4))
    assert trial_rng(1, 2).next_u64() == trial_rng(1, 2).next_u64() != trial_rng(1, 3).next_u64()


def test_entry_range_parse():
    assert EntryRange.parse("-5:5:3") == EntryRange(-5, 5, 3)
    assert str(EntryRange.parse("-2:4")) == "-2:4"
    for bad in ("3", "1:x", "5:1", "0:1:0"):
        with pytest.raises(InputError):
            EntryRange.parse(bad)
    rr = EntryRange(-1, 1, 4)
    rng = SplitMix64(1)
    assert all(-1 <= rr.draw(rng) <= 1 and rr.draw(rng).denominator in (1, 2, 4) for _ in range(100))


def test_symmetric_p_witnesses():
    wit = generate(GenSpec(C.P, 3, symmetric=True, seed=4, count=5))
    assert len(wit) == 5 and not wit.exhausted
    for m in wit:
        assert m.symmetric and is_class(m, C.P)


def test_almost_p_witnesses_invert_to_n():
    wit = generate(GenSpec(C.ALMOST_P, 2, seed=9, count=5))
    for m in wit:
        assert is_class(m, C.ALMOST_P) and is_class(m.inverse(), C.N)
    assert Matrix([[-1, -2], [-2, -1]]).inverse() == Matrix([["1/3", "-2/3"], ["-2/3", "1/3"]])


def test_worked_example_is_admissible_symmetric_n():
    assert is_class(Matrix([[-1, -2], [-2, -1]]), C.N)


@pytest.mark.parametrize("c", ALL_CLASSES, ids=lambda c: c.value)
def test_every_class_generable_small_n(c):
    for n in (1, 2, 3):
        for sym in (False, True):
            wit = generate(GenSpec(c, n, symmetric=sym, seed=n, count=3, max_trials=400))
            assert len(wit) == 3, (c, n, sym)
            assert all(is_class(m, c) and m.symmetric >= sym for m in wit)


def test_generation_is_deterministic():
    spec = GenSpec(C.WEAK_QR, 4, seed=123, count=4)
    a, b = generate(spec), generate(spec)
    assert a.matrices == b.matrices and a.trial_indices == b.trial_indices
    assert generate(GenSpec(C.WEAK_QR, 4, seed=124, count=4)).matrices != a.matrices


def test_entry_range_respected_by_sampling():
    rr = EntryRange(-2, 2, 2)
    wit = generate(GenSpec(C.P, 2, entry_range=rr, seed=3, count=10))
    assert len(wit) == 10


def test_cap_and_dimension_errors():
    with pytest.raises(CapacityError):
        generate(GenSpec(C.P, 20))
    with pytest.raises(InputError):
        generate(GenSpec(C.P, 0))


def test_exhaustion_is_reported():
    wit = generate(GenSpec(C.ALMOST_QR, 2, seed=0, count=10_000, max_trials=5))
    assert wit.exhausted and len(wit) <= 5 and wit.trials == 5


def test_coverage_examples():
    cov = coverage_report(2, 200, seed=1, stop_at=5)
    assert cov[C.P] > 0
    assert cov[C.ALMOST_QR] >= 0
    assert all(cov[c] > 0 for c in (C.P0, C.Q0, C.N0, C.R0))
    one = coverage_report(1, 50, seed=1, stop_at=2)
    assert all(one[c] > 0 for c in ALL_CLASSES)
    wit = generate(GenSpec(C.P, 1, seed=2, count=3))
    assert all(m[0, 0] > 0 for m in wit)
