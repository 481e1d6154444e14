import math

import pytest
from hypothesis import given, strategies as st

from goodturing.signedlog import ONE, ZERO, SignedLog, signed_log_sum

finite_floats = st.floats(
    min_value=-1e150, max_value=1e150, allow_nan=False, allow_infinity=False
)
nonzero_floats = finite_floats.filter(lambda x: abs(x) > 1e-150)


def close(a: float, b: float, rtol=1e-12) -> bool:
    return abs(a - b) <= rtol * max(abs(a), abs(b), 1.0)


def test_zero_is_canonical():
    assert ZERO.sign == 0 and ZERO.logmag == -math.inf
    assert SignedLog(0, 5.0) == ZERO  # logmag forced to -inf
    assert SignedLog(1, -math.inf) == ZERO  # sign forced to 0
    assert SignedLog(-1, -math.inf) == ZERO
    assert ZERO.is_zero and not ONE.is_zero


def test_invalid_construction():
    with pytest.raises(ValueError):
        SignedLog(2, 0.0)
    with pytest.raises(ValueError):
        SignedLog(1, math.nan)
    with pytest.raises(ValueError):
        SignedLog.from_float(math.nan)


def test_from_float_round_trip():
    for x in (0.0, 1.0, -1.0, 0.75, -2.5e-30, 3.7e40, -1e-300):
        assert SignedLog.from_float(x).to_float() == pytest.approx(x, rel=1e-14)
    assert SignedLog.from_float(0.0) is ZERO
    assert float(ONE) == 1.0


def test_overflow_saturates_to_inf():
    big = SignedLog(1, 1e4)
    assert big.to_float() == math.inf
    assert (-big).to_float() == -math.inf


def test_identities():
    x = SignedLog.from_float(-3.25)
    assert x + ZERO == x
    assert ZERO + x == x
    assert x * ONE == x
    assert x - x == ZERO
    assert x + (-x) == ZERO
    assert (x / x) == ONE


def test_pow():
    x = SignedLog.from_float(-2.0)
    assert close((x**3).to_float(), -8.0)
    assert close((x**2).to_float(), 4.0)
    assert x**0 == ONE
    assert ZERO**0 == ONE
    assert ZERO**4 == ZERO
    with pytest.raises(ValueError):
        x ** (-1)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
    assert ZERO / ONE == ZERO


@given(nonzero_floats, nonzero_floats)
def test_mul_matches_floats(a, b):
    got = (SignedLog.from_float(a) * SignedLog.from_float(b)).to_float()
    assert close(got, a * b, rtol=1e-12) or (math.isinf(got) and abs(a * b) > 1e290)


@given(nonzero_floats, nonzero_floats)
def test_add_matches_floats(a, b):
    got = (SignedLog.from_float(a) + SignedLog.from_float(b)).to_float()
    want = a + b
    # cancellation between nearly equal magnitudes legitimately loses digits;
    # compare on the scale of the inputs
    assert abs(got - want) <= 1e-12 * max(abs(a), abs(b), 1.0)


@given(st.lists(nonzero_floats, min_size=0, max_size=30))
def test_signed_log_sum_matches_fsum(xs):
    got = signed_log_sum(SignedLog.from_float(x) for x in xs).to_float()
    want = math.fsum(xs)
    assert abs(got - want) <= 1e-12 * max([abs(x) for x in xs] + [1.0])


def test_signed_log_sum_empty_and_degenerate():
    assert signed_log_sum([]) == ZERO
    assert signed_log_sum([ZERO, ZERO]) == ZERO
    assert close(signed_log_sum([ONE, ONE, ONE]).to_float(), 3.0)


def test_opposite_equal_magnitudes_cancel_exactly():
    x = SignedLog(1, 123.456)
    y = SignedLog(-1, 123.456)
    assert x + y == ZERO


def test_huge_magnitudes_stay_in_log_space():
    # (e^1000) * (e^1000) / (e^1999) = e: no overflow anywhere
    x = SignedLog(1, 1000.0)
    got = x * x / SignedLog(1, 1999.0)
    assert close(got.to_float(), math.e)
    # adding dominated terms barely moves the log
    y = x + SignedLog(1, 0.0)
    assert y.sign == 1 and close(y.logmag, 1000.0)
