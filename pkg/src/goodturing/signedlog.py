"""Sign-and-log representation of real numbers.

Rising factorials and generalized Stirling numbers outgrow double precision
once n reaches the low hundreds ((1-a)_{n-1} overflows near n = 170), so
every product in this package is carried as a sign together with the natural
log of the magnitude.  Sums of signed terms are evaluated with the usual
max-shifted log-sum-exp, split by sign so no cancellation is hidden.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

__all__ = ["SignedLog", "signed_log_sum"]

_NEG_INF = float("-inf")


@dataclass(frozen=True)
class SignedLog:
    """A real number stored as ``sign * exp(logmag)``.

    ``sign`` is -1, 0 or +1; ``logmag`` is the natural log of the absolute
    value and is pinned to ``-inf`` whenever ``sign == 0`` so that equal
    numbers compare equal.
    """

    sign: int
    logmag: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if math.isnan(self.logmag):
            raise ValueError("log magnitude cannot be NaN")
        # zero has one canonical form: sign 0, logmag -inf
        if self.sign == 0 and self.logmag != _NEG_INF:
            object.__setattr__(self, "logmag", _NEG_INF)
        elif self.sign != 0 and self.logmag == _NEG_INF:
            object.__setattr__(self, "sign", 0)

    @staticmethod
    def from_float(x: float) -> "SignedLog":
        if x == 0.0:
            return ZERO
        if math.isnan(x):
            raise ValueError("cannot represent NaN")
        return SignedLog(1 if x > 0 else -1, math.log(abs(x)))

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        try:
            mag = math.exp(self.logmag)
        except OverflowError:
            mag = math.inf
        return self.sign * mag

    __float__ = to_float

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __neg__(self) -> "SignedLog":
        return SignedLog(-self.sign, self.logmag)

    def __abs__(self) -> "SignedLog":
        return SignedLog(abs(self.sign), self.logmag)

    def __mul__(self, other: "SignedLog") -> "SignedLog":
        s = self.sign * other.sign
        if s == 0:
            return ZERO
        return SignedLog(s, self.logmag + other.logmag)

    def __truediv__(self, other: "SignedLog") -> "SignedLog":
        if other.sign == 0:
            raise ZeroDivisionError("division by SignedLog zero")
        if self.sign == 0:
            return ZERO
        return SignedLog(self.sign * other.sign, self.logmag - other.logmag)

    def __pow__(self, m: int) -> "SignedLog":
        if m < 0:
            raise ValueError("negative powers not supported")
        if m == 0:
            return ONE
        if self.sign == 0:
            return ZERO
        return SignedLog(self.sign if m % 2 else abs(self.sign), m * self.logmag)

    def __add__(self, other: "SignedLog") -> "SignedLog":
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        if self.sign == other.sign:
            # same sign: plain log-add
            hi, lo = max(self.logmag, other.logmag), min(self.logmag, other.logmag)
            return SignedLog(self.sign, hi + math.log1p(math.exp(lo - hi)))
        # opposite signs: log-subtract, result carries the bigger magnitude's sign
        if self.logmag == other.logmag:
            return ZERO
        if self.logmag > other.logmag:
            big, small, s = self.logmag, other.logmag, self.sign
        else:
            big, small, s = other.logmag, self.logmag, other.sign
        return SignedLog(s, big + math.log1p(-math.exp(small - big)))

    def __sub__(self, other: "SignedLog") -> "SignedLog":
        return self + (-other)


ZERO = SignedLog(0, _NEG_INF)
ONE = SignedLog(1, 0.0)
SignedLog.ZERO = ZERO
SignedLog.ONE = ONE


def signed_log_sum(terms: Iterable[SignedLog]) -> SignedLog:
    """Sum SignedLog terms, log-summing each sign class before differencing.

    Grouping by sign keeps the only unavoidable cancellation (positive total
    against negative total) down to a single subtraction.
    """
    pos: list[float] = []
    neg: list[float] = []
    for t in terms:
        if t.sign > 0:
            pos.append(t.logmag)
        elif t.sign < 0:
            neg.append(t.logmag)
    p = _logsumexp(pos)
    n = _logsumexp(neg)
    return SignedLog(1, p) + SignedLog(-1, n)


def _logsumexp(xs: list[float]) -> float:
    if not xs:
        return _NEG_INF
    hi = max(xs)
    if hi == _NEG_INF:
        return _NEG_INF
    return hi + math.log(math.fsum(math.exp(x - hi) for x in xs))
