"""Special functions: rising factorials, log binomials, and the
generalized Stirling triangle, with signed log-space arithmetic
re-exported from :mod:`.signedlog`.

The triangle computed here is the one indexed by a discount parameter
``a < 1``: entry (n, k) is the sum, over set partitions of {1..n} into k
blocks, of the products ``(1-a)_(size-1)`` over the block sizes.  It is
generated by the recurrence

    S(n+1, k) = S(n, k-1) + (n - k*a) * S(n, k)

with S(0,0) = 1, S(n,0) = 0 for n >= 1 and S(n,k) = 0 for k > n (see
Gnedin and Pitman, 2006, on exchangeable Gibbs partitions and Stirling
triangles).  At a = 0 the entries are the unsigned Stirling numbers of the
first kind.  Entries with 1 <= k <= n are strictly positive for every
a < 1, so rows are stored as natural logs, with -inf marking structural
zeros.
"""

from __future__ import annotations

import math
from typing import Iterator

import numpy as np

from .signedlog import ONE, ZERO, SignedLog, signed_log_sum

__all__ = [
    "SignedLog",
    "ZERO",
    "ONE",
    "signed_log_sum",
    "rising_factorial",
    "rising_factorial_step",
    "log_rising",
    "log_comb",
    "StirlingTriangle",
    "stirling_triangle",
    "stirling_log_row",
    "iter_stirling_log_rows",
]


def rising_factorial(x: float, m: int) -> SignedLog:
    """(x)_m = x (x+1) ... (x+m-1), as a SignedLog; the empty product is 1.

    Any real x is allowed: the result is zero when a factor vanishes and
    negative when an odd number of factors are negative.
    """
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if m == 0:
        return ONE
    return _signed_product(x + np.arange(m, dtype=float))


def rising_factorial_step(x: float, m: int, step: float) -> SignedLog:
    """Step-``step`` rising factorial: the product of x + i*step for i < m.

    ``step=1`` delegates to :func:`rising_factorial` so the two agree
    exactly; ``step=0`` gives x**m.
    """
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if step == 1.0:
        return rising_factorial(x, m)
    if m == 0:
        return ONE
    return _signed_product(x + step * np.arange(m, dtype=float))


def _signed_product(factors: np.ndarray) -> SignedLog:
    if np.any(factors == 0.0):
        return ZERO
    sign = -1 if int(np.count_nonzero(factors < 0)) % 2 else 1
    return SignedLog(sign, float(np.sum(np.log(np.abs(factors)))))


def log_rising(x: float, m: int) -> float:
    """log (x)_m for strictly positive x; the fast path used by model sums."""
    if m == 0:
        return 0.0
    if x <= 0:
        raise ValueError(f"log_rising needs x > 0, got {x}")
    return float(np.sum(np.log(x + np.arange(m, dtype=float))))


class StirlingTriangle:
    """Immutable triangle of generalized Stirling numbers up to ``n_max``.

    Rows are log-valued numpy arrays; ``log_row(n)`` exposes row n (entries
    k = 0..n) and ``entry(n, k)`` wraps a single value as a SignedLog.
    Safe to share across concurrent readers once built.
    """

    def __init__(self, alpha: float, n_max: int):
        if alpha >= 1.0:
            raise ValueError(f"discount parameter must be < 1, got {alpha}")
        if n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {n_max}")
        self.alpha = float(alpha)
        self.n_max = int(n_max)
        rows = [np.zeros(1)]
        for n in range(n_max):
            rows.append(_next_row(rows[n], n, self.alpha))
        for r in rows:
            r.flags.writeable = False
        self._rows = rows

    def log_row(self, n: int) -> np.ndarray:
        """Read-only log-row S(n, 0..n); index k holds log S(n, k)."""
        if not 0 <= n <= self.n_max:
            raise ValueError(f"row {n} outside triangle (n_max={self.n_max})")
        return self._rows[n]

    def log_entry(self, n: int, k: int) -> float:
        if not 0 <= n <= self.n_max:
            raise ValueError(f"row {n} outside triangle (n_max={self.n_max})")
        if k < 0:
            raise ValueError(f"k must be >= 0, got {k}")
        if k > n:
            return float("-inf")
        return float(self._rows[n][k])

    def entry(self, n: int, k: int) -> SignedLog:
        lm = self.log_entry(n, k)
        return ZERO if lm == float("-inf") else SignedLog(1, lm)


def stirling_triangle(n_max: int, alpha: float) -> StirlingTriangle:
    """Build the full triangle; memory is O(n_max^2)."""
    return StirlingTriangle(alpha, n_max)


def _next_row(row: np.ndarray, n: int, alpha: float) -> np.ndarray:
    # row holds log S(n, k) for k = 0..n; returns row n+1.
    out = np.full(n + 2, -np.inf)
    out[1:] = row  # S(n, k-1) contribution, k = 1..n+1
    if n >= 1:
        ks = np.arange(1, n + 1, dtype=float)
        # n - k*alpha > 0 for 1 <= k <= n, alpha < 1
        out[1 : n + 1] = np.logaddexp(out[1 : n + 1], np.log(n - ks * alpha) + row[1 : n + 1])
    return out


def iter_stirling_log_rows(n_max: int, alpha: float) -> Iterator[np.ndarray]:
    """Yield log-rows 0..n_max one at a time; O(n) memory.

    This is the streaming path for sizes where the full triangle would not
    fit; rows are yielded in order and must not be mutated.
    """
    if alpha >= 1.0:
        raise ValueError(f"discount parameter must be < 1, got {alpha}")
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    row = np.zeros(1)
    yield row
    for n in range(n_max):
        row = _next_row(row, n, alpha)
        yield row


def stirling_log_row(n: int, alpha: float) -> np.ndarray:
    """Single log-row S(n, 0..n) without storing the triangle above it."""
    for i, row in enumerate(iter_stirling_log_rows(n, alpha)):
        if i == n:
            return row
    raise AssertionError("unreachable")


def log_comb(n: int, k: int) -> float:
    """log of the binomial coefficient via lgamma; -inf outside 0 <= k <= n."""
    if k < 0 or k > n:
        return float("-inf")
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
