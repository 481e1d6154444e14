"""Gibbs-type species sampling models.

A Gibbs-type model is specified by a discount parameter ``alpha < 1`` and
weights V(n, k) > 0 with V(1, 1) = 1 satisfying the backward recursion

    V(n, k) = (n - k*alpha) * V(n+1, k) + V(n+1, k+1).

The probability of observing species multiplicities (n_1, ..., n_k), in
order of appearance, factorizes as V(n, k) * prod_j (1-alpha)_(n_j - 1)
(Gnedin and Pitman, 2006).  From the weights alone this module derives the
one-step predictive probabilities, the falling factorial moments of the
frequency counts C(l, n), the expected number of distinct species, and the
exact Good-Turing discovery probability: the posterior mean frequency of a
species known only to have appeared l times in a sample of size n.

All sums over the block count k run through the generalized Stirling
triangle of :mod:`goodturing.specfun` and are evaluated in log space;
every term is nonnegative, so no cancellation occurs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .signedlog import ZERO, SignedLog
from .specfun import (
    StirlingTriangle,
    iter_stirling_log_rows,
    log_comb,
    log_rising,
    stirling_log_row,
    stirling_triangle,
)

__all__ = ["Composition", "GibbsModel", "TabularGibbsModel"]

_NEG_INF = float("-inf")


def _row_logsumexp(x: np.ndarray) -> np.ndarray:
    """logsumexp along axis 1, tolerating rows that are entirely -inf."""
    mx = x.max(axis=1)
    out = np.full(x.shape[0], _NEG_INF)
    finite = np.isfinite(mx)
    if finite.any():
        z = np.exp(x[finite] - mx[finite, None])
        out[finite] = mx[finite] + np.log(z.sum(axis=1))
    return out


@dataclass(frozen=True)
class Composition:
    """Species multiplicities (n_1, ..., n_k) in order of first appearance."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise ValueError("composition needs at least one part")
        if any(p < 1 for p in parts):
            raise ValueError(f"all parts must be >= 1, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)


class GibbsModel:
    """Base class: subclasses supply ``log_weight`` (log V(n, k)).

    ``max_size`` bounds the sample sizes the weights are available for
    (None = unbounded); ``max_blocks`` marks weight support that stops at a
    finite number of species, as with finite symmetric Dirichlet models.
    Instances are immutable apart from an internal Stirling-row cache whose
    rebuilds are idempotent, so sharing across threads is safe.
    """

    #: full triangle kept in memory up to this row; larger rows stream in O(n) memory
    stirling_cache_limit = 1024

    def __init__(self, alpha: float, max_size: int | None = None, max_blocks: int | None = None):
        if alpha >= 1.0:
            raise ValueError(f"discount parameter must be < 1, got {alpha}")
        self.alpha = float(alpha)
        self.max_size = max_size
        self.max_blocks = max_blocks
        self._stirling: StirlingTriangle | None = None

    # -- weights ---------------------------------------------------------

    def log_weight(self, n: int, k: int) -> float:
        """log V(n, k); -inf where the weight vanishes (k beyond support)."""
        raise NotImplementedError

    def log_weight_row(self, n: int, kmax: int) -> np.ndarray:
        """log V(n, k) for k = 1..kmax as an array (index j holds k = j+1)."""
        return np.array([self.log_weight(n, k) for k in range(1, kmax + 1)])

    def weight(self, n: int, k: int) -> SignedLog:
        """V(n, k) as a SignedLog (weights are never negative)."""
        lw = self.log_weight(n, k)
        return ZERO if lw == _NEG_INF else SignedLog(1, lw)

    def _check_size(self, n: int, what: str = "n"):
        if n < 1:
            raise ValueError(f"{what} must be >= 1, got {n}")
        if self.max_size is not None and n > self.max_size:
            raise ValueError(f"{what}={n} beyond supported sample size {self.max_size}")

    # -- partition probabilities and predictions -------------------------

    def eppf(self, comp: Composition) -> float:
        """Probability of the ordered multiplicities ``comp``.

        V(n, k) * prod_j (1-alpha)_(n_j - 1); zero if the model cannot
        support that many species.
        """
        if not isinstance(comp, Composition):
            comp = Composition(tuple(comp))
        self._check_size(comp.n)
        lw = self.log_weight(comp.n, comp.k)
        if lw == _NEG_INF:
            return 0.0
        lp = lw + math.fsum(log_rising(1.0 - self.alpha, p - 1) for p in comp.parts)
        return math.exp(lp)

    def predict_old(self, n: int, k: int, n_j: int) -> float:
        """P(next observation extends a species currently seen n_j times).

        V(n+1, k) * (n_j - alpha) / V(n, k).
        """
        self._check_size(n)
        self._check_size(n + 1)
        if not 1 <= k <= n:
            raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
        if not 1 <= n_j <= n:
            raise ValueError(f"need 1 <= n_j <= n, got n_j={n_j}")
        lw_n = self.log_weight(n, k)
        if lw_n == _NEG_INF:
            raise ValueError(f"V({n},{k}) = 0: state outside model support")
        return (n_j - self.alpha) * math.exp(self.log_weight(n + 1, k) - lw_n)

    def predict_new(self, n: int, k: int) -> float:
        """P(next observation is a brand-new species): V(n+1, k+1) / V(n, k)."""
        self._check_size(n)
        self._check_size(n + 1)
        if not 1 <= k <= n:
            raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
        lw_n = self.log_weight(n, k)
        if lw_n == _NEG_INF:
            raise ValueError(f"V({n},{k}) = 0: state outside model support")
        return math.exp(self.log_weight(n + 1, k + 1) - lw_n)

    def predictive_probs(self, counts) -> tuple[np.ndarray, float]:
        """Per-species and new-species probabilities for the urn sampler.

        Generic route through the weights; closed-form models override.
        """
        counts = np.asarray(counts, dtype=float)
        k = len(counts)
        if k == 0:
            return counts, 1.0  # empty urn: the first draw is always new
        n = int(counts.sum())
        lw_n = self.log_weight(n, k)
        if lw_n == _NEG_INF:
            raise ValueError(f"V({n},{k}) = 0: state outside model support")
        ratio_old = math.exp(self.log_weight(n + 1, k) - lw_n)
        old = (counts - self.alpha) * ratio_old
        new = math.exp(self.log_weight(n + 1, k + 1) - lw_n)
        return old, new

    # -- moments of the frequency counts ---------------------------------

    def expected_count(self, l: int, n: int) -> float:
        """E[C(l, n)]: expected number of species appearing exactly l times.

        C(n, l) (1-alpha)_(l-1) * sum_k V(n, k) S(n-l, k-1).
        """
        self._check_range_l(l, n)
        return math.exp(self._log_expected_count(l, n))

    def _log_expected_count(self, l: int, n: int) -> float:
        m = n - l
        srow = self._stirling_log_row(m)
        lw = self.log_weight_row(n, m + 1)
        return (
            log_comb(n, l)
            + log_rising(1.0 - self.alpha, l - 1)
            + float(logsumexp(lw + srow))
        )

    def falling_factorial_moment(self, l: int, n: int, r: int) -> float:
        """E[C(l,n) (C(l,n)-1) ... (C(l,n)-r+1)]; zero when l*r > n.

        n! [(1-alpha)_(l-1)]^r / ((l!)^r (n-lr)!) * sum_k V(n, k) S(n-lr, k-r).
        """
        self._check_range_l(l, n)
        if r < 1:
            raise ValueError(f"moment order must be >= 1, got {r}")
        if l * r > n:
            return 0.0
        m = n - l * r
        srow = self._stirling_log_row(m)
        lw = self.log_weight_row(n, m + r)  # k = 1..m+r
        coeff = (
            math.lgamma(n + 1)
            - r * math.lgamma(l + 1)
            - math.lgamma(m + 1)
            + r * log_rising(1.0 - self.alpha, l - 1)
        )
        return math.exp(coeff + float(logsumexp(lw[r - 1 :] + srow)))

    def expected_species(self, n: int) -> float:
        """E[K_n] = sum_l E[C(l, n)], accumulated over streamed Stirling rows."""
        self._check_size(n)
        lw = self.log_weight_row(n, n)
        log_one_minus_alpha = np.concatenate(
            ([0.0], np.cumsum(np.log(1.0 - self.alpha + np.arange(n - 1, dtype=float))))
        )  # index l-1 holds log (1-alpha)_(l-1)
        total = 0.0
        for m, row in enumerate(iter_stirling_log_rows(n - 1, self.alpha)):
            l = n - m
            lp = log_comb(n, l) + log_one_minus_alpha[l - 1] + float(logsumexp(lw[: m + 1] + row))
            total += math.exp(lp)
        return total

    # -- exact Good-Turing discovery probability -------------------------

    def exact_good_turing(self, l: int, n: int) -> float:
        """Posterior mean frequency of a species seen exactly l times.

        Conditions only on that one species' count, marginalizing over the
        rest of the sample:

            (l - alpha) * sum_k V(n+1, k) S(n-l, k-1)
                        / sum_k V(n, k)   S(n-l, k-1)

        This equals (l+1)/(n+1) * E[C(l+1, n+1)] / E[C(l, n)], Good (1953)'s
        exact estimator under a superpopulation.
        """
        self._check_range_l(l, n)
        self._check_size(n + 1)
        m = n - l
        srow = self._stirling_log_row(m)
        den = float(logsumexp(self.log_weight_row(n, m + 1) + srow))
        if den == _NEG_INF:
            raise ValueError(
                f"a species seen {l} times in {n} draws has probability zero "
                "under this model; the estimator conditions on an impossible event"
            )
        num = float(logsumexp(self.log_weight_row(n + 1, m + 1) + srow))
        return (l - self.alpha) * math.exp(num - den)

    def exact_good_turing_row(self, n: int) -> np.ndarray:
        """All discovery probabilities at size n at once: entry l-1 holds l.

        Same sums as :meth:`exact_good_turing`, batched across l so the
        Stirling rows are visited once; positions whose count has zero
        probability come back as nan instead of raising.
        """
        self._check_size(n)
        self._check_size(n + 1)
        lw_n = self.log_weight_row(n, n)
        lw_next = self.log_weight_row(n + 1, n + 1)[:n]
        m_rows = np.full((n, n), _NEG_INF)  # row m holds log S(m, k-1), k = 1..n
        for m in range(n):
            m_rows[m, : m + 1] = self._stirling_log_row(m)
        num = _row_logsumexp(m_rows + lw_next)
        den = _row_logsumexp(m_rows + lw_n)
        ls = np.arange(n, 0, -1, dtype=float)  # l = n - m
        with np.errstate(invalid="ignore"):
            out = ls - self.alpha
            out *= np.exp(num - den)  # -inf - -inf -> nan marks impossible counts
        return out[::-1].copy()

    # -- internals -------------------------------------------------------

    def _check_range_l(self, l: int, n: int):
        self._check_size(n)
        if not 1 <= l <= n:
            raise ValueError(f"need 1 <= l <= n, got l={l}, n={n}")

    def _stirling_log_row(self, m: int) -> np.ndarray:
        if m == 0:
            return np.zeros(1)
        if m > self.stirling_cache_limit:
            return stirling_log_row(m, self.alpha)
        tri = self._stirling
        if tri is None or tri.n_max < m:
            target = min(self.stirling_cache_limit, max(m, 64, 2 * (tri.n_max if tri else 0)))
            self._stirling = tri = stirling_triangle(target, self.alpha)
        return tri.log_row(m)


class TabularGibbsModel(GibbsModel):
    """Gibbs model backed by a numeric weight table.

    ``rows`` maps sample size n = 1..N to the weights (V(n,1), ..., V(n,n)).
    Construction checks V(1,1) = 1, strict positivity inside the declared
    support, and the backward recursion; inconsistent tables are rejected.
    """

    def __init__(self, alpha: float, rows, validate: bool = True, rtol: float = 1e-8):
        table = [np.asarray(r, dtype=float) for r in rows]
        n_max = len(table)
        if n_max < 1:
            raise ValueError("weight table needs at least row n=1")
        for n, row in enumerate(table, start=1):
            if row.shape != (n,):
                raise ValueError(f"row for n={n} must have {n} entries, got {row.shape}")
        super().__init__(alpha, max_size=n_max)
        if abs(table[0][0] - 1.0) > 1e-12:
            raise ValueError(f"V(1,1) must be 1, got {table[0][0]}")
        support = self._support_lengths(table)
        with np.errstate(divide="ignore"):
            self._log_rows = [np.where(r > 0, np.log(np.where(r > 0, r, 1.0)), -np.inf) for r in table]
        if validate:
            self._validate(table, support, rtol)

    @staticmethod
    def _support_lengths(table) -> list[int]:
        # weights must be positive for k = 1..support(n) and zero beyond
        support = []
        for n, row in enumerate(table, start=1):
            if np.any(row < 0):
                raise ValueError(f"negative weight in row n={n}")
            pos = row > 0
            kmax = int(np.max(np.nonzero(pos)[0])) + 1 if pos.any() else 0
            if kmax == 0 or not pos[:kmax].all():
                raise ValueError(f"row n={n} must be strictly positive up to its support")
            support.append(kmax)
        return support

    def _validate(self, table, support, rtol):
        for n in range(1, len(table)):
            v_n, v_next = table[n - 1], table[n]
            for k in range(1, n + 1):
                lhs = v_n[k - 1]
                rhs = (n - k * self.alpha) * v_next[k - 1] + v_next[k]
                if abs(lhs - rhs) > rtol * max(abs(lhs), abs(rhs), 1e-300):
                    raise ValueError(
                        f"backward recursion fails at (n={n}, k={k}): "
                        f"V(n,k)={lhs!r} vs (n-k*alpha)V(n+1,k)+V(n+1,k+1)={rhs!r}"
                    )

    @classmethod
    def from_bottom_row(cls, alpha: float, bottom_row, validate: bool = True) -> "TabularGibbsModel":
        """Build a valid table from an arbitrary positive bottom row.

        The backward recursion determines every row above the bottom one;
        dividing through by the resulting V(1,1) normalizes the family.
        """
        bottom = np.asarray(bottom_row, dtype=float)
        if np.any(bottom <= 0):
            raise ValueError("bottom row must be strictly positive")
        n_max = len(bottom)
        rows = [None] * n_max
        rows[n_max - 1] = bottom
        for n in range(n_max - 1, 0, -1):
            below = rows[n]
            ks = np.arange(1, n + 1, dtype=float)
            rows[n - 1] = (n - ks * alpha) * below[:n] + below[1 : n + 1]
        scale = rows[0][0]
        rows = [r / scale for r in rows]
        return cls(alpha, rows, validate=validate)

    def log_weight(self, n: int, k: int) -> float:
        self._check_size(n)
        if not 1 <= k <= n:
            raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
        return float(self._log_rows[n - 1][k - 1])

    def log_weight_row(self, n: int, kmax: int) -> np.ndarray:
        self._check_size(n)
        if not 1 <= kmax <= n:
            raise ValueError(f"need 1 <= kmax <= n, got kmax={kmax}, n={n}")
        return self._log_rows[n - 1][:kmax]
