"""Seeded Monte Carlo generators for checking every expectation empirically.

Two sources: the sequential urn driven by a Gibbs model's predictive rules,
and i.i.d. categorical draws from a known finite population.  Reproducibility
is by construction: replicate r of a run seeded with s draws its randomness
from the stream keyed by (s, r), so results do not depend on execution
order and parallel and serial runs agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .empirical import FinitePopulation, FrequencyCounts
from .gibbs import Composition, GibbsModel
from .pitman_yor import PitmanYor

__all__ = [
    "SampleSummary",
    "MomentTable",
    "CategoricalSampler",
    "sample_gibbs",
    "sample_population",
    "monte_carlo_moments",
]

#: populations larger than this use alias-table sampling; smaller ones a cumulative scan
ALIAS_THRESHOLD = 32


def _rep_rng(seed: int, rep: int) -> np.random.Generator:
    return np.random.default_rng((int(seed), int(rep)))


@dataclass(frozen=True)
class SampleSummary:
    """One simulated sample: multiplicities in order of appearance plus totals."""

    composition: Composition
    frequency_counts: FrequencyCounts
    k: int

    @property
    def n(self) -> int:
        return self.composition.n


def _summarize(parts: list[int]) -> SampleSummary:
    comp = Composition(tuple(parts))
    fc: dict[int, int] = {}
    for p in parts:
        fc[p] = fc.get(p, 0) + 1
    return SampleSummary(comp, FrequencyCounts(fc), comp.k)


# -- Gibbs urn -----------------------------------------------------------


def sample_gibbs(model: GibbsModel, n: int, seed: int, use_closed_form: bool | None = None) -> SampleSummary:
    """One sequential sample of size n from the model's predictive rules.

    ``use_closed_form`` picks the per-step rule: the Pitman-Yor shortcut
    ((n_j - alpha)/(theta + m) old, (theta + k alpha)/(theta + m) new) or the
    generic route through the weights.  None selects the shortcut exactly
    when the model is Pitman-Yor; both consume one uniform per step, so
    their draws can be compared seed for seed.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    model._check_size(n)
    rng = _rep_rng(seed, 0)
    if use_closed_form is None:
        use_closed_form = isinstance(model, PitmanYor)
    if use_closed_form and not isinstance(model, PitmanYor):
        raise ValueError("closed-form urn updates are only available for Pitman-Yor models")
    uniforms = rng.random(n - 1) if n > 1 else np.empty(0)
    if use_closed_form:
        parts = _urn_pitman_yor(model, n, uniforms)
    else:
        parts = _urn_generic(model, n, uniforms)
    return _summarize(parts)


def _urn_pitman_yor(model: PitmanYor, n: int, uniforms: np.ndarray) -> list[int]:
    alpha, theta, s = model.alpha, model.theta, model.s
    counts = [1]  # the first draw always founds a species
    for m in range(1, n):
        u = uniforms[m - 1] * (theta + m)
        acc = 0.0
        chosen = -1
        for j, c in enumerate(counts):
            acc += c - alpha
            if u < acc:
                chosen = j
                break
        if chosen >= 0:
            counts[chosen] += 1
        elif s is not None and len(counts) >= s:
            counts[-1] += 1  # saturated support: rounding pushed u past the last slot
        else:
            counts.append(1)
    return counts


def _urn_generic(model: GibbsModel, n: int, uniforms: np.ndarray) -> list[int]:
    counts = [1]
    for m in range(1, n):
        old, new = model.predictive_probs(counts)
        u = uniforms[m - 1]
        acc = 0.0
        chosen = -1
        for j, p in enumerate(old):
            acc += p
            if u < acc:
                chosen = j
                break
        if chosen >= 0:
            counts[chosen] += 1
        elif new > 0.0:
            counts.append(1)
        else:
            counts[-1] += 1
    return counts


# -- finite population ---------------------------------------------------


class CategoricalSampler:
    """Draw species indices with fixed probabilities.

    Uses a Vose alias table above :data:`ALIAS_THRESHOLD` entries (O(1) per
    draw) and a cumulative-probability scan below it.  One uniform per
    draw either way, so the stream layout is the same.
    """

    def __init__(self, probs: np.ndarray):
        p = np.asarray(probs, dtype=float)
        self.s = p.size
        self.use_alias = self.s > ALIAS_THRESHOLD
        if self.use_alias:
            self._accept, self._alias = _build_alias(p)
        else:
            self._cum = np.cumsum(p)
            self._cum[-1] = 1.0

    def draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        u = rng.random(size)
        if self.use_alias:
            scaled = u * self.s
            idx = scaled.astype(np.int64)
            np.clip(idx, 0, self.s - 1, out=idx)
            frac = scaled - idx
            return np.where(frac < self._accept[idx], idx, self._alias[idx])
        return np.searchsorted(self._cum, u, side="right")


def _build_alias(p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    s = p.size
    accept = np.zeros(s)
    alias = np.zeros(s, dtype=np.int64)
    scaled = (p * s).tolist()
    small = [i for i, v in enumerate(scaled) if v < 1.0]
    large = [i for i, v in enumerate(scaled) if v >= 1.0]
    while small and large:
        lo, hi = small.pop(), large.pop()
        accept[lo] = scaled[lo]
        alias[lo] = hi
        scaled[hi] -= 1.0 - scaled[lo]
        (small if scaled[hi] < 1.0 else large).append(hi)
    for i in large + small:
        accept[i] = 1.0
    return accept, alias


def sample_population(pop: FinitePopulation, n: int, seed: int) -> SampleSummary:
    """n independent draws from the fixed frequencies, summarized."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = _rep_rng(seed, 0)
    sampler = CategoricalSampler(pop.probs)
    return _summarize(_population_parts(sampler, n, rng))


def _population_parts(sampler: CategoricalSampler, n: int, rng: np.random.Generator) -> list[int]:
    draws = sampler.draw(rng, n)
    _, first, counts = np.unique(draws, return_index=True, return_counts=True)
    order = np.argsort(first, kind="stable")
    return counts[order].tolist()


# -- moment estimation ---------------------------------------------------


@dataclass(frozen=True)
class MomentTable:
    """Monte Carlo means with standard errors, one row per statistic.

    Row labels are ``K`` followed by ``C_1 ... C_lmax``.  The table is a
    pure function of (source, n, reps, seed, l_max).
    """

    n: int
    reps: int
    seed: int
    labels: tuple[str, ...]
    means: np.ndarray
    ses: np.ndarray

    def rows(self):
        return list(zip(self.labels, self.means.tolist(), self.ses.tolist()))

    def mean(self, label: str) -> float:
        return float(self.means[self.labels.index(label)])

    def se(self, label: str) -> float:
        return float(self.ses[self.labels.index(label)])


def monte_carlo_moments(
    source,
    n: int,
    reps: int,
    seed: int,
    l_max: int | None = None,
) -> MomentTable:
    """Estimate E[K_n] and E[C(l, n)], l <= l_max, over independent replicates.

    ``source`` is a GibbsModel (urn sampling) or FinitePopulation
    (multinomial sampling).  Replicate r uses the stream keyed by (seed, r);
    statistics are aggregated with numpy's pairwise summation, so the
    result is bit-stable however replicates are scheduled.
    """
    if reps < 100:
        raise ValueError(f"reps must be >= 100, got {reps}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if l_max is None:
        l_max = n
    if not 1 <= l_max <= n:
        raise ValueError(f"need 1 <= l_max <= n, got l_max={l_max}")

    if isinstance(source, GibbsModel):
        source._check_size(n)
        closed = isinstance(source, PitmanYor)

        def one(rng):
            uniforms = rng.random(n - 1) if n > 1 else np.empty(0)
            if closed:
                return _urn_pitman_yor(source, n, uniforms)
            return _urn_generic(source, n, uniforms)

    elif isinstance(source, FinitePopulation):
        sampler = CategoricalSampler(source.probs)

        def one(rng):
            return _population_parts(sampler, n, rng)

    else:
        raise ValueError(f"source must be a GibbsModel or FinitePopulation, got {type(source)!r}")

    stats = np.empty((reps, 1 + l_max), dtype=np.int32)
    for rep in range(reps):
        parts = one(_rep_rng(seed, rep))
        cl = np.bincount(parts, minlength=l_max + 1)[1 : l_max + 1]
        stats[rep, 0] = len(parts)
        stats[rep, 1:] = cl
    means = stats.mean(axis=0)
    ses = stats.std(axis=0, ddof=1) / np.sqrt(reps)
    labels = ("K",) + tuple(f"C_{l}" for l in range(1, l_max + 1))
    return MomentTable(n=n, reps=reps, seed=seed, labels=labels, means=means, ses=ses)
