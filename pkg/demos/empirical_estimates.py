"""Empirical Good-Turing on a raw sample, and what to do when it breaks.

Draws one sample from a skewed population, tabulates the frequency of
frequencies, and walks through the missing-mass and discovery estimates,
including the l where the ratio form falls over because c_l = 0.
"""

import numpy as np

from goodturing import (
    FinitePopulation,
    UndefinedEstimateError,
    good_turing_approx,
    good_turing_ratio,
    sample_population,
    smoothed_discovery,
)


def main():
    weights = np.arange(1, 31, dtype=float) ** -1.4
    pop = FinitePopulation(weights / weights.sum())
    n = 200
    summary = sample_population(pop, n, seed=7)
    fc = summary.frequency_counts

    print(f"population: {pop.s} species, power-law frequencies")
    print(f"sample: n = {fc.n} draws, k = {fc.k} distinct species seen")
    print("frequency of frequencies (l : c_l):")
    for l, c in fc.items():
        print(f"  {l:3d} : {c}")

    # the estimate c_1/n targets the expected unseen mass sum_j p_j (1-p_j)^n
    expected_missing = pop.expected_count(1, n + 1) / (n + 1)
    print()
    print(f"missing-mass estimate c_1/n:   {good_turing_approx(fc, 0):.4f}")
    print(f"expected missing mass:         {expected_missing:.4f}")

    print()
    print("discovery probability that the next draw is a species seen l times:")
    print("   l   (l+1)c_{l+1}/n   ratio form")
    for l in range(1, 7):
        approx = good_turing_approx(fc, l)
        try:
            ratio = f"{good_turing_ratio(fc, l):.4f}"
        except UndefinedEstimateError:
            ratio = "undefined (c_l = 0)"
        print(f"  {l:2d}   {approx:14.4f}   {ratio}")

    print()
    print("smoothing bridges the gaps: with alpha = 0.6 every l gets an estimate")
    for l in range(1, 7):
        print(f"  l = {l}: smoothed discovery {smoothed_discovery(0.6, fc.k, fc.n, l):.4f}")


if __name__ == "__main__":
    main()
