"""The exact estimator when the population frequencies are known.

With (p_1, ..., p_s) in hand the discovery probability has a closed
posterior-mean form, and an equivalent expression as a ratio of expected
frequency counts at sizes n and n+1.  A long simulation shows the
empirical Good-Turing estimate tracking the exact value.
"""

import numpy as np

from goodturing import FinitePopulation, good_turing_approx, monte_carlo_moments, sample_population


def main():
    pop = FinitePopulation([0.5, 0.3, 0.2])
    n = 10

    shown = ", ".join(f"{p:g}" for p in pop.probs)
    print(f"population p = ({shown}), sample size n = {n}")
    print()
    print("   l   posterior-mean   count-ratio      (they are the same identity)")
    for l in range(1, n + 1):
        direct = pop.exact_good_turing(l, n)
        ratio = (l + 1) / (n + 1) * pop.expected_count(l + 1, n + 1) / pop.expected_count(l, n)
        print(f"  {l:2d}   {direct:14.10f}   {ratio:14.10f}")

    print()
    print("posterior over which species was seen l = 2 times in n = 10 draws:")
    for j, (p, q) in enumerate(zip(pop.probs, pop.posterior(2, 10)), start=1):
        print(f"  species {j} (p = {p}): {q:.4f}")

    # averaging the empirical estimator over many samples recovers its own
    # expectation (l+1) E[C_{l+1,n}] / n; with s = 3 species and n = 10 that
    # unconditional average sits well below the exact conditional estimator,
    # which is the point of having the exact form at all
    reps = 20000
    table = monte_carlo_moments(pop, n, reps=reps, seed=11, l_max=4)
    print()
    print(f"simulated averages over {reps} samples (seed 11):")
    print("   l   mean (l+1)c_{l+1}/n    (l+1)E[C_{l+1}]/n    exact estimator")
    for l in range(1, 4):
        mean_gt = (l + 1) * table.mean(f"C_{l + 1}") / n
        analytic = (l + 1) * pop.expected_count(l + 1, n) / n
        exact = pop.exact_good_turing(l, n)
        print(f"  {l:2d}   {mean_gt:20.4f}   {analytic:18.4f}   {exact:15.4f}")
    print("(columns 1-2 agree: the simulation is sound; column 3 is the")
    print(" conditional quantity the empirical rule only approximates)")

    one = sample_population(pop, n, seed=11)
    print()
    print(f"a single sample gives composition {one.composition.parts}; its")
    print(f"empirical missing-mass estimate is {good_turing_approx(one.frequency_counts, 0):.3f}")


if __name__ == "__main__":
    main()
