"""Monte Carlo agreement between sampled and analytic moments.

Runs the seeded urn for a Pitman-Yor model and i.i.d. draws for a fixed
population, then lines the simulated E[K_n] and E[C_{l,n}] up against
their analytic values with standard-error distances.  The same table is
available from the command line as `goodturing simulate`.
"""

from goodturing import FinitePopulation, PitmanYor, monte_carlo_moments


def show(source, name, n, reps, seed):
    table = monte_carlo_moments(source, n, reps=reps, seed=seed, l_max=5)
    analytic = [source.expected_species(n)] + [
        source.expected_count(l, n) for l in range(1, 6)
    ]
    print(f"{name}, n = {n}, {reps} replicates, seed {seed}:")
    print("  stat      simulated        se        analytic        z")
    for (label, mean, se), want in zip(table.rows(), analytic):
        z = abs(mean - want) / se if se > 0 else 0.0
        print(f"  {label:4s}   {mean:12.5f}   {se:9.5f}   {want:12.5f}   {z:6.2f}")
    print()


def main():
    reps, seed = 30000, 2024
    show(PitmanYor(0.5, 0.5), "PD(0.5, 0.5) urn", 10, reps, seed)
    show(PitmanYor(0.5, 0.5), "PD(0.5, 0.5) urn", 50, reps, seed)
    show(FinitePopulation([0.5, 0.3, 0.2]), "population (0.5, 0.3, 0.2)", 10, reps, seed)
    print("z is the distance in standard errors; values beyond ~4 would be")
    print("evidence of a sampler or formula bug, and the verify suite gates on that.")


if __name__ == "__main__":
    main()
