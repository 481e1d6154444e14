"""Where the smoothed frequency counts come from and how they behave.

Replacing the raw c_l by c'_l = alpha (1-alpha)_(l-1) / l! * k_n turns the
jumpy empirical discovery profile into a smooth power law whose plug-in
estimates exactly match a model-based formula.  This demo shows the fit to
a simulated Pitman-Yor sample, the partial sums creeping up to k_n, and
the l^(-1-alpha) decay of the counts themselves.
"""

import math

from goodturing import PitmanYor, sample_gibbs, smoothed_count, smoothed_discovery


def main():
    alpha, theta, n = 0.5, 1.0, 2000
    model = PitmanYor(alpha, theta)
    summary = sample_gibbs(model, n, seed=3)
    fc = summary.frequency_counts
    k = fc.k

    print(f"one PD({alpha}, {theta}) sample: n = {n}, k_n = {k}")
    print()
    print("raw vs smoothed frequency counts (alpha matched to the model):")
    print("   l    c_l   c'_l")
    for l in range(1, 11):
        print(f"  {l:2d}   {fc.count(l):4d}   {smoothed_count(alpha, k, l):7.2f}")

    print()
    print("partial sums of c'_l converge to k_n like L^(-alpha):")
    total = 0.0
    print("      L    sum_{l<=L} c'_l    k_n - sum    k_n L^(-a)/Gamma(1-a)")
    check_at = {1, 10, 100, 1000, 10000}
    for L in range(1, 10001):
        total += smoothed_count(alpha, k, L)
        if L in check_at:
            tail = k * L ** -alpha / math.gamma(1 - alpha)
            print(f"  {L:5d}    {total:14.3f}    {k - total:9.3f}    {tail:12.3f}")

    print()
    print("the plug-in discovery estimate (l+1) c'_{l+1} / n equals the")
    print("model-style formula (k_n/n) alpha (1-alpha)_l / l! identically:")
    print("   l    plug-in      direct")
    for l in range(0, 6):
        plug = (l + 1) / n * smoothed_count(alpha, k, l + 1)
        direct = smoothed_discovery(alpha, k, n, l)
        print(f"  {l:2d}   {plug:.8f}   {direct:.8f}")


if __name__ == "__main__":
    main()
