import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.stats import beta as beta_dist

from goodturing.gibbs import Composition, GibbsModel
from goodturing.pitman_yor import PitmanYor, jeffreys_estimate, johnson_estimate


def test_constructor_validation():
    with pytest.raises(ValueError):
        PitmanYor(1.0, 1.0)
    with pytest.raises(ValueError):
        PitmanYor(0.5)  # theta missing
    with pytest.raises(ValueError):
        PitmanYor(0.5, -0.5)  # theta + alpha = 0 not allowed
    with pytest.raises(ValueError):
        PitmanYor(0.5, -0.7)
    with pytest.raises(ValueError):
        PitmanYor(0.5, 1.0, s=3)  # s only for alpha < 0
    with pytest.raises(ValueError):
        PitmanYor(-0.5)  # s missing
    with pytest.raises(ValueError):
        PitmanYor(-0.5, s=0)
    with pytest.raises(ValueError):
        PitmanYor(-0.5, s=2.5)
    with pytest.raises(ValueError):
        PitmanYor(-0.5, theta=3.0, s=2)  # |alpha| s = 1, not 3


def test_negative_alpha_infers_theta():
    m = PitmanYor(-0.5, s=4)
    assert m.theta == 2.0 and m.s == 4
    # consistent theta is accepted
    m2 = PitmanYor(-0.5, theta=2.0, s=4)
    assert m2.theta == 2.0


def test_repr_mentions_parameters():
    assert "0.5" in repr(PitmanYor(0.5, 1.25))
    assert "s=3" in repr(PitmanYor(-1.0, s=3))


def test_weights_pinned():
    m = PitmanYor(0.5, 0.5)
    assert math.exp(m.log_weight(2, 1)) == pytest.approx(2 / 3, rel=1e-12)
    assert math.exp(m.log_weight(2, 2)) == pytest.approx(2 / 3, rel=1e-12)
    assert m.log_weight(1, 1) == 0.0


def test_weight_row_matches_entries():
    for m in (PitmanYor(0.5, 0.5), PitmanYor(0.0, 2.0), PitmanYor(-0.5, s=3), PitmanYor(0.9, -0.3)):
        for n in (1, 3, 8):
            row = m.log_weight_row(n, n)
            want = [m.log_weight(n, k) for k in range(1, n + 1)]
            np.testing.assert_allclose(row, want, rtol=1e-12, atol=1e-12)


def test_finite_support_weights_vanish():
    m = PitmanYor(-0.5, s=2)
    assert m.log_weight(5, 3) == -math.inf
    row = m.log_weight_row(5, 5)
    assert np.all(np.isinf(row[2:]))
    assert np.all(np.isfinite(row[:2]))


def test_backward_recursion_small_grid():
    for m in (PitmanYor(0.5, 0.5), PitmanYor(0.1, 10.0), PitmanYor(0.0, 1.0), PitmanYor(-1.0, s=5)):
        for n in range(1, 25):
            for k in range(1, n + 1):
                v_n = math.exp(m.log_weight(n, k))
                if v_n == 0.0:
                    continue
                v_a = math.exp(m.log_weight(n + 1, k))
                v_b = math.exp(m.log_weight(n + 1, k + 1)) if k + 1 <= n + 1 else 0.0
                assert v_n == pytest.approx((n - k * m.alpha) * v_a + v_b, rel=1e-11)


def test_closed_form_pinned():
    m = PitmanYor(0.5, 0.5)
    assert m.exact_good_turing_closed(1, 2) == pytest.approx(0.2, rel=1e-15)
    assert m.exact_good_turing_closed(1, 2) == (1 - 0.5) / (0.5 + 2)
    with pytest.raises(ValueError):
        m.exact_good_turing_closed(0, 2)


def test_closed_matches_stirling_route():
    for m in (PitmanYor(0.25, 1.0), PitmanYor(0.9, -0.4), PitmanYor(0.0, 0.5)):
        for n in (1, 2, 5, 12):
            for l in range(1, n + 1):
                assert m.exact_good_turing(l, n) == pytest.approx(
                    m.exact_good_turing_closed(l, n), rel=1e-11
                )


def test_predictive_mean():
    m = PitmanYor(0.5, 0.5)
    comp = Composition((2, 1))
    assert m.predictive_mean(comp, 1) == pytest.approx(3 / 7, rel=1e-15)
    assert m.predictive_mean(comp, 2) == pytest.approx(1 / 7, rel=1e-15)
    assert m.predictive_mean([2, 1], 1) == m.predictive_mean(comp, 1)
    with pytest.raises(ValueError):
        m.predictive_mean(comp, 3)
    with pytest.raises(ValueError):
        m.predictive_mean(comp, 0)


def test_predictive_mean_equals_predict_old():
    m = PitmanYor(0.3, 2.0)
    comp = Composition((4, 2, 1))
    for j, n_j in enumerate(comp.parts, start=1):
        assert m.predictive_mean(comp, j) == pytest.approx(
            m.predict_old(comp.n, comp.k, n_j), rel=1e-12
        )


def test_johnson_jeffreys_pinned():
    assert johnson_estimate(1.0, 3, 2, 5) == 3 / 8
    assert jeffreys_estimate(4, 1, 6) == 0.2
    # exact agreement with the corresponding Pitman-Yor closed forms
    assert PitmanYor(-1.0, s=3).exact_good_turing_closed(2, 5) == johnson_estimate(1.0, 3, 2, 5)
    assert PitmanYor(-0.5, s=6).exact_good_turing_closed(1, 4) == johnson_estimate(0.5, 6, 1, 4)


def test_johnson_validation():
    with pytest.raises(ValueError):
        johnson_estimate(0.0, 3, 1, 2)
    with pytest.raises(ValueError):
        johnson_estimate(0.5, 0, 1, 2)
    with pytest.raises(ValueError):
        johnson_estimate(0.5, 3, 0, 2)
    with pytest.raises(ValueError):
        johnson_estimate(0.5, 3, 3, 2)


def test_structural_density_is_beta():
    m = PitmanYor(0.5, 0.5)  # beta(0.5, 1.0)
    for x in (0.1, 0.4, 0.9):
        assert m.structural_density(x) == pytest.approx(
            beta_dist.pdf(x, 0.5, 1.0), rel=1e-12
        )
    total, _ = quad(m.structural_density, 0.0, 1.0)
    assert total == pytest.approx(1.0, rel=1e-8)


def test_structural_density_validation():
    m = PitmanYor(0.5, 0.5)
    with pytest.raises(ValueError):
        m.structural_density(0.0)
    with pytest.raises(ValueError):
        m.structural_density(1.0)
    with pytest.raises(ValueError):
        PitmanYor(-0.5, s=3).structural_density(0.5)


def test_structural_species_dirichlet_process_harmonic():
    # alpha = 0: E[K_n] = sum_{j<n} theta/(theta+j)
    m = PitmanYor(0.0, 1.0)
    assert m.expected_species_structural(4) == pytest.approx(25 / 12, rel=1e-13)
    assert m.expected_species_structural(1) == pytest.approx(1.0, rel=1e-14)
    for n in (2, 7, 30):
        want = sum(1.0 / (1.0 + j) for j in range(n))
        assert m.expected_species_structural(n) == pytest.approx(want, rel=1e-12)


def test_structural_species_matches_partition_route():
    for m in (PitmanYor(0.5, 0.5), PitmanYor(0.25, 2.0)):
        for n in (1, 2, 3, 10, 40):
            assert m.expected_species_structural(n) == pytest.approx(
                m.expected_species(n), rel=1e-10
            )


def test_structural_species_rejects_negative_alpha():
    with pytest.raises(ValueError):
        PitmanYor(-0.5, s=3).expected_species_structural(5)


def test_finite_model_species_bounded():
    m = PitmanYor(-1.0, s=3)
    values = [m.expected_species(n) for n in (1, 2, 5, 20, 60)]
    assert all(v <= 3.0 + 1e-12 for v in values)
    assert values == sorted(values)
    # symmetric Dirichlet(1,1,1): a given species is missed with
    # probability 2/(n+2), so E[K_n] = 3n/(n+2)
    assert values[-1] == pytest.approx(90 / 31, rel=1e-10)


def test_generic_weight_route_matches_closed_urn():
    m = PitmanYor(0.5, 0.5)
    for counts in ([1], [2, 1], [3, 3, 1]):
        old_c, new_c = m.predictive_probs(counts)
        old_g, new_g = GibbsModel.predictive_probs(m, counts)
        np.testing.assert_allclose(old_g, old_c, rtol=1e-12)
        assert new_g == pytest.approx(new_c, rel=1e-12)
