"""Brute-force oracles against the closed-form optima, plus the zeta study."""

import math

import numpy as np
import pytest

from adwifi.market import MarketParams
from adwifi.oracle import (
    ad_price_draw,
    brute_ad_price,
    brute_sharing,
    brute_wifi_price,
    sample_asymptotic_market,
    sample_finite_market,
    sharing_draw,
    wifi_price_draw,
    write_zeta_csv,
    zeta_experiment,
    _rng_for,
)
from adwifi.platform import equilibrium_indicator
from adwifi.pricing import (
    optimal_ad_price_asymptotic,
    optimal_ad_price_finite,
    optimal_wifi_price,
    total_ad_spaces_sold,
    vo_ad_revenue,
    vo_total_revenue,
)
from adwifi.market import access_split


class TestBruteAdPrice:
    def test_agreement_sampled_draws(self):
        for i in range(60):
            result = ad_price_draw(0, i, grid_points=20_000)
            assert result.rel_gap < 1e-4

    def test_argmax_invariant_to_pf_and_delta(self):
        rng = _rng_for(101, 0)
        params, p_f, delta = sample_finite_market(rng)
        base = brute_ad_price(p_f, delta, params, grid_points=20_000)
        cap = params.beta * params.theta_max
        other = brute_ad_price(0.37 * cap, min(0.2, 1 - params.epsilon),
                               params, grid_points=20_000)
        assert math.isclose(base.argmax, other.argmax, rel_tol=1e-9)
        assert base.closed_form_arg == other.closed_form_arg

    def test_capacity_constraint_saturates_when_binding(self):
        # capacity-bound branch: the optimal price sells out all slots
        params = MarketParams.finite(N=500, theta_max=1.0, beta=0.5, lam=0.5,
                                     gamma=0.5, a=2.0, M=8.0, sigma_max=4.0,
                                     epsilon=0.01)
        price = optimal_ad_price_finite(params).price
        p_f = 0.1
        phi_a = access_split(p_f, params).phi_a
        q = total_ad_spaces_sold(price, p_f, params)
        assert math.isclose(q, params.lam * params.N * phi_a, rel_tol=1e-9)

    def test_rejects_coarse_grid(self):
        rng = _rng_for(0, 0)
        params, p_f, delta = sample_finite_market(rng)
        with pytest.raises(ValueError):
            brute_ad_price(p_f, delta, params, grid_points=50)

    def test_gap_not_worse_on_finer_grid(self):
        for i in (3, 11, 29):
            coarse = ad_price_draw(0, i, grid_points=10_000)
            fine = ad_price_draw(0, i, grid_points=100_000)
            assert fine.rel_gap <= max(coarse.rel_gap, 5e-13)

    def test_reproducible(self):
        assert ad_price_draw(7, 5, grid_points=10_000) == \
            ad_price_draw(7, 5, grid_points=10_000)


class TestBruteWifiPrice:
    def test_agreement_sampled_draws(self):
        for i in range(100):
            result = wifi_price_draw(0, i)
            assert abs(result.max_value - result.closed_form_value) < 1e-6
            assert result.rel_gap < 1e-9

    def test_boundary_argmax_under_strong_ads(self):
        params = MarketParams.asymptotic(N=100, theta_max=1.0, beta=0.01,
                                         lam=0.5, gamma=1.0, a=5.0, eta=5.0,
                                         epsilon=0.01)
        result = brute_wifi_price(1.0 - params.epsilon, params)
        cap = params.beta * params.theta_max
        assert result.closed_form_arg == cap
        assert abs(result.argmax - cap) < 1e-9

    def test_local_optimality_probes(self):
        rng = _rng_for(13, 0)
        params = sample_asymptotic_market(rng)
        delta = 0.3
        result = brute_wifi_price(delta, params)
        h = 1e-4 * params.beta * params.theta_max
        center = vo_total_revenue(result.argmax, delta, params)
        for probe in (result.argmax - h, result.argmax + h):
            if 0.0 <= probe <= params.beta * params.theta_max:
                assert vo_total_revenue(probe, delta, params) <= center + 1e-12 * abs(center)


class TestBruteSharing:
    def test_agreement_across_regimes(self):
        for i in range(40):  # index % 4 rotates through the Omega bands
            result = sharing_draw(0, i, grid_points=20_000)
            assert result.rel_gap < 1e-4

    def test_tiny_omega_boundary_argmax(self):
        rng = _rng_for(19, 0)
        params = sample_asymptotic_market(rng, omega_band=(0.001, 0.008))
        assert equilibrium_indicator(params) <= params.epsilon
        result = brute_sharing(params, grid_points=50_000)
        assert result.closed_form_arg == 1.0 - params.epsilon
        assert abs(result.argmax - (1.0 - params.epsilon)) < 1e-4

    def test_mid_omega_interior_argmax(self):
        rng = _rng_for(19, 1)
        params = sample_asymptotic_market(rng, omega_band=(0.4, 0.9))
        omega = equilibrium_indicator(params)
        result = brute_sharing(params, grid_points=200_000)
        assert abs(result.argmax - (1.0 + omega) / 2.0) < 1e-4


class TestSamplers:
    def test_finite_sampler_ranges(self):
        rng = _rng_for(0, 3)
        params, p_f, delta = sample_finite_market(rng)
        assert 100 <= params.N <= 1000
        assert params.M == int(params.M) and 1 <= params.M <= 15
        assert params.sigma_max == int(params.sigma_max) and 1 <= params.sigma_max <= 15
        assert 0.0 <= p_f <= params.beta * params.theta_max
        assert 0.0 <= delta <= 1.0 - params.epsilon

    def test_asymptotic_band_targeting(self):
        rng = _rng_for(0, 4)
        for lo, hi in ((0.011, 0.3), (0.4, 0.9), (1.1, 2.5)):
            params = sample_asymptotic_market(rng, omega_band=(lo, hi))
            omega = equilibrium_indicator(params)
            assert lo - 1e-9 <= omega <= hi + 1e-9


class TestZetaExperiment:
    def test_small_grid_structure(self, tmp_path):
        frame = zeta_experiment(M_range=range(6, 8), sigma_max_range=range(6, 8),
                                draws_per_cell=400, seed=0)
        assert list(frame.columns) == ["M", "sigma_max", "avg_zeta"]
        assert len(frame) == 4
        assert (frame.avg_zeta > 0.97).all()
        assert (frame.avg_zeta <= 1.0).all()
        path = tmp_path / "zeta.csv"
        write_zeta_csv(frame, path)
        text = path.read_text()
        assert text.splitlines()[0] == "M,sigma_max,avg_zeta"

    def test_reproducible(self):
        a = zeta_experiment(M_range=range(3, 5), sigma_max_range=range(3, 5),
                            draws_per_cell=200, seed=9)
        b = zeta_experiment(M_range=range(3, 5), sigma_max_range=range(3, 5),
                            draws_per_cell=200, seed=9)
        assert a.equals(b)

    def test_zeta_never_exceeds_one_per_draw(self):
        # ratio of revenue at the asymptotic price to revenue at the true
        # optimum, evaluated explicitly through the revenue functions
        rng = _rng_for(33, 0)
        for _ in range(200):
            params, p_f, delta = sample_finite_market(rng)
            asym_twin = MarketParams.asymptotic(
                N=params.N, theta_max=params.theta_max, beta=params.beta,
                lam=params.lam, gamma=params.gamma, a=params.a,
                eta=params.M / params.sigma_max, epsilon=params.epsilon)
            p_inf = optimal_ad_price_asymptotic(asym_twin)
            p_star = optimal_ad_price_finite(params).price
            num = vo_ad_revenue(p_f, min(p_inf, params.a * params.gamma),
                                delta, params)
            den = vo_ad_revenue(p_f, p_star, delta, params)
            if den > 0:
                assert num <= den * (1.0 + 1e-12)

    def test_zeta_invariant_to_pf_delta_n(self):
        rng = _rng_for(37, 0)
        for _ in range(50):
            params, _, _ = sample_finite_market(rng)
            asym_twin = MarketParams.asymptotic(
                N=params.N, theta_max=params.theta_max, beta=params.beta,
                lam=params.lam, gamma=params.gamma, a=params.a,
                eta=params.M / params.sigma_max, epsilon=params.epsilon)
            p_inf = min(optimal_ad_price_asymptotic(asym_twin),
                        params.a * params.gamma)
            p_star = optimal_ad_price_finite(params).price

            def ratio(n, p_f_frac, delta):
                scaled = MarketParams.finite(
                    N=n, theta_max=params.theta_max, beta=params.beta,
                    lam=params.lam, gamma=params.gamma, a=params.a,
                    M=params.M, sigma_max=params.sigma_max,
                    epsilon=params.epsilon)
                p_f = p_f_frac * params.beta * params.theta_max
                den = vo_ad_revenue(p_f, p_star, delta, scaled)
                if den == 0.0:
                    return None
                return vo_ad_revenue(p_f, p_inf, delta, scaled) / den

            first = ratio(100.0, 0.3, 0.2)
            second = ratio(900.0, 0.9, 0.7)
            if first is not None and second is not None:
                assert math.isclose(first, second, rel_tol=1e-12)
