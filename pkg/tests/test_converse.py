import math
import random

import numpy as np
import pytest

from conftest import C_GRID, DECADE_EPS, EPS_GRID, log_spaced
from poissonpe.channel import ChannelParams, regime_check
from poissonpe.converse import (
    _curvature_factor,
    geometric_entropy_bound,
    output_dist_r,
    pe_upper_duality,
    pe_upper_prp3,
    phi,
    phi_derivative,
    sup_phi,
)
from poissonpe.errors import DomainError, RegimeError
from poissonpe.ook import pe_lower_ook
from poissonpe.ppm import pe_lower_ppm_simple_exact, pe_lower_ppm_soft_exact


def upper_ok_draws(n, seed=20240917):
    rng = random.Random(seed)
    draws = []
    while len(draws) < n:
        eps = 10.0 ** rng.uniform(-9.0, -3.0)
        c = rng.uniform(0.0, 10.0)
        params = ChannelParams(eps, c)
        if regime_check(params).upper_ok:
            draws.append(params)
    return draws


def dense_grid_max(params, points=2**20):
    # independent maximizer: brute-force dense log grid over the same range
    lam = params.lam
    lo = max(lam, 1e-12 * max(1.0, lam))
    hi = max(1.0, 24.0 / params.log_inv_eps)
    xs = np.logspace(math.log10(lo), math.log10(hi), points)
    values = (
        -np.expm1(-xs)
        / xs
        * np.log((xs + lam) / ((1.0 + params.c) * params.epsilon * params.log_inv_eps))
    )
    i = int(np.argmax(values))
    return float(xs[i]), float(values[i])


class TestOutputDistR:
    def test_zero_count_mass(self):
        assert output_dist_r(0, ChannelParams(1e-3, 1.0)) == pytest.approx(0.998, rel=1e-15)

    def test_tail_spot_value(self):
        assert output_dist_r(2, ChannelParams(1e-3, 1.0)) == pytest.approx(
            0.00024761594415514257, rel=1e-14
        )

    @pytest.mark.parametrize("eps", [1e-6, 1e-4, 1e-2])
    @pytest.mark.parametrize("c", C_GRID)
    def test_normalization_under_truncation(self, eps, c):
        params = ChannelParams(eps, c)
        cutoff = int(math.ceil(10.0 * params.log_inv_eps))
        total = sum(output_dist_r(y, params) for y in range(cutoff + 1))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            output_dist_r(0, ChannelParams(0.5, 1.0))
        with pytest.raises(DomainError):
            output_dist_r(0, ChannelParams(0.5, 0.2))


class TestPhi:
    def test_spot_value(self):
        value = phi(1.0, ChannelParams(1e-3, 0.0))
        assert value == pytest.approx(3.1448696579810153, rel=1e-13)

    def test_prefactor_keeps_value_below_log(self):
        for params in (ChannelParams(1e-4, 0.0), ChannelParams(1e-6, 2.0)):
            for x in log_spaced(1e-3, 20.0, 9):
                log_term = math.log(
                    (x + params.lam)
                    / ((1.0 + params.c) * params.epsilon * params.log_inv_eps)
                )
                if log_term >= 0.0:
                    assert phi(x, params) <= log_term + 1e-12

    def test_zero_of_the_logarithm(self):
        params = ChannelParams(1e-4, 0.5)
        x0 = (1.0 + params.c) * params.epsilon * params.log_inv_eps - params.lam
        assert abs(phi(x0, params)) <= 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            phi(0.0, ChannelParams(1e-4, 0.0))
        with pytest.raises(DomainError):
            phi(1.0, ChannelParams(0.5, 0.0))


class TestPhiDerivative:
    @pytest.mark.parametrize("c", C_GRID)
    @pytest.mark.parametrize("eps", [1e-6, 1e-4])
    def test_matches_finite_differences(self, eps, c):
        params = ChannelParams(eps, c)
        for x in log_spaced(1e-3, 50.0, 25):
            h = 1e-6 * x
            numeric = (phi(x + h, params) - phi(x - h, params)) / (2.0 * h)
            value = phi_derivative(x, params)
            assert abs(value - numeric) <= max(1e-6, 1e-4 * abs(value))

    def test_negative_beyond_the_peak(self):
        assert phi_derivative(2.0, ChannelParams(1e-5, 0.0)) < 0.0

    def test_curvature_factor_small_x_limit(self):
        assert _curvature_factor(1e-4) == pytest.approx(-0.5, abs=1e-3)

    @pytest.mark.parametrize("eps", DECADE_EPS)
    @pytest.mark.parametrize("c", C_GRID)
    def test_negative_past_guaranteed_range(self, eps, c):
        params = ChannelParams(eps, c)
        if not regime_check(params).upper_ok:
            pytest.skip("outside the upper-bound regime")
        lo = 12.0 / params.log_inv_eps
        for x in log_spaced(lo * 1.0000001, 100.0, 50):
            assert phi_derivative(x, params) < 0.0


class TestSupPhi:
    def test_spot_maximum(self):
        aux = sup_phi(ChannelParams(1e-5, 0.0))
        assert aux.value == pytest.approx(6.800755452326882, rel=1e-10)
        assert aux.x_star == pytest.approx(0.26986758466382015, rel=1e-6)
        assert aux.bracket_verified

    def test_maximizer_within_guaranteed_range(self):
        for params in upper_ok_draws(20):
            aux = sup_phi(params)
            assert aux.x_star <= 12.0 / params.log_inv_eps
            assert aux.bracket_verified

    def test_supremum_dominates_probes(self):
        params = ChannelParams(1e-4, 1.0)
        aux = sup_phi(params)
        assert aux.value >= phi(1.0, params)

    def test_analytic_ceiling(self):
        for params in upper_ok_draws(20):
            ceiling = math.log(
                13.0 / ((1.0 + params.c) * params.epsilon * params.log_inv_eps**2)
            )
            assert sup_phi(params).value <= ceiling

    def test_matches_dense_grid_oracle(self):
        for params in upper_ok_draws(20, seed=7031):
            aux = sup_phi(params)
            _, oracle_value = dense_grid_max(params)
            assert aux.value >= oracle_value - 1e-12
            assert aux.value == pytest.approx(oracle_value, rel=1e-8)

    def test_strict_mode(self):
        with pytest.raises(RegimeError):
            sup_phi(ChannelParams(0.2, 0.0), strict=True)


class TestUpperBounds:
    def test_duality_spot_values(self):
        assert pe_upper_duality(ChannelParams(1e-5, 0.0)).value == pytest.approx(
            11.335095670952188, rel=1e-10
        )
        assert pe_upper_duality(ChannelParams(1e-4, 10.0)).value == pytest.approx(
            8.5723946252121915, rel=1e-10
        )
        assert pe_upper_duality(ChannelParams(1e-6, 0.1)).value == pytest.approx(
            13.308198638314086, rel=1e-10
        )

    def test_prp3_spot_value(self):
        assert pe_upper_prp3(ChannelParams(1e-5, 0.0)).value == pytest.approx(
            13.725274325692958, rel=1e-12
        )

    def test_prp3_dark_ratio_shift(self):
        delta = (
            pe_upper_prp3(ChannelParams(1e-5, 1.0)).value
            - pe_upper_prp3(ChannelParams(1e-5, 0.0)).value
        )
        assert delta == pytest.approx(-0.60225510206490399, rel=1e-10)

    @pytest.mark.parametrize("eps", DECADE_EPS)
    @pytest.mark.parametrize("c", C_GRID)
    def test_duality_below_closed_form(self, eps, c):
        params = ChannelParams(eps, c)
        if not regime_check(params).upper_ok:
            pytest.skip("outside the upper-bound regime")
        assert pe_upper_duality(params).value <= pe_upper_prp3(params).value

    @pytest.mark.parametrize("eps", [1e-6, 1e-5])
    @pytest.mark.parametrize("c", [0.0, 0.1, 1.0])
    def test_upper_dominates_lowers(self, eps, c):
        params = ChannelParams(eps, c)
        assert regime_check(params).upper_ok
        upper = pe_upper_duality(params).value
        lowers = [
            pe_lower_ook(params).value,
            pe_lower_ppm_simple_exact(params).value,
            pe_lower_ppm_soft_exact(params).value,
        ]
        assert upper >= max(lowers)

    def test_strict_mode(self):
        with pytest.raises(RegimeError):
            pe_upper_duality(ChannelParams(0.2, 0.0), strict=True)
        with pytest.raises(RegimeError):
            pe_upper_prp3(ChannelParams(0.2, 0.0), strict=True)

    def test_advisory_mode_tags_instead_of_raising(self):
        # outside the regime the value is still produced, carrying the flags
        bound = pe_upper_duality(ChannelParams(1e-3, 10.0))
        assert not bound.regime.upper_ok
        assert math.isfinite(bound.value)


class TestGeometricEntropyBound:
    def test_unit_power(self):
        assert geometric_entropy_bound(1.0) == pytest.approx(2.0 * math.log(2.0), rel=1e-15)

    def test_leading_order(self):
        eps = 1e-8
        ratio = geometric_entropy_bound(eps) / (eps * math.log(1.0 / eps))
        assert 1.0 <= ratio <= 1.1
        assert ratio == pytest.approx(1.0542868105093405, rel=1e-12)

    def test_matches_reference_expansion(self):
        eps = 1e-6
        gap = geometric_entropy_bound(eps) / eps - (math.log(1.0 / eps) + 1.0)
        assert abs(gap) < 0.01

    @pytest.mark.parametrize("eps", EPS_GRID)
    def test_dominates_dark_free_soft_bound(self, eps):
        params = ChannelParams(eps, 0.0)
        rate = eps * pe_lower_ppm_soft_exact(params).value
        assert rate <= geometric_entropy_bound(eps)

    def test_domain(self):
        with pytest.raises(DomainError):
            geometric_entropy_bound(0.0)
