import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import C_GRID, EPS_GRID
from poissonpe.channel import (
    ChannelParams,
    PpmConfig,
    channel_transition,
    ppm_config_from,
    regime_check,
)
from poissonpe.errors import DomainError


class TestChannelParams:
    def test_dark_current_is_exact_product(self):
        params = ChannelParams(epsilon=1e-3, c=0.7)
        assert params.lam == 0.7 * 1e-3

    @pytest.mark.parametrize("eps,c", [(0.0, 0.0), (-1.0, 0.0), (1.0, -0.1), (math.nan, 0.0)])
    def test_validation(self, eps, c):
        with pytest.raises(DomainError):
            ChannelParams(epsilon=eps, c=c)


class TestChannelTransition:
    def test_silent_channel(self):
        assert channel_transition(0.0, ChannelParams(1e-3, 0.0), 0) == 1.0

    def test_unit_pulse_single_count(self):
        value = channel_transition(1.0, ChannelParams(1e-3, 0.0), 1)
        assert value == pytest.approx(math.exp(-1.0), rel=1e-15)

    def test_spot_value(self):
        # amplitude 0.144 on dark current 0.001: no-count mass e^{-0.145}
        value = channel_transition(0.144, ChannelParams(1e-3, 1.0), 0)
        assert value == pytest.approx(0.86502229311074129, rel=1e-14)

    def test_negative_amplitude_rejected(self):
        with pytest.raises(DomainError):
            channel_transition(-0.5, ChannelParams(1e-3, 0.0), 0)

    @pytest.mark.parametrize("x,lam", [(0.0, 0.0), (0.3, 0.01), (2.0, 1.5), (17.0, 0.4)])
    def test_normalization_over_counts(self, x, lam):
        params = ChannelParams(epsilon=1.0, c=lam)
        mean = lam + x
        cutoff = int(mean + 40.0 * math.sqrt(mean) + 40.0)
        total = sum(channel_transition(x, params, y) for y in range(cutoff + 1))
        assert total == pytest.approx(1.0, abs=1e-12)


class TestPpmConfigFrom:
    def test_frame_at_one_per_mille(self):
        cfg = ppm_config_from(ChannelParams(1e-3, 0.0))
        assert cfg.b == 144
        assert cfg.eta == pytest.approx(0.144, rel=1e-15)

    def test_frame_at_one_percent(self):
        cfg = ppm_config_from(ChannelParams(1e-2, 0.0))
        assert cfg.b == 21
        assert cfg.eta == pytest.approx(0.21, rel=1e-15)

    def test_frame_in_wide_regime(self):
        cfg = ppm_config_from(ChannelParams(1e-6, 0.1))
        assert cfg.b == 72382
        assert cfg.eta == pytest.approx(0.072382, rel=1e-15)

    @given(st.floats(min_value=1e-12, max_value=0.999999))
    def test_frame_always_at_least_two(self, eps):
        cfg = ppm_config_from(ChannelParams(eps, 0.0))
        assert cfg.b >= 2

    @given(st.floats(min_value=1e-12, max_value=0.999999))
    def test_floor_bracket(self, eps):
        params = ChannelParams(eps, 0.0)
        quotient = 1.0 / (eps * params.log_inv_eps)
        cfg = ppm_config_from(params)
        assert cfg.b <= quotient < cfg.b + 1

    @pytest.mark.parametrize("eps", [1.0, 1.5])
    def test_domain(self, eps):
        with pytest.raises(DomainError):
            ppm_config_from(ChannelParams(eps, 0.0))

    def test_custom_config_is_validated(self):
        with pytest.raises(DomainError):
            PpmConfig(b=1, eta=0.1)
        with pytest.raises(DomainError):
            PpmConfig(b=4, eta=0.0)


class TestRegimeCheck:
    def test_deep_wideband_point(self):
        flags = regime_check(ChannelParams(1e-5, 0.0))
        assert flags.lower_ok and flags.upper_ok

    def test_large_power_fails_upper(self):
        assert not regime_check(ChannelParams(0.5, 0.0)).upper_ok

    def test_large_dark_ratio_fails_lower(self):
        assert not regime_check(ChannelParams(1e-3, 10.0)).lower_ok

    @pytest.mark.parametrize("eps", EPS_GRID)
    @pytest.mark.parametrize("c", C_GRID)
    def test_monotone_in_dark_ratio(self, eps, c):
        flags = regime_check(ChannelParams(eps, c))
        for smaller in [x for x in C_GRID if x < c]:
            relaxed = regime_check(ChannelParams(eps, smaller))
            if flags.lower_ok:
                assert relaxed.lower_ok
            if flags.upper_ok:
                assert relaxed.upper_ok
