import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from mimo_tradeoff import (ConfigError, DomainError, PowerModel, SystemConfig,
                           antenna_gain_expectation, average_capacity, circuit_power,
                           ee_at_se, ee_grad_power_sign, energy_efficiency, evaluate_point,
                           power_for_se, se_grad_antennas, se_grad_power,
                           spectral_efficiency, total_power)
from mimo_tradeoff.analytic import ee_value, se_value

from oracles import central_difference, exponential_top_sum_mean, se_mp


@st.composite
def configs(draw, min_rho=0.0):
    k = draw(st.integers(1, 32))
    m_t = draw(st.integers(k, 256))
    n = draw(st.integers(k, m_t))
    rho_max = draw(st.floats(1e-3, 1e3))
    rho = draw(st.floats(min_rho, 1.0)) * rho_max
    noise = draw(st.floats(1e-2, 1e2))
    return SystemConfig(K=k, M_t=m_t, N=n, rho_d=rho, rho_d_max=rho_max,
                        beta=1.0, noise_power=noise)


class TestPowerModel:
    def test_aggregates(self, pm):
        assert pm.q1 == pytest.approx(0.170, abs=1e-12)
        assert pm.q2 == pytest.approx(0.0484, abs=1e-12)

    def test_circuit_power_examples(self, pm):
        assert circuit_power(PowerModel.zero(), 10) == 0.0
        assert circuit_power(pm, 1) == pytest.approx(0.2184, abs=1e-12)
        assert circuit_power(pm, 16) == pytest.approx(0.9444, abs=1e-12)

    def test_circuit_power_needs_a_chain(self, pm):
        with pytest.raises(DomainError):
            circuit_power(pm, 0)

    def test_circuit_power_increasing(self, pm):
        values = [circuit_power(pm, n) for n in range(1, 50)]
        assert np.all(np.diff(values) > 0)

    def test_total_power_examples(self, pm):
        assert total_power(PowerModel.zero(), 1.0, 5) == 1.0
        assert total_power(pm, 1.0, 16) == pytest.approx(1.9444, abs=1e-12)
        assert total_power(pm, 0.0, 8) == pytest.approx(0.5572, abs=1e-12)

    def test_total_power_rejects_negative(self, pm):
        with pytest.raises(DomainError):
            total_power(pm, -1.0, 4)

    @pytest.mark.parametrize("bad", [-1e-3, float("nan"), float("inf")])
    def test_rejects_bad_component(self, bad):
        with pytest.raises(ConfigError):
            PowerModel(q_adc=bad)


class TestSystemConfig:
    def test_n_below_k(self):
        with pytest.raises(ConfigError, match="K ≤ N"):
            SystemConfig(K=8, M_t=64, N=4)

    def test_n_above_mt(self):
        with pytest.raises(ConfigError, match="N ≤ M_t"):
            SystemConfig(K=8, M_t=64, N=65)

    def test_mt_below_k(self):
        with pytest.raises(ConfigError, match="M_t >= K"):
            SystemConfig(K=8, M_t=4, N=4)

    def test_power_limits(self):
        with pytest.raises(ConfigError, match="rho_d"):
            SystemConfig(K=2, M_t=4, N=2, rho_d=5.0, rho_d_max=1.0)
        with pytest.raises(ConfigError):
            SystemConfig(K=2, M_t=4, N=2, rho_d=-1.0)

    @pytest.mark.parametrize("field", ["beta", "noise_power", "rho_d_max"])
    def test_positive_fields(self, field):
        with pytest.raises(ConfigError):
            SystemConfig(K=2, M_t=4, N=2, rho_d=0.0, **{field: 0.0})

    def test_integer_fields(self):
        with pytest.raises(ConfigError):
            SystemConfig(K=2.0, M_t=4, N=2)
        with pytest.raises(ConfigError):
            SystemConfig(K=True, M_t=4, N=2)


class TestGainExpectation:
    def test_full_selection_is_exact(self):
        assert antenna_gain_expectation(20, 20, 8) == 160.0

    def test_top_two_of_four(self):
        value = antenna_gain_expectation(4, 2, 1)
        assert value == pytest.approx(2 * (1 + math.log(2)), rel=1e-15)
        exact = float(exponential_top_sum_mean(4, 2))
        assert exact == pytest.approx(19 / 6)
        assert 0.06 < (value - exact) / exact < 0.08

    def test_large_array(self):
        assert antenna_gain_expectation(100, 20, 8) == pytest.approx(417.51006598945606, rel=1e-14)

    def test_too_many_selected(self):
        with pytest.raises(DomainError):
            antenna_gain_expectation(4, 5, 1)

    @pytest.mark.parametrize("m", [2, 5, 10, 40])
    def test_k1_tracks_exact_order_statistics(self, m):
        # the approximation replaces harmonic sums by logarithms
        for n in range(1, m + 1):
            exact = float(exponential_top_sum_mean(m, n))
            assert antenna_gain_expectation(m, n, 1) >= exact - 1e-12


class TestSpectralEfficiency:
    def test_zero_power(self):
        assert spectral_efficiency(SystemConfig(K=8, M_t=64, N=16, rho_d=0.0)) == 0.0

    def test_full_selection(self):
        value = spectral_efficiency(SystemConfig(K=8, M_t=16, N=16, rho_d=1.0))
        assert value == pytest.approx(8 * math.log2(3), rel=1e-14)
        assert value == pytest.approx(float(se_mp(8, 16, 16, 1)), rel=1e-14)

    def test_selected(self, cfg):
        assert spectral_efficiency(cfg) == pytest.approx(20.233747534244337, rel=1e-13)
        assert spectral_efficiency(cfg) == pytest.approx(float(se_mp(8, 64, 16, 1)), rel=1e-14)

    def test_noise_scales_snr(self, cfg):
        a = spectral_efficiency(cfg.replace(rho_d=2.0, noise_power=2.0))
        assert a == pytest.approx(spectral_efficiency(cfg), rel=1e-15)

    def test_average_capacity(self, cfg):
        assert average_capacity(cfg.replace(beta=1.0)) == spectral_efficiency(cfg)
        assert average_capacity(cfg) == pytest.approx(404.67495e6, rel=1e-6)
        with pytest.raises(ConfigError):
            cfg.replace(beta=0.0)

    @given(configs())
    @settings(max_examples=200, deadline=None)
    def test_matches_high_precision(self, c):
        expected = float(se_mp(c.K, c.M_t, c.N, c.rho_d, c.noise_power))
        assert spectral_efficiency(c) == pytest.approx(expected, rel=1e-12, abs=1e-300)


class TestEnergyEfficiency:
    def test_zero_power_gives_zero(self, cfg, pm):
        for n in (8, 16, 64):
            assert energy_efficiency(cfg.replace(N=n, rho_d=0.0), pm) == 0.0

    def test_composed_example(self, cfg, pm):
        assert energy_efficiency(cfg, pm) == pytest.approx(208123303.17058565, rel=1e-12)

    def test_doubling_circuit_power_at_zero_transmit(self, cfg, pm):
        # EE -> 0 at rho_d = 0, so compare the slopes just above it
        c = cfg.replace(rho_d=1e-12)
        ratio = energy_efficiency(c, pm) / energy_efficiency(c, pm.scaled(2.0))
        assert ratio == pytest.approx(2.0, rel=1e-9)

    def test_undefined_without_power(self, cfg):
        with pytest.raises(DomainError):
            energy_efficiency(cfg.replace(rho_d=0.0), PowerModel.zero())

    @given(configs(min_rho=1e-3))
    @settings(max_examples=100, deadline=None)
    def test_point_consistency(self, c):
        p = evaluate_point(c, PowerModel())
        assert p.ee == pytest.approx(c.beta * p.se / p.q_total, rel=1e-12)
        assert p.se >= 0 and p.ee >= 0 and p.q_total > 0

    def test_beta_scaling(self, cfg, pm):
        base = energy_efficiency(cfg, pm)
        assert energy_efficiency(cfg.replace(beta=cfg.beta * 7.5), pm) == pytest.approx(7.5 * base, rel=1e-14)


class TestGradients:
    def test_se_grad_power_examples(self, cfg):
        c = SystemConfig(K=3, M_t=12, N=12, rho_d=0.0)
        assert se_grad_power(c) == pytest.approx(12 / math.log(2), rel=1e-14)
        assert se_grad_power(cfg) == pytest.approx(9.542186929413456, rel=1e-12)

    def test_se_grad_antennas_examples(self, cfg):
        assert se_grad_antennas(cfg.replace(N=64)) == 0.0
        assert se_grad_antennas(cfg.replace(rho_d=0.0)) == 0.0
        assert se_grad_antennas(cfg) == pytest.approx(0.34646500837578030, rel=1e-12)

    def test_se_grad_antennas_domain(self, cfg):
        with pytest.raises(DomainError):
            se_grad_antennas(cfg, n=65.0)

    @given(configs(min_rho=1e-3))
    @settings(max_examples=200, deadline=None)
    def test_power_gradient_matches_difference(self, c):
        # 40-digit arithmetic allows a step far below the float-safe one
        h = 1e-12 * c.rho_d
        fd = central_difference(lambda r: se_mp(c.K, c.M_t, c.N, r, c.noise_power), c.rho_d, h)
        assert se_grad_power(c) >= 0
        assert se_grad_power(c) == pytest.approx(float(fd), rel=1e-9)

    @given(configs(min_rho=1e-3), st.floats(0.0, 0.999))
    @settings(max_examples=200, deadline=None)
    def test_antenna_gradient_matches_difference(self, c, frac):
        n = c.K + frac * (c.M_t - c.K)
        if n == c.M_t:
            return
        h = 1e-12 * n
        fd = central_difference(lambda x: se_mp(c.K, c.M_t, x, c.rho_d, c.noise_power), n, h)
        assert se_grad_antennas(c, n=n) >= 0
        assert se_grad_antennas(c, n=n) == pytest.approx(float(fd), rel=1e-9)

    def test_ee_sign_at_zero_power(self, cfg, pm):
        g = ee_grad_power_sign(cfg.replace(rho_d=0.0), pm)
        assert g == pytest.approx(4.507232789283249, rel=1e-12)
        assert g > 0

    def test_ee_sign_at_large_power(self, cfg, pm):
        assert ee_grad_power_sign(cfg.replace(rho_d=1e6, rho_d_max=1e6), pm) < 0

    def test_ee_sign_without_circuit_power(self, cfg):
        assert ee_grad_power_sign(cfg.replace(rho_d=0.0), PowerModel.zero()) == 0.0
        assert ee_grad_power_sign(cfg, PowerModel.zero()) < 0

    def test_ee_sign_matches_difference(self, rng, pm):
        for _ in range(100):
            k = int(rng.integers(1, 17))
            m_t = int(rng.integers(k, 129))
            n = int(rng.integers(k, m_t + 1))
            rho = float(10 ** rng.uniform(-3, 2))
            c = SystemConfig(K=k, M_t=m_t, N=n, rho_d=rho, rho_d_max=200.0, beta=1.0)
            h = 1e-6 * max(rho, 1.0)
            fd = (energy_efficiency(c.replace(rho_d=rho + h), pm)
                  - energy_efficiency(c.replace(rho_d=rho - h), pm)) / (2 * h)
            assert np.sign(ee_grad_power_sign(c, pm)) == np.sign(fd)


class TestMonotonicity:
    @given(configs(min_rho=1e-3))
    @settings(max_examples=100, deadline=None)
    def test_se_increasing_in_power(self, c):
        rhos = np.linspace(0.0, c.rho_d_max, 50)
        se = se_value(c.K, c.M_t, c.N, rhos, c.noise_power)
        assert np.all(np.diff(se) > 0)

    @given(configs(min_rho=1e-3))
    @settings(max_examples=100, deadline=None)
    def test_se_nondecreasing_in_antennas(self, c):
        ns = np.linspace(c.K, c.M_t, 64)
        se = se_value(c.K, c.M_t, ns, c.rho_d, c.noise_power)
        assert np.all(np.diff(se) >= -1e-12 * np.abs(se[1:]))

    @given(configs(min_rho=1e-3))
    @settings(max_examples=50, deadline=None)
    def test_ee_unimodal_in_power(self, c):
        pm = PowerModel()
        rhos = np.geomspace(1e-6, 1e6, 2000)
        ee = ee_value(c.K, c.M_t, c.N, rhos, pm.q1, pm.q2, 1.0, c.noise_power)
        d = np.sign(np.diff(ee))
        d = d[d != 0]
        assert np.count_nonzero(np.diff(d)) <= 1
        assert d[0] > 0 or np.all(d < 0)


class TestEeOfSe:
    def test_inverse_power(self, cfg):
        se = spectral_efficiency(cfg)
        assert power_for_se(cfg, se) == pytest.approx(cfg.rho_d, rel=1e-12)
        assert power_for_se(cfg, 0.0) == 0.0

    def test_negative_se(self, cfg):
        with pytest.raises(DomainError):
            power_for_se(cfg, -1.0)

    @given(configs(min_rho=1e-3))
    @settings(max_examples=100, deadline=None)
    def test_matches_parametric_sweep(self, c):
        pm = PowerModel()
        for rho in np.linspace(c.rho_d_max * 1e-3, c.rho_d_max, 7):
            p = evaluate_point(c, pm, rho_d=float(rho))
            assert ee_at_se(c, pm, p.se) == pytest.approx(p.ee, rel=1e-9)
