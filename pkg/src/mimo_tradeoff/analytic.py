"""Closed-form power, spectral-efficiency and energy-efficiency model.

Downlink single-cell massive MIMO with zero-forcing precoding and
transmit-antenna selection: ``K`` single-antenna users are served by ``N``
antennas chosen out of ``M_t`` available ones.  Everything here is a pure
function of its arguments.

The scalar helpers prefixed with ``se_``/``ee_`` that take raw numbers
(rather than a :class:`SystemConfig`) broadcast over numpy arrays and treat
``n`` as a real number, which is what the antenna-count derivative and the
optimizer grids need.
"""

from dataclasses import dataclass, fields, replace
import math
import numbers

import numpy as np

from .errors import ConfigError, DomainError

__all__ = [
    "SystemConfig", "PowerModel", "TradeoffPoint",
    "circuit_power", "total_power", "antenna_gain_expectation",
    "spectral_efficiency", "average_capacity", "energy_efficiency",
    "se_grad_power", "se_grad_antennas", "ee_grad_power_sign",
    "evaluate_point", "power_for_se", "ee_at_se",
    "se_value", "ee_value", "ee_sign_value",
    "DEFAULT_BETA", "DEFAULT_RHO_D", "DEFAULT_RHO_D_MAX",
]

LN2 = math.log(2.0)

DEFAULT_BETA = 20e6          # Hz
DEFAULT_RHO_D = 1.0          # W, i.e. 30 dBm
DEFAULT_RHO_D_MAX = 100.0    # W


def _is_int(x):
    return isinstance(x, numbers.Integral) and not isinstance(x, bool)


def _is_real(x):
    return isinstance(x, numbers.Real) and not isinstance(x, bool)


@dataclass(frozen=True)
class SystemConfig:
    """Scenario parameters of a single cell.

    Parameters
    ----------
    K : int
        Number of single-antenna users.
    M_t : int
        Number of available transmit antennas.
    N : int
        Number of selected (active) transmit antennas, ``K <= N <= M_t``.
    rho_d : float
        Downlink transmit power in watts, ``0 <= rho_d <= rho_d_max``.
    rho_d_max : float
        Maximum transmit power in watts.
    beta : float
        Bandwidth in Hz.
    noise_power : float
        Receiver noise variance in watts.  At 1.0 the SNR equals ``rho_d``.
    """

    K: int
    M_t: int
    N: int
    rho_d: float = DEFAULT_RHO_D
    rho_d_max: float = DEFAULT_RHO_D_MAX
    beta: float = DEFAULT_BETA
    noise_power: float = 1.0

    def __post_init__(self):
        for name in ("K", "M_t", "N"):
            value = getattr(self, name)
            if not _is_int(value):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
        for name in ("rho_d", "rho_d_max", "beta", "noise_power"):
            value = getattr(self, name)
            if not _is_real(value) or not math.isfinite(value):
                raise ConfigError(f"{name} must be a finite number, got {value!r}")
        if self.K < 1:
            raise ConfigError(f"K must be >= 1, got {self.K}")
        if self.M_t < self.K:
            raise ConfigError(
                f"M_t >= K violated (M_t={self.M_t}, K={self.K}): "
                f"zero-forcing needs at least as many antennas as users")
        if not self.K <= self.N <= self.M_t:
            raise ConfigError(
                f"constraint K ≤ N ≤ M_t violated "
                f"(K={self.K}, N={self.N}, M_t={self.M_t})")
        if self.rho_d_max <= 0:
            raise ConfigError(f"rho_d_max must be > 0, got {self.rho_d_max}")
        if not 0 <= self.rho_d <= self.rho_d_max:
            raise ConfigError(
                f"constraint 0 ≤ rho_d ≤ rho_d_max violated "
                f"(rho_d={self.rho_d}, rho_d_max={self.rho_d_max})")
        if self.beta <= 0:
            raise ConfigError(f"beta must be > 0, got {self.beta}")
        if self.noise_power <= 0:
            raise ConfigError(f"noise_power must be > 0, got {self.noise_power}")

    def replace(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class PowerModel:
    """Circuit power of the transceiver chain, all values in watts.

    ``q_filt_tx`` is the transmit-side filter (counted once per active
    antenna), ``q_filt_rx`` the filter on the shared receive path.
    """

    q_dac: float = 15.6e-3
    q_mix: float = 30.3e-3
    q_filt_tx: float = 2.5e-3
    q_syn: float = 50.0e-3
    q_lna: float = 20.0e-3
    q_ifa: float = 3.0e-3
    q_filt_rx: float = 2.5e-3
    q_adc: float = 14.2e-3

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not _is_real(value) or not math.isfinite(value) or value < 0:
                raise ConfigError(
                    f"{f.name} must be a finite non-negative power, got {value!r}")

    @property
    def q1(self):
        """Fixed power independent of the number of active antennas."""
        return (2 * self.q_syn + self.q_lna + self.q_ifa + self.q_filt_rx
                + self.q_mix + self.q_adc)

    @property
    def q2(self):
        """Power of one active transmit chain."""
        return self.q_dac + self.q_mix + self.q_filt_tx

    @classmethod
    def zero(cls):
        return cls(**{f.name: 0.0 for f in fields(cls)})

    def scaled(self, factor):
        return PowerModel(**{f.name: getattr(self, f.name) * factor
                             for f in fields(self)})


@dataclass(frozen=True)
class TradeoffPoint:
    """One evaluated operating point ``(N, rho_d)``.

    ``se`` is in bit/s/Hz, ``ee`` in bit/J and ``q_total`` in W, with
    ``ee == beta * se / q_total``.
    """

    n: int
    rho_d: float
    se: float
    ee: float
    q_total: float


# -- array-friendly primitives ------------------------------------------------

def _gain_factor(m_t, n):
    return 1.0 + np.log(np.divide(m_t, n))


def se_value(k, m_t, n, rho_d, noise_power=1.0):
    """Sum spectral efficiency ``K log2(1 + (1 + ln(M_t/N)) rho_d N / (K sigma^2))``.

    Broadcasts over arrays; ``n`` may be real-valued.
    """
    snr = _gain_factor(m_t, n) * np.multiply(rho_d, n) / (k * noise_power)
    return k * np.log1p(snr) / LN2


def ee_value(k, m_t, n, rho_d, q1, q2, beta=DEFAULT_BETA, noise_power=1.0):
    """Energy efficiency ``beta * SE / (rho_d + q1 + n q2)`` in bit/J (broadcasting)."""
    q_total = np.add(rho_d, q1) + np.multiply(n, q2)
    return beta * se_value(k, m_t, n, rho_d, noise_power) / q_total


def ee_sign_value(k, m_t, n, rho_d, q1, q2, noise_power=1.0):
    """Function whose sign is the sign of dEE/drho_d (broadcasting).

    With ``a = (1 + ln(M_t/N)) N / (K sigma^2)`` and ``w = 1 + a rho_d``,
    returns ``a Q_max / w - ln(w)``.
    """
    a = _gain_factor(m_t, n) * np.divide(n, k * noise_power)
    w = 1.0 + a * np.asarray(rho_d, dtype=float)
    q_total = np.add(rho_d, q1) + np.multiply(n, q2)
    return a * q_total / w - np.log1p(a * np.asarray(rho_d, dtype=float))


# -- operations on validated configurations ------------------------------------

def circuit_power(pm: PowerModel, n: int) -> float:
    """Circuit power ``q1 + n q2`` of ``n`` active transmit chains."""
    if n < 1:
        raise DomainError(f"need at least one transmit chain, got n={n}")
    return pm.q1 + n * pm.q2


def total_power(pm: PowerModel, rho_d: float, n: int) -> float:
    """Total consumed power ``rho_d + q1 + n q2``."""
    if rho_d < 0:
        raise DomainError(f"transmit power must be non-negative, got {rho_d}")
    return rho_d + circuit_power(pm, n)


def antenna_gain_expectation(m_t: int, n: int, k: int) -> float:
    """Approximate mean of the sum of the ``n`` largest per-antenna gains.

    Each antenna gain is a sum of ``k`` unit-mean exponentials.  The value
    ``k n (1 + ln(m_t / n))`` is exact when ``n == m_t`` and an
    approximation otherwise; see :mod:`mimo_tradeoff.montecarlo` for the
    measured gap.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if not 1 <= n <= m_t:
        raise DomainError(f"cannot select n={n} of m_t={m_t} antennas")
    return k * n * (1.0 + math.log(m_t / n))


def spectral_efficiency(cfg: SystemConfig) -> float:
    """Cell sum spectral efficiency in bit/s/Hz."""
    return float(se_value(cfg.K, cfg.M_t, cfg.N, cfg.rho_d, cfg.noise_power))


def average_capacity(cfg: SystemConfig) -> float:
    """Average sum capacity in bit/s, i.e. ``beta`` times the spectral efficiency."""
    return cfg.beta * spectral_efficiency(cfg)


def energy_efficiency(cfg: SystemConfig, pm: PowerModel) -> float:
    """Energy efficiency ``beta * SE / Q_max`` in bit/J.

    The bandwidth factor makes the result a true bit-per-joule figure.
    """
    q_total = total_power(pm, cfg.rho_d, cfg.N)
    if q_total == 0:
        raise DomainError("total power is zero; energy efficiency undefined")
    return cfg.beta * spectral_efficiency(cfg) / q_total


def se_grad_power(cfg: SystemConfig) -> float:
    """Partial derivative of the spectral efficiency with respect to ``rho_d``."""
    a = (1.0 + math.log(cfg.M_t / cfg.N)) * cfg.N / (cfg.K * cfg.noise_power)
    return cfg.K * a / ((1.0 + a * cfg.rho_d) * LN2)


def se_grad_antennas(cfg: SystemConfig, n=None) -> float:
    """Partial derivative of the spectral efficiency with respect to ``N``.

    ``N`` is relaxed to a real number; pass ``n`` to evaluate at a
    non-integer antenna count instead of ``cfg.N``.
    """
    n = cfg.N if n is None else n
    if not 0 < n <= cfg.M_t:
        raise DomainError(f"N must lie in (0, M_t={cfg.M_t}], got {n}")
    g = 1.0 + math.log(cfg.M_t / n)
    snr = cfg.rho_d / cfg.noise_power
    return snr * math.log(cfg.M_t / n) / (LN2 * (1.0 + g * n * snr / cfg.K))


def ee_grad_power_sign(cfg: SystemConfig, pm: PowerModel) -> float:
    """Signed scalar with the same sign as dEE/drho_d at ``cfg.rho_d``.

    Positive at ``rho_d = 0`` whenever circuit power is positive and tends
    to minus infinity as ``rho_d`` grows, so EE rises then falls.
    """
    return float(ee_sign_value(cfg.K, cfg.M_t, cfg.N, cfg.rho_d,
                               pm.q1, pm.q2, cfg.noise_power))


def evaluate_point(cfg: SystemConfig, pm: PowerModel, n=None, rho_d=None) -> TradeoffPoint:
    """Evaluate ``(SE, EE, Q_max)`` at ``cfg`` with optional overrides of ``N``/``rho_d``."""
    if n is not None or rho_d is not None:
        cfg = cfg.replace(N=cfg.N if n is None else n,
                          rho_d=cfg.rho_d if rho_d is None else rho_d)
    q_total = total_power(pm, cfg.rho_d, cfg.N)
    se = spectral_efficiency(cfg)
    return TradeoffPoint(n=cfg.N, rho_d=cfg.rho_d, se=se,
                         ee=cfg.beta * se / q_total, q_total=q_total)


def power_for_se(cfg: SystemConfig, se: float) -> float:
    """Transmit power that yields spectral efficiency ``se`` at ``cfg.N`` antennas."""
    if se < 0:
        raise DomainError(f"spectral efficiency must be non-negative, got {se}")
    a = (1.0 + math.log(cfg.M_t / cfg.N)) * cfg.N / (cfg.K * cfg.noise_power)
    return math.expm1(se * LN2 / cfg.K) / a


def ee_at_se(cfg: SystemConfig, pm: PowerModel, se: float) -> float:
    """Energy efficiency as a function of spectral efficiency at fixed ``cfg.N``.

    Eliminates ``rho_d`` between the SE and EE expressions.
    """
    rho = power_for_se(cfg, se)
    q_total = rho + circuit_power(pm, cfg.N)
    if q_total == 0:
        raise DomainError("total power is zero; energy efficiency undefined")
    return cfg.beta * se / q_total
