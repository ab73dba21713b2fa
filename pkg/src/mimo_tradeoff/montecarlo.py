"""Seeded Monte Carlo checks of the closed-form gain and capacity expressions.

Randomness is organized so that the channel of trial ``i`` depends only on
``(master_seed, i)``: trials are grouped in fixed blocks of
``BLOCK_SIZE``, block ``b`` draws from a Philox generator keyed by
``SeedSequence(master_seed, spawn_key=(b,))`` and trial ``i`` takes slot
``i % BLOCK_SIZE`` of block ``i // BLOCK_SIZE``.  Blocks can therefore be
evaluated by any number of workers in any order; per-trial values are
reassembled in trial order before aggregation, so the statistics are
bit-identical for every worker count.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math
from typing import NamedTuple

import numpy as np

from .analytic import PowerModel, SystemConfig, antenna_gain_expectation, average_capacity
from .channel import ChannelMatrix, column_gains, complex_gaussian
from .errors import DomainError

__all__ = [
    "TrialPlan", "SampleStats", "GainValidation", "CapacityValidation",
    "ESTIMATORS", "BLOCK_SIZE", "DEFAULT_TRIALS",
    "run_trials", "sample_estimators", "trial_channel",
    "validate_gain_expectation", "validate_average_capacity",
]

BLOCK_SIZE = 1024
DEFAULT_TRIALS = 100_000


@dataclass(frozen=True)
class TrialPlan:
    master_seed: int
    trials: int
    cfg: SystemConfig
    pm: PowerModel = field(default_factory=PowerModel)

    def __post_init__(self):
        if isinstance(self.trials, bool) or int(self.trials) != self.trials or self.trials < 1:
            raise DomainError(f"trials must be a positive integer, got {self.trials!r}")
        if not 0 <= self.master_seed < 2**64:
            raise DomainError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed}")

    @property
    def n_blocks(self):
        return -(-self.trials // BLOCK_SIZE)


@dataclass(frozen=True, eq=False)
class SampleStats:
    mean: float
    std_dev: float
    ci95_half_width: float
    trials: int
    values: np.ndarray = field(repr=False)

    @classmethod
    def from_values(cls, values):
        values = np.asarray(values, dtype=float)
        n = values.size
        mean = float(np.mean(values))
        std = float(np.std(values, ddof=1)) if n > 1 else 0.0
        return cls(mean, std, 1.96 * std / math.sqrt(n), n, values)

    def __eq__(self, other):
        if not isinstance(other, SampleStats):
            return NotImplemented
        return (self.mean == other.mean and self.std_dev == other.std_dev
                and self.ci95_half_width == other.ci95_half_width
                and self.trials == other.trials
                and np.array_equal(self.values, other.values))


def _block_rng(master_seed, block):
    seq = np.random.SeedSequence(master_seed, spawn_key=(block,))
    return np.random.Generator(np.random.Philox(seq))


def _block_channels(plan, block):
    size = min(BLOCK_SIZE, plan.trials - block * BLOCK_SIZE)
    cfg = plan.cfg
    return complex_gaussian(_block_rng(plan.master_seed, block), (size, cfg.K, cfg.M_t))


def trial_channel(plan: TrialPlan, index: int) -> ChannelMatrix:
    """Regenerate the channel used by trial ``index``."""
    if not 0 <= index < plan.trials:
        raise DomainError(f"trial index {index} outside [0, {plan.trials})")
    block, slot = divmod(index, BLOCK_SIZE)
    rng = _block_rng(plan.master_seed, block)
    h = complex_gaussian(rng, (slot + 1, plan.cfg.K, plan.cfg.M_t))
    return ChannelMatrix(h[slot])


# Estimators act on a stack of channels (B, K, M_t) and return B values.

def _top_gains(h, n):
    gains = column_gains(h)
    return -np.sort(-gains, axis=-1)[:, :n]


def _selected_gain_sum(h, cfg):
    return _top_gains(h, cfg.N).sum(axis=-1)


def _selected_capacity(h, cfg):
    s = _selected_gain_sum(h, cfg)
    snr = cfg.rho_d * s / (cfg.K**2 * cfg.noise_power)
    return cfg.K * cfg.beta * np.log2(1.0 + snr)


def _instantaneous_capacity(h, cfg):
    if cfg.N < cfg.M_t:
        order = np.argsort(-column_gains(h), axis=-1, kind="stable")[:, :cfg.N]
        h = np.take_along_axis(h, order[:, None, :], axis=-1)
    gram = h @ np.conj(np.swapaxes(h, -1, -2))
    fro_sq = np.real(np.trace(np.linalg.inv(gram), axis1=-2, axis2=-1))
    if not np.all(np.isfinite(fro_sq) & (fro_sq > 0)):
        raise np.linalg.LinAlgError("singular channel realization in batch")
    return cfg.K * cfg.beta * np.log2(1.0 + cfg.rho_d / (cfg.noise_power * fro_sq))


ESTIMATORS = {
    "selected_gain_sum": _selected_gain_sum,
    "selected_capacity": _selected_capacity,
    "instantaneous_capacity": _instantaneous_capacity,
}


def sample_estimators(plan: TrialPlan, names, workers=1):
    """Per-trial values of several estimators evaluated on the same channels.

    Returns a dict mapping each name to an array of length ``plan.trials``
    in trial order.
    """
    names = list(names)
    for name in names:
        if name not in ESTIMATORS:
            raise DomainError(f"unknown estimator {name!r}; expected one of {sorted(ESTIMATORS)}")

    def run_block(block):
        h = _block_channels(plan, block)
        return [ESTIMATORS[name](h, plan.cfg) for name in names]

    blocks = range(plan.n_blocks)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_block, blocks))
    else:
        results = [run_block(b) for b in blocks]
    return {name: np.concatenate([r[j] for r in results]) for j, name in enumerate(names)}


def run_trials(plan: TrialPlan, estimator: str, workers=1) -> SampleStats:
    """Monte Carlo statistics of one named estimator."""
    return SampleStats.from_values(sample_estimators(plan, [estimator], workers)[estimator])


def _rel_error(analytic, empirical):
    if analytic == empirical:
        return 0.0
    return abs(analytic - empirical) / abs(empirical)


class GainValidation(NamedTuple):
    analytic: float
    empirical: SampleStats
    rel_error: float


class CapacityValidation(NamedTuple):
    """Closed-form average capacity against its Monte Carlo estimate.

    ``rel_error`` is the total gap.  ``jensen_reference`` is the capacity
    formula evaluated at the Monte Carlo mean gain sum, so
    ``jensen_gap = jensen_reference - empirical.mean`` isolates the effect
    of moving the expectation inside the logarithm, and
    ``gain_rel_error`` isolates the order-statistic approximation.
    """

    analytic: float
    empirical: SampleStats
    rel_error: float
    jensen_reference: float
    jensen_gap: float
    gain_rel_error: float


def validate_gain_expectation(plan: TrialPlan, workers=1) -> GainValidation:
    cfg = plan.cfg
    analytic = antenna_gain_expectation(cfg.M_t, cfg.N, cfg.K)
    stats = run_trials(plan, "selected_gain_sum", workers)
    return GainValidation(analytic, stats, _rel_error(analytic, stats.mean))


def validate_average_capacity(plan: TrialPlan, workers=1) -> CapacityValidation:
    cfg = plan.cfg
    values = sample_estimators(plan, ["selected_capacity", "selected_gain_sum"], workers)
    stats = SampleStats.from_values(values["selected_capacity"])
    mean_gain = float(np.mean(values["selected_gain_sum"]))
    analytic = average_capacity(cfg)
    reference = cfg.K * cfg.beta * math.log2(
        1.0 + cfg.rho_d * mean_gain / (cfg.K**2 * cfg.noise_power))
    gain_analytic = antenna_gain_expectation(cfg.M_t, cfg.N, cfg.K)
    return CapacityValidation(analytic, stats, _rel_error(analytic, stats.mean),
                              reference, reference - stats.mean,
                              _rel_error(gain_analytic, mean_gain))
