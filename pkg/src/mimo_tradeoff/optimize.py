"""EE/SE trade-off optimization over antenna count and transmit power.

The feasible region is ``K <= N <= M_t`` (integer) and
``0 <= rho_d <= rho_d_max``.  Three views of the two-objective problem are
offered: EE-priority joint maximization, Pareto-front enumeration on a
grid, and the rho-parametrized EE(SE) curve for a fixed antenna count.
"""

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .analytic import (PowerModel, SystemConfig, TradeoffPoint, ee_sign_value,
                       ee_value, evaluate_point, se_value)
from .errors import DomainError

__all__ = [
    "FeasibleRegion", "ParetoFront", "PowerOptimum", "RegimeCurve",
    "feasible_region", "optimal_power", "optimal_antennas", "joint_optimize",
    "pareto_front", "nondominated_mask", "ee_se_regimes", "RHO_EPS_FRACTION",
]

# EE(0) = 0, so the power search starts just above zero
RHO_EPS_FRACTION = 1e-9
DEFAULT_TOL_FRACTION = 1e-6


@dataclass(frozen=True)
class FeasibleRegion:
    n_min: int
    n_max: int
    rho_min: float
    rho_max: float

    def __post_init__(self):
        if self.n_min > self.n_max:
            raise DomainError(f"empty antenna range [{self.n_min}, {self.n_max}]")
        if not self.rho_min < self.rho_max:
            raise DomainError(f"empty power range [{self.rho_min}, {self.rho_max}]")

    @property
    def rho_eps(self):
        return self.rho_min + RHO_EPS_FRACTION * (self.rho_max - self.rho_min)

    def contains(self, n, rho):
        return self.n_min <= n <= self.n_max and self.rho_min <= rho <= self.rho_max


def feasible_region(cfg: SystemConfig) -> FeasibleRegion:
    return FeasibleRegion(cfg.K, cfg.M_t, 0.0, cfg.rho_d_max)


class PowerOptimum(NamedTuple):
    """Result of :func:`optimal_power`.

    ``boundary`` is ``"upper"`` when EE still increases at ``rho_d_max``,
    ``"lower"`` when EE decreases from the start (the supremum is then
    approached as ``rho -> 0+``) and ``None`` for an interior maximum.
    """

    rho_star: float
    ee_star: float
    boundary: Optional[str] = None


def _sign(cfg, pm, n, rho):
    return float(ee_sign_value(cfg.K, cfg.M_t, n, rho, pm.q1, pm.q2, cfg.noise_power))


def _ee(cfg, pm, n, rho):
    return float(ee_value(cfg.K, cfg.M_t, n, rho, pm.q1, pm.q2,
                          cfg.beta, cfg.noise_power))


def optimal_power(cfg: SystemConfig, pm: PowerModel, n=None, tol=None) -> PowerOptimum:
    """Maximize EE over ``rho_d`` in ``(0, rho_d_max]`` for a fixed antenna count.

    EE is quasi-concave in ``rho_d``: the sign function from
    :func:`~mimo_tradeoff.analytic.ee_grad_power_sign` changes from positive
    to negative at most once, so the maximizer is found by bisecting it.

    Parameters
    ----------
    cfg : SystemConfig
    pm : PowerModel
    n : int, optional
        Antenna count, defaults to ``cfg.N``.
    tol : float, optional
        Width of the final bracket in watts, defaults to ``1e-6 * rho_d_max``.
    """
    n = cfg.N if n is None else n
    if not cfg.K <= n <= cfg.M_t:
        raise DomainError(f"need K ≤ n ≤ M_t, got K={cfg.K}, n={n}, M_t={cfg.M_t}")
    if tol is None:
        tol = DEFAULT_TOL_FRACTION * cfg.rho_d_max
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")

    region = feasible_region(cfg)
    lo, hi = region.rho_eps, region.rho_max
    if _sign(cfg, pm, n, hi) >= 0:
        return PowerOptimum(hi, _ee(cfg, pm, n, hi), "upper")
    if _sign(cfg, pm, n, lo) <= 0:
        return PowerOptimum(lo, _ee(cfg, pm, n, lo), "lower")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _sign(cfg, pm, n, mid) > 0:
            lo = mid
        else:
            hi = mid
    rho = 0.5 * (lo + hi)
    return PowerOptimum(rho, _ee(cfg, pm, n, rho), None)


def optimal_antennas(cfg: SystemConfig, pm: PowerModel, rho_d=None):
    """Integer antenna count maximizing EE at fixed power, by exhaustive scan.

    Returns ``(n_star, ee_star)``.  Ties resolve to the smaller count.
    """
    rho_d = cfg.rho_d if rho_d is None else rho_d
    if not 0 <= rho_d <= cfg.rho_d_max:
        raise DomainError(f"rho_d={rho_d} outside [0, {cfg.rho_d_max}]")
    ns = np.arange(cfg.K, cfg.M_t + 1)
    ee = ee_value(cfg.K, cfg.M_t, ns, rho_d, pm.q1, pm.q2, cfg.beta, cfg.noise_power)
    i = int(np.argmax(ee))  # first occurrence, i.e. smallest N on ties
    return int(ns[i]), float(ee[i])


def joint_optimize(cfg: SystemConfig, pm: PowerModel, tol=None) -> TradeoffPoint:
    """EE-maximizing ``(N, rho_d)`` over the whole feasible region."""
    best = None
    for n in range(cfg.K, cfg.M_t + 1):
        opt = optimal_power(cfg, pm, n, tol)
        if best is None or opt.ee_star > best[1].ee_star:
            best = (n, opt)
    n, opt = best
    return evaluate_point(cfg, pm, n=n, rho_d=opt.rho_star)


@dataclass(frozen=True)
class ParetoFront:
    """Non-dominated ``(SE, EE)`` points sorted by increasing SE."""

    points: tuple

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def se(self):
        return np.array([p.se for p in self.points])

    def ee(self):
        return np.array([p.ee for p in self.points])


def nondominated_mask(se, ee):
    """Boolean mask of points not dominated in (maximize SE, maximize EE).

    A point is dominated when another has SE and EE both at least as large
    and one of them strictly larger.  Exact duplicates do not dominate each
    other.
    """
    se = np.asarray(se, dtype=float)
    ee = np.asarray(ee, dtype=float)
    order = np.lexsort((-ee, -se))
    keep = np.zeros(se.shape, dtype=bool)
    best_ee = -np.inf
    se_at_best = np.inf
    for i in order:
        if ee[i] > best_ee:
            keep[i] = True
            best_ee, se_at_best = ee[i], se[i]
        elif ee[i] == best_ee and se_at_best == se[i]:
            keep[i] = True
    return keep


def pareto_front(cfg: SystemConfig, pm: PowerModel, rho_grid=200, n_values=None) -> ParetoFront:
    """Enumerate the EE/SE Pareto front on ``n_values x linspace(0, rho_d_max, rho_grid)``."""
    if rho_grid < 1:
        raise DomainError(f"rho_grid must be >= 1, got {rho_grid}")
    if n_values is None:
        n_values = range(cfg.K, cfg.M_t + 1)
    ns = np.asarray(list(n_values), dtype=int)
    if ns.size == 0:
        raise DomainError("n_values is empty")
    if ns.min() < cfg.K or ns.max() > cfg.M_t:
        raise DomainError(f"n_values must lie in [K={cfg.K}, M_t={cfg.M_t}]")
    rhos = np.linspace(0.0, cfg.rho_d_max, rho_grid) if rho_grid > 1 else np.array([cfg.rho_d])

    n_grid, rho_mesh = np.meshgrid(ns, rhos, indexing="ij")
    n_flat, rho_flat = n_grid.ravel(), rho_mesh.ravel()
    se = se_value(cfg.K, cfg.M_t, n_flat, rho_flat, cfg.noise_power)
    q_total = rho_flat + pm.q1 + n_flat * pm.q2
    ee = cfg.beta * se / q_total

    idx = np.flatnonzero(nondominated_mask(se, ee))
    idx = idx[np.lexsort((rho_flat[idx], n_flat[idx], se[idx]))]
    points = tuple(TradeoffPoint(int(n_flat[i]), float(rho_flat[i]), float(se[i]),
                                 float(ee[i]), float(q_total[i])) for i in idx)
    return ParetoFront(points)


@dataclass(frozen=True)
class RegimeCurve:
    """EE as a function of SE for one antenna count, traced by sweeping power."""

    n: int
    rho: np.ndarray
    se: np.ndarray
    ee: np.ndarray
    peak_index: int

    @property
    def se_min(self):
        return float(self.se[0])

    @property
    def se_max(self):
        return float(self.se[-1])

    @property
    def se_peak(self):
        return float(self.se[self.peak_index])

    @property
    def rho_peak(self):
        return float(self.rho[self.peak_index])

    @property
    def ee_peak(self):
        return float(self.ee[self.peak_index])

    @property
    def curve(self):
        return np.column_stack([self.se, self.ee])

    @property
    def slope_at_min(self):
        """dEE/dSE at the low-SE end (first grid segment)."""
        return float((self.ee[1] - self.ee[0]) / (self.se[1] - self.se[0]))

    @property
    def slope_at_max(self):
        """dEE/dSE at the high-SE end (last grid segment)."""
        return float((self.ee[-1] - self.ee[-2]) / (self.se[-1] - self.se[-2]))

    @property
    def quasi_concave(self):
        """EE non-decreasing up to the peak and non-increasing after it."""
        p = self.peak_index
        rising = np.all(np.diff(self.ee[:p + 1]) >= 0)
        falling = np.all(np.diff(self.ee[p:]) <= 0)
        return bool(rising and falling)


def ee_se_regimes(cfg: SystemConfig, pm: PowerModel, n=None, se_grid=1000) -> RegimeCurve:
    """Trace EE versus SE for ``rho_d`` in ``[rho_eps, rho_d_max]``.

    SE is strictly increasing in ``rho_d``, so the power sweep maps one to
    one onto an SE sweep.
    """
    n = cfg.N if n is None else n
    if not cfg.K <= n <= cfg.M_t:
        raise DomainError(f"need K ≤ n ≤ M_t, got K={cfg.K}, n={n}, M_t={cfg.M_t}")
    if se_grid < 2:
        raise DomainError(f"se_grid must be >= 2, got {se_grid}")
    region = feasible_region(cfg)
    rho = np.linspace(region.rho_eps, region.rho_max, se_grid)
    se = se_value(cfg.K, cfg.M_t, n, rho, cfg.noise_power)
    ee = cfg.beta * se / (rho + pm.q1 + n * pm.q2)
    return RegimeCurve(n=n, rho=rho, se=se, ee=ee, peak_index=int(np.argmax(ee)))
