"""Rayleigh channel realizations, zero-forcing precoding and antenna selection.

Channels are stored user-major: row ``k`` of the ``K x M`` matrix is the
channel of user ``k``, column ``j`` the channel seen from antenna ``j``.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError, SingularChannelError

__all__ = [
    "ChannelMatrix", "Precoder", "AntennaSelection", "NormBounds",
    "generate_channel", "zf_precoder", "norm_inverse_bounds",
    "select_antennas", "instantaneous_capacity", "selected_capacity",
    "verify_received_signal", "column_gains", "complex_gaussian",
    "MAX_GRAM_CONDITION",
]

MAX_GRAM_CONDITION = 1e12


@dataclass(frozen=True, eq=False)
class ChannelMatrix:
    """A ``K x M`` complex channel realization."""

    entries: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.entries, dtype=complex)
        if h.ndim != 2:
            raise DomainError(f"channel must be 2-D, got shape {h.shape}")
        if not np.all(np.isfinite(h)):
            raise DomainError("channel entries must be finite")
        h.setflags(write=False)
        object.__setattr__(self, "entries", h)

    @property
    def k(self):
        return self.entries.shape[0]

    @property
    def m(self):
        return self.entries.shape[1]

    def columns(self, indices):
        return ChannelMatrix(self.entries[:, np.asarray(indices)])


@dataclass(frozen=True, eq=False)
class Precoder:
    """Zero-forcing precoder ``V`` (``M x K``) and its normalization ``||V||_F^2 / K``."""

    entries: np.ndarray
    normalization: float

    @property
    def frobenius_sq(self):
        return self.normalization * self.entries.shape[1]


@dataclass(frozen=True, eq=False)
class AntennaSelection:
    """Selected column indices with their gains in non-increasing order."""

    indices: np.ndarray
    gains: np.ndarray

    @property
    def n(self):
        return len(self.indices)

    @property
    def total_gain(self):
        return float(np.sum(self.gains))


class NormBounds(tuple):
    """``(exact, harmonic, bound)`` with ``exact <= harmonic <= bound``."""

    __slots__ = ()

    def __new__(cls, exact, harmonic, bound):
        return super().__new__(cls, (exact, harmonic, bound))

    exact = property(lambda self: self[0])
    harmonic = property(lambda self: self[1])
    bound = property(lambda self: self[2])


def _as_channel(h):
    return h if isinstance(h, ChannelMatrix) else ChannelMatrix(h)


def complex_gaussian(rng, shape):
    """i.i.d. CN(0, 1) samples: variance 1/2 on each of the real and imaginary parts."""
    z = rng.standard_normal(tuple(shape) + (2,))
    return (z[..., 0] + 1j * z[..., 1]) * math.sqrt(0.5)


def generate_channel(seed, k: int, m: int) -> ChannelMatrix:
    """Draw a ``k x m`` Rayleigh channel.

    Parameters
    ----------
    seed : int, numpy.random.SeedSequence or numpy.random.Generator
        Source of randomness.  A generator is advanced; an integer or seed
        sequence always yields the same matrix.
    k, m : int
        Number of users and antennas, ``1 <= k <= m``.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if m < k:
        raise DomainError(f"zero-forcing needs m >= k, got k={k}, m={m}")
    rng = np.random.default_rng(seed)
    return ChannelMatrix(complex_gaussian(rng, (k, m)))


def _checked_gram(h):
    gram = h @ h.conj().T
    cond = np.linalg.cond(gram)
    if not np.isfinite(cond) or cond > MAX_GRAM_CONDITION:
        raise SingularChannelError(cond)
    return gram


def zf_precoder(h) -> Precoder:
    """Zero-forcing precoder ``V = H^H (H H^H)^{-1}``.

    Raises
    ------
    SingularChannelError
        If the condition number of ``H H^H`` exceeds ``MAX_GRAM_CONDITION``.
    """
    h = _as_channel(h).entries
    gram = _checked_gram(h)
    # (H H^H)^{-1} is Hermitian, so V = ((H H^H)^{-1} H)^H
    v = np.linalg.solve(gram, h).conj().T
    fro_sq = float(np.sum(np.abs(v) ** 2))
    return Precoder(entries=v, normalization=fro_sq / h.shape[0])


def norm_inverse_bounds(h) -> NormBounds:
    """Exact ``1/||V||_F^2`` and its two approximations.

    ``harmonic`` is ``1 / sum_k 1/||h_k||^2`` and ``bound`` is
    ``sum_k ||h_k||^2 / K^2``.  For any full-rank channel
    ``exact <= harmonic <= bound``.
    """
    h = _as_channel(h).entries
    gram = _checked_gram(h)
    k = h.shape[0]
    trace_inv = float(np.real(np.trace(np.linalg.inv(gram))))
    row_norms = np.sum(np.abs(h) ** 2, axis=1)
    return NormBounds(1.0 / trace_inv,
                      1.0 / float(np.sum(1.0 / row_norms)),
                      float(np.sum(row_norms)) / k**2)


def column_gains(h):
    """Per-antenna gains ``gamma_j = sum_k |h_kj|^2``; works on stacked channels."""
    h = h.entries if isinstance(h, ChannelMatrix) else np.asarray(h)
    return np.sum(h.real**2 + h.imag**2, axis=-2)


def select_antennas(h, n: int) -> AntennaSelection:
    """Pick the ``n`` antennas with the largest gains.

    Ties go to the lower column index.  Indices are 0-based and ordered by
    decreasing gain.
    """
    h = _as_channel(h)
    if not h.k <= n <= h.m:
        raise DomainError(f"need K ≤ n ≤ M, got K={h.k}, n={n}, M={h.m}")
    gains = column_gains(h)
    order = np.argsort(-gains, kind="stable")[:n]
    return AntennaSelection(indices=order, gains=gains[order])


def instantaneous_capacity(h, rho_d, beta=1.0, noise=1.0, n=None) -> float:
    """Zero-forcing sum capacity ``K beta log2(1 + rho_d / (noise ||V||_F^2))``.

    If ``n`` is given the precoder is built on the ``n`` selected antennas.
    """
    h = _as_channel(h)
    if rho_d < 0:
        raise DomainError(f"transmit power must be non-negative, got {rho_d}")
    if n is not None:
        h = h.columns(select_antennas(h, n).indices)
    fro_sq = zf_precoder(h).frobenius_sq
    return h.k * beta * math.log2(1.0 + rho_d / (noise * fro_sq))


def selected_capacity(h, n, rho_d, beta=1.0, noise=1.0) -> float:
    """Sum capacity with antenna selection, ``K beta log2(1 + rho_d/(K^2 noise) sum gamma)``."""
    h = _as_channel(h)
    if rho_d < 0:
        raise DomainError(f"transmit power must be non-negative, got {rho_d}")
    sel = select_antennas(h, n)
    return h.k * beta * math.log2(1.0 + rho_d * sel.total_gain / (h.k**2 * noise))


def verify_received_signal(h, rho_d, symbols, noise_draw, n=None):
    """Received signal ``y = sqrt(rho_d / (K F)) H V x + n`` with ZF precoding.

    The full expression including inter-user terms is evaluated; with an
    exact zero-forcing precoder ``y - n`` reduces to ``sqrt(rho_d/(K F)) x``.
    """
    h = _as_channel(h)
    if n is not None:
        h = h.columns(select_antennas(h, n).indices)
    x = np.asarray(symbols, dtype=complex)
    noise_draw = np.asarray(noise_draw, dtype=complex)
    if x.shape != (h.k,) or noise_draw.shape != (h.k,):
        raise DomainError(f"symbols and noise must have shape ({h.k},)")
    pre = zf_precoder(h)
    scale = math.sqrt(rho_d / (h.k * pre.normalization))
    return scale * (h.entries @ (pre.entries @ x)) + noise_draw
