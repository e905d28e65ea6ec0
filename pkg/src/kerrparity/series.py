"""Truncated Fock series ``S(x, phi, k) = sum_n x^n exp(i n^k phi) / n!``.

Terms are evaluated in the log domain and accumulated with compensated
summation; the per-phase loop lives in the compiled kernel when available.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc

from ._backend import series_sums

SUPPORTED_ORDERS = (1, 2)

_TABLE_SIZE = 256
# exact integer factorial, then one correctly rounded log
_LOG_FACTORIAL = np.array([math.log(math.factorial(n)) for n in range(_TABLE_SIZE)])
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def log_factorial(n: int) -> float:
    """ln(n!) from a table below 256 and a Stirling series above it."""
    n = int(n)
    if n < 0:
        raise ValueError(f"log_factorial needs n >= 0, got {n}")
    if n < _TABLE_SIZE:
        return float(_LOG_FACTORIAL[n])
    inv = 1.0 / n
    inv2 = inv * inv
    corr = inv * (1.0 / 12 - inv2 * (1.0 / 360 - inv2 * (1.0 / 1260 - inv2 / 1680)))
    return n * math.log(n) - n + 0.5 * math.log(n) + _HALF_LOG_2PI + corr


def log_factorials(n_max: int) -> np.ndarray:
    """Vector of ln(n!) for n = 0..n_max."""
    if n_max < _TABLE_SIZE:
        return _LOG_FACTORIAL[: n_max + 1].copy()
    tail = [log_factorial(n) for n in range(_TABLE_SIZE, n_max + 1)]
    return np.concatenate([_LOG_FACTORIAL, tail])


def check_order(order: int) -> int:
    if order not in SUPPORTED_ORDERS:
        raise ValueError(f"nonlinearity order must be 1 or 2, got {order!r}")
    return int(order)


@dataclass(frozen=True)
class TruncationPolicy:
    """How many Fock terms to keep for a given mean photon number."""

    floor_terms: int = 30
    multiplier: float = 5.0
    tail_tolerance: float = 1e-12

    def __post_init__(self):
        if int(self.floor_terms) != self.floor_terms or self.floor_terms < 1:
            raise ValueError("floor_terms must be a positive integer")
        if not self.multiplier >= 5.0:
            raise ValueError("multiplier must be >= 5")
        if not 0.0 < self.tail_tolerance <= 1e-6:
            raise ValueError("tail_tolerance must lie in (0, 1e-6]")


DEFAULT_POLICY = TruncationPolicy()


def poisson_tail(mean: float, n_max: int) -> float:
    """P(X > n_max) for X ~ Poisson(mean)."""
    if mean == 0.0:
        return 0.0
    return float(gammainc(n_max + 1, mean))


def truncation_bound(mean_photons: float, policy: TruncationPolicy = DEFAULT_POLICY) -> int:
    """Smallest admissible cut-off: at least ``multiplier * N`` and ``floor_terms``,
    then grown until the Poisson(N) tail drops below ``tail_tolerance``."""
    if not math.isfinite(mean_photons):
        raise ValueError(f"mean_photons must be finite, got {mean_photons!r}")
    if mean_photons < 0:
        raise ValueError(f"mean_photons must be >= 0, got {mean_photons!r}")
    n_max = max(math.ceil(policy.multiplier * mean_photons), int(policy.floor_terms))
    while poisson_tail(mean_photons, n_max) >= policy.tail_tolerance:
        n_max += 1
    return n_max


@dataclass(frozen=True)
class SeriesParams:
    amplitude: float
    order: int
    phase: float = 0.0

    def __post_init__(self):
        if not (self.amplitude >= 0 and math.isfinite(self.amplitude)):
            raise ValueError(f"amplitude must be finite and >= 0, got {self.amplitude!r}")
        check_order(self.order)


def log_term_weights(amplitude: float, n_max: int, shift: float = 0.0) -> np.ndarray:
    """ln(x^n / n!) - shift for n = 0..n_max (``-inf`` where x = 0, n > 0)."""
    n = np.arange(n_max + 1, dtype=np.float64)
    if amplitude > 0:
        out = n * math.log(amplitude) - log_factorials(n_max)
    else:
        out = np.full(n_max + 1, -np.inf)
        out[0] = 0.0
    return out - shift


def scaled_series(amplitude: float, phases, order: int, n_max: int):
    """``exp(-x) * S`` and ``exp(-x) * dS/dphi`` as complex arrays over ``phases``.

    The ``exp(-x)`` scaling keeps every weight a Poisson(x) probability, so the
    sums stay O(1) however large ``x`` is.
    """
    check_order(order)
    phases = np.atleast_1d(np.asarray(phases, dtype=np.float64))
    weights = log_term_weights(amplitude, n_max, shift=amplitude)
    re, im, dre, dim = series_sums(weights, phases.ravel(), order)
    shape = phases.shape
    s = (np.asarray(re) + 1j * np.asarray(im)).reshape(shape)
    ds = (np.asarray(dre) + 1j * np.asarray(dim)).reshape(shape)
    return s, ds


def _default_n_max(params: SeriesParams) -> int:
    # the series weights are Poisson(x); x = N/2 in the ideal interferometer
    return truncation_bound(2.0 * params.amplitude)


def eval_series(params: SeriesParams, n_max: int | None = None) -> complex:
    """S(x, phi, k) truncated at ``n_max`` (default: the truncation policy at N = 2x)."""
    n_max = _default_n_max(params) if n_max is None else int(n_max)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    s, _ = scaled_series(params.amplitude, params.phase, params.order, n_max)
    return complex(s[0] * math.exp(params.amplitude))


def eval_series_derivative(params: SeriesParams, n_max: int | None = None) -> complex:
    """dS/dphi = sum_n x^n (i n^k) exp(i n^k phi) / n!."""
    n_max = _default_n_max(params) if n_max is None else int(n_max)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    _, ds = scaled_series(params.amplitude, params.phase, params.order, n_max)
    return complex(ds[0] * math.exp(params.amplitude))
