"""Parity signals of the Kerr Mach-Zehnder interferometer.

Every model reduces to ``prefactor * |exp(-x) S(x, phi, k)|^2`` with a
model-specific amplitude ``x`` and a phase-independent prefactor:

=========  ===========================  ====================================
model      amplitude x                   prefactor
=========  ===========================  ====================================
ideal      N / 2                         1
lossy      sqrt(eta_A eta_B) N / 2       exp(-N (sqrt(eta_A) - sqrt(eta_B))^2 / 2)
joint      as lossy                      lossy prefactor * exp(-2 d)
=========  ===========================  ====================================

Working with the scaled series means no intermediate ever exceeds O(1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .series import DEFAULT_POLICY, TruncationPolicy, check_order, scaled_series, truncation_bound

_CLAMP_SLACK = 1e-12


@dataclass(frozen=True)
class InterferometerSpec:
    mean_photons: float
    order: int = 2

    def __post_init__(self):
        if not (math.isfinite(self.mean_photons) and self.mean_photons >= 0):
            raise ValueError(f"mean_photons must be finite and >= 0, got {self.mean_photons!r}")
        check_order(self.order)

    def to_dict(self):
        return {"mean_photons": self.mean_photons, "order": self.order}


@dataclass(frozen=True)
class LossModel:
    """Per-arm transmissivities; loss happens before the Kerr medium."""

    transmissivity_a: float = 1.0
    transmissivity_b: float = 1.0

    def __post_init__(self):
        for name in ("transmissivity_a", "transmissivity_b"):
            eta = getattr(self, name)
            if not 0.0 <= eta <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {eta!r}")

    @classmethod
    def from_losses(cls, loss_a: float, loss_b: float) -> "LossModel":
        return cls(1.0 - loss_a, 1.0 - loss_b)

    @property
    def loss_a(self) -> float:
        return 1.0 - self.transmissivity_a

    @property
    def loss_b(self) -> float:
        return 1.0 - self.transmissivity_b

    def to_dict(self):
        return {"transmissivity_a": self.transmissivity_a, "transmissivity_b": self.transmissivity_b}


@dataclass(frozen=True)
class DetectorModel:
    """Dark counts per gate, with the gate widened by response-time jitter.

    The effective rate ``d = jitter_inflation * dark_count_rate`` is what
    damps the parity signal.
    """

    dark_count_rate: float = 0.0
    jitter_inflation: float = 10.0

    def __post_init__(self):
        if not self.dark_count_rate >= 0:
            raise ValueError(f"dark_count_rate must be >= 0, got {self.dark_count_rate!r}")
        if not self.jitter_inflation > 0:
            raise ValueError(f"jitter_inflation must be > 0, got {self.jitter_inflation!r}")
        d = self.effective_rate
        if not 0.0 <= d <= 1.0:
            raise ValueError(f"effective dark-count rate d = {d!r} out of range [0, 1]")

    @classmethod
    def from_effective_rate(cls, d: float, jitter_inflation: float = 10.0) -> "DetectorModel":
        return cls(d / jitter_inflation, jitter_inflation)

    @property
    def effective_rate(self) -> float:
        return self.jitter_inflation * self.dark_count_rate

    @property
    def damping(self) -> float:
        return math.exp(-2.0 * self.effective_rate)

    def to_dict(self):
        return {"dark_count_rate": self.dark_count_rate, "jitter_inflation": self.jitter_inflation}


@dataclass(frozen=True)
class ParityModel:
    """A parity signal phi -> <Pi> together with its analytic derivative.

    ``loss`` and ``detector`` are optional; both ``None`` is the ideal signal.
    """

    spec: InterferometerSpec
    loss: LossModel | None = None
    detector: DetectorModel | None = None
    policy: TruncationPolicy = field(default=DEFAULT_POLICY, repr=False)

    def __post_init__(self):
        if self.loss is not None and self.spec.order != 2:
            raise ValueError("the lossy parity signal is only defined for order k = 2")

    @property
    def amplitude(self) -> float:
        n = self.spec.mean_photons
        if self.loss is None:
            return n / 2.0
        return math.sqrt(self.loss.transmissivity_a * self.loss.transmissivity_b) * n / 2.0

    @property
    def prefactor(self) -> float:
        log_pref = 0.0
        if self.loss is not None:
            gap = math.sqrt(self.loss.transmissivity_a) - math.sqrt(self.loss.transmissivity_b)
            log_pref -= self.spec.mean_photons * gap * gap / 2.0
        if self.detector is not None:
            log_pref -= 2.0 * self.detector.effective_rate
        return math.exp(log_pref)

    @property
    def n_max(self) -> int:
        return truncation_bound(self.spec.mean_photons, self.policy)

    def evaluate(self, phases):
        """Signal values and d<Pi>/dphi at ``phases`` (arrays of the same shape)."""
        s, ds = scaled_series(self.amplitude, phases, self.spec.order, self.n_max)
        pref = self.prefactor
        values = pref * (s.real**2 + s.imag**2)
        derivs = 2.0 * pref * (s.real * ds.real + s.imag * ds.imag)
        return _clamp(values, pref), derivs

    def values(self, phases) -> np.ndarray:
        return self.evaluate(phases)[0]

    def __call__(self, phase: float) -> float:
        return float(self.evaluate(phase)[0][0])


def _clamp(values, upper):
    # only rounding-level excursions are touched; anything larger is left visible
    values = np.where((values < 0) & (values > -_CLAMP_SLACK), 0.0, values)
    return np.where((values > upper) & (values < upper + _CLAMP_SLACK), upper, values)


def parity_ideal(spec: InterferometerSpec, phase):
    return _scalar_or_array(ParityModel(spec).values(phase), phase)


def parity_linear_reference(mean_photons: float, phase):
    """Closed-form k = 1 parity signal exp(-N (1 - cos phi))."""
    if not (math.isfinite(mean_photons) and mean_photons >= 0):
        raise ValueError(f"mean_photons must be finite and >= 0, got {mean_photons!r}")
    return _scalar_or_array(np.exp(-mean_photons * (1.0 - np.cos(phase))), phase)


def parity_lossy(spec: InterferometerSpec, loss: LossModel, phase):
    return _scalar_or_array(ParityModel(spec, loss).values(phase), phase)


def parity_detector(raw_signal, detector: DetectorModel):
    raw = np.asarray(raw_signal, dtype=np.float64)
    if np.any(np.abs(raw) > 1.0 + _CLAMP_SLACK):
        raise ValueError("raw parity signal must lie in [-1, 1]")
    return _scalar_or_array(detector.damping * raw, raw_signal)


def parity_joint(spec: InterferometerSpec, loss: LossModel, detector: DetectorModel, phase):
    return _scalar_or_array(ParityModel(spec, loss, detector).values(phase), phase)


def even_odd_probabilities(signal_value: float) -> tuple[float, float]:
    v = float(signal_value)
    if abs(v) > 1.0 + _CLAMP_SLACK:
        raise ValueError(f"parity value {v!r} outside [-1, 1]")
    v = min(1.0, max(-1.0, v))
    p_even = 0.5 * (1.0 + v)
    return p_even, 1.0 - p_even


def _scalar_or_array(values, like):
    if np.ndim(like) == 0:
        return float(np.asarray(values).reshape(-1)[0])
    return np.asarray(values)


@dataclass(frozen=True)
class SignalTrace:
    phases: tuple
    values: tuple
    spec: InterferometerSpec
    loss: LossModel | None = None
    detector: DetectorModel | None = None
    truncation_used: int = 0

    def __post_init__(self):
        if len(self.phases) != len(self.values):
            raise ValueError("phases and values differ in length")
        if any(b <= a for a, b in zip(self.phases, self.phases[1:])):
            raise ValueError("phases must be strictly increasing")

    def to_dict(self):
        noise = None
        if self.loss is not None or self.detector is not None:
            noise = {
                "loss": None if self.loss is None else self.loss.to_dict(),
                "detector": None if self.detector is None else self.detector.to_dict(),
            }
        return {
            "spec": self.spec.to_dict(),
            "noise": noise,
            "truncation_used": self.truncation_used,
            "points": [{"phase": p, "value": v} for p, v in zip(self.phases, self.values)],
        }


def sample_trace(
    spec: InterferometerSpec,
    phase_grid: Sequence[float],
    loss: LossModel | None = None,
    detector: DetectorModel | None = None,
) -> SignalTrace:
    grid = np.asarray(phase_grid, dtype=np.float64)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("phase grid must be a non-empty 1-D sequence")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("phase grid must be strictly increasing")
    model = ParityModel(spec, loss, detector)
    values = model.values(grid)
    return SignalTrace(
        tuple(grid.tolist()), tuple(values.tolist()), spec, loss, detector, model.n_max
    )


def visibility(trace) -> float:
    """(max - min) / (max + min); accepts a SignalTrace or a bare sequence."""
    values = np.asarray(trace.values if isinstance(trace, SignalTrace) else trace, dtype=float)
    if values.size == 0:
        raise ValueError("visibility of an empty trace")
    hi, lo = values.max(), values.min()
    if hi + lo == 0.0:
        raise ValueError("visibility undefined for an all-zero trace")
    if lo == 0.0:
        return 1.0
    return float((hi - lo) / (hi + lo))
