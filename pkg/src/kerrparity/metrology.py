"""Resolution (FWHM) and sensitivity (classical Fisher information) analysis."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Protocol

import numpy as np
from scipy.optimize import bisect

from .errors import DegeneratePointError, NonIdentifiableError, SolverError
from .signal import DetectorModel, InterferometerSpec, LossModel, ParityModel

DEGENERACY_THRESHOLD = 1e-12
IDENTIFIABILITY_THRESHOLD = 1e-18
DEFAULT_WINDOW = (1e-4, math.pi)
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_CHUNK = 4096


class Signal(Protocol):
    def evaluate(self, phases): ...


@dataclass(frozen=True)
class SensitivityReport:
    optimal_phase: float
    delta_phi: float
    fisher_classical: float
    scan_window: tuple[float, float]
    qcrb: float | None = None

    def to_dict(self):
        out = asdict(self)
        out["scan_window"] = list(self.scan_window)
        return out


@dataclass(frozen=True)
class ResolutionReport:
    fwhm: float
    peak_value: float
    peak_phase: float = 0.0
    coefficient_c: float | None = None
    broadening_cb: float | None = None

    def to_dict(self):
        return asdict(self)


def _fisher_from(values, derivs, squared_denominator=False):
    values = np.asarray(values, dtype=float)
    derivs = np.asarray(derivs, dtype=float)
    if squared_denominator:
        # (dP_e)^2 / P_e^2 + (dP_o)^2 / P_o^2 with dP_e = -dP_o = dPi / 2
        p_e, p_o = 0.5 * (1.0 + values), 0.5 * (1.0 - values)
        return 0.25 * derivs**2 * (1.0 / p_e**2 + 1.0 / p_o**2)
    return derivs**2 / (1.0 - values**2)


def fisher_curve(signal: Signal, phases, squared_denominator: bool = False) -> np.ndarray:
    """Classical Fisher information over ``phases``; NaN at degenerate points."""
    phases = np.asarray(phases, dtype=float)
    out = np.empty_like(phases)
    for lo in range(0, phases.size, _CHUNK):
        values, derivs = signal.evaluate(phases[lo : lo + _CHUNK])
        degenerate = 1.0 - values**2 < DEGENERACY_THRESHOLD
        with np.errstate(divide="ignore", invalid="ignore"):
            f = _fisher_from(values, derivs, squared_denominator)
        out[lo : lo + _CHUNK] = np.where(degenerate, np.nan, f)
    return out


def classical_fisher(signal: Signal, phase: float, squared_denominator: bool = False) -> float:
    """Fisher information of the even/odd outcome distribution at ``phase``.

    Default is the binary-outcome form ``(dPi)^2 / (1 - Pi^2)``; set
    ``squared_denominator`` for the 1/P^2 variant, kept for comparison only.
    """
    values, derivs = signal.evaluate(np.array([phase], dtype=float))
    v, dv = float(values[0]), float(derivs[0])
    if 1.0 - v * v < DEGENERACY_THRESHOLD:
        raise DegeneratePointError(f"parity {v!r} at phase {phase!r}: Fisher information is 0/0")
    return float(_fisher_from(v, dv, squared_denominator))


def sensitivity(signal: Signal, phase: float) -> float:
    """delta phi = 1 / sqrt(F_c)."""
    return _delta_from_fisher(classical_fisher(signal, phase))


def _delta_from_fisher(fisher: float) -> float:
    if fisher < IDENTIFIABILITY_THRESHOLD:
        raise NonIdentifiableError(f"Fisher information {fisher!r} too small")
    return 1.0 / math.sqrt(fisher)


def _golden_max(f, a: float, b: float, tol: float):
    """Maximise a unimodal ``f`` on [a, b] by golden-section search."""
    c, d = b - _GOLDEN * (b - a), a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def scan_points(mean_photons: float) -> int:
    return int(math.ceil(2000 * max(1.0, mean_photons)))


def optimal_sensitivity(
    spec: InterferometerSpec,
    loss: LossModel | None = None,
    detector: DetectorModel | None = None,
    window: tuple[float, float] = DEFAULT_WINDOW,
    points: int | None = None,
    qcrb: float | None = None,
    tol: float = 1e-10,
) -> SensitivityReport:
    """Best delta phi over ``window``: dense grid scan, then golden-section polish.

    The grid resolves the O(1/N^2)-wide features of the k = 2 signal; ties go to
    the smallest phase.
    """
    lo, hi = float(window[0]), float(window[1])
    if not 0.0 <= lo < hi:
        raise ValueError(f"invalid scan window {window!r}")
    model = ParityModel(spec, loss, detector)
    points = scan_points(spec.mean_photons) if points is None else int(points)
    grid = np.linspace(lo, hi, points)
    fisher = fisher_curve(model, grid)
    if np.all(np.isnan(fisher)):
        raise SolverError("every scan point is degenerate")
    best = int(np.nanargmax(fisher))
    left = grid[max(best - 1, 0)]
    right = grid[min(best + 1, points - 1)]

    def objective(phi):
        f = fisher_curve(model, np.array([phi]))[0]
        return -math.inf if math.isnan(f) else f

    phi_star, f_star = _golden_max(objective, left, right, tol)
    if not f_star > fisher[best]:
        phi_star, f_star = float(grid[best]), float(fisher[best])
    return SensitivityReport(
        optimal_phase=float(phi_star),
        delta_phi=_delta_from_fisher(f_star),
        fisher_classical=float(f_star),
        scan_window=(lo, hi),
        qcrb=qcrb,
    )


def fwhm(
    signal,
    mean_photons: float,
    step: float | None = None,
    tol: float = 1e-10,
    direction: int = 1,
) -> ResolutionReport:
    """Full width at half maximum of the main peak at phi = 0.

    Half maximum is taken relative to the peak value itself. The first
    crossing away from 0 is bracketed by a forward scan and refined by
    bisection; the width is twice the crossing (the signals are even).
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    step = math.pi / (400 * max(1.0, mean_photons)) if step is None else float(step)
    peak = float(signal.evaluate(np.array([0.0]))[0][0])
    half = 0.5 * peak
    n_steps = int(math.ceil(math.pi / step))
    offsets = np.arange(1, n_steps + 1) * step
    offsets[-1] = min(offsets[-1], math.pi)

    prev = 0.0
    for lo in range(0, n_steps, 256):
        chunk = offsets[lo : lo + 256]
        values = signal.evaluate(direction * chunk)[0]
        below = np.nonzero(values < half)[0]
        if below.size:
            i = int(below[0])
            a = prev if i == 0 else float(chunk[i - 1])
            b = float(chunk[i])
            break
        prev = float(chunk[-1])
    else:
        raise SolverError("no half-maximum crossing in (0, pi]")

    def excess(phi):
        return float(signal.evaluate(np.array([direction * phi]))[0][0]) - half

    root = bisect(excess, a, b, xtol=tol / 10, rtol=4 * np.finfo(float).eps, maxiter=500)
    return ResolutionReport(fwhm=2.0 * root, peak_value=peak, peak_phase=0.0)


def model_fwhm(
    spec: InterferometerSpec,
    loss: LossModel | None = None,
    detector: DetectorModel | None = None,
    **kwargs,
) -> ResolutionReport:
    return fwhm(ParityModel(spec, loss, detector), spec.mean_photons, **kwargs)


def resolution_coefficient(mean_photons: float) -> float:
    """C = FWHM(k=1) / FWHM(k=2) at equal mean photon number."""
    if not mean_photons > 0:
        raise ValueError("resolution coefficient needs N > 0")
    linear = model_fwhm(InterferometerSpec(mean_photons, 1)).fwhm
    nonlinear = model_fwhm(InterferometerSpec(mean_photons, 2)).fwhm
    return linear / nonlinear


def broadening_coefficient(mean_photons: float, loss: float) -> float:
    """C_B = FWHM(equal loss L in both arms) / FWHM(lossless), k = 2."""
    if not mean_photons > 0:
        raise ValueError("broadening coefficient needs N > 0")
    if not 0.0 <= loss < 1.0:
        raise ValueError(f"loss must lie in [0, 1), got {loss!r}")
    spec = InterferometerSpec(mean_photons, 2)
    lossy = model_fwhm(spec, LossModel.from_losses(loss, loss)).fwhm
    return lossy / model_fwhm(spec).fwhm
