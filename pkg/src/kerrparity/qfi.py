"""Phase-averaged quantum Fisher information for coherent x vacuum input.

After phase averaging the input is a Poisson mixture of photon-number states
``|u>|0>``. The first beam splitter maps each one to a binomial superposition,
and each component contributes ``F_q^u = u (u + 1) (2u - 1) / 2`` weighted by
its Poisson probability.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .series import DEFAULT_POLICY, TruncationPolicy, log_factorials, truncation_bound


@dataclass(frozen=True)
class QfiReport:
    mean_photons: float
    qfi: float
    qcrb: float
    terms_used: int
    per_component_sample: list[tuple[int, float]] | None = None

    def to_dict(self):
        out = asdict(self)
        if self.per_component_sample is not None:
            out["per_component_sample"] = [list(p) for p in self.per_component_sample]
        return out


def _check_n(mean_photons: float) -> float:
    if not (math.isfinite(mean_photons) and mean_photons >= 0):
        raise ValueError(f"mean_photons must be finite and >= 0, got {mean_photons!r}")
    return float(mean_photons)


def qfi_component(u: int) -> float:
    u = int(u)
    if u < 0:
        raise ValueError("photon number u must be >= 0")
    return float(u * (u + 1) * (2 * u - 1) // 2)


def poisson_weight(mean_photons: float, u: int) -> float:
    n = _check_n(mean_photons)
    if u < 0:
        raise ValueError("photon number u must be >= 0")
    if n == 0.0:
        return 1.0 if u == 0 else 0.0
    return math.exp(u * math.log(n) - n - math.lgamma(u + 1))


def qfi_closed_form(mean_photons: float) -> float:
    n = _check_n(mean_photons)
    return n**3 + 3.5 * n**2 + n


def qfi_phase_averaged(
    mean_photons: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
    sample: int = 0,
) -> QfiReport:
    """F_q = sum_u p_u F_q^u, truncated by the series policy.

    ``sample`` > 0 records (u, F_q^u) for the first ``sample`` components.
    """
    n = _check_n(mean_photons)
    n_max = truncation_bound(n, policy)
    u = np.arange(n_max + 1)
    if n == 0.0:
        weights = (u == 0).astype(float)
    else:
        weights = np.exp(u * math.log(n) - n - log_factorials(n_max))
    components = u * (u + 1) * (2 * u - 1) / 2.0
    qfi = math.fsum(weights * components)
    per = [(int(k), qfi_component(k)) for k in range(min(sample, n_max + 1))] or None
    return QfiReport(
        mean_photons=n,
        qfi=qfi,
        qcrb=math.inf if qfi == 0 else 1.0 / math.sqrt(qfi),
        terms_used=n_max + 1,
        per_component_sample=per,
    )


def qcrb(mean_photons: float) -> float:
    """Quantum Cramer-Rao bound 1 / sqrt(F_q)."""
    if not _check_n(mean_photons) > 0:
        raise ValueError("QCRB is unbounded for N = 0")
    return 1.0 / math.sqrt(qfi_phase_averaged(mean_photons).qfi)
