"""Pure-numpy fallback for the Fock-series kernel.

Mirrors ``_series_ext.pyx`` exactly: one pass over the photon number with
Neumaier-compensated accumulation, vectorised across phases.
"""
import numpy as np

TWO_PI = 2.0 * np.pi


def _neumaier(total, comp, value):
    t = total + value
    comp += np.where(np.abs(total) >= np.abs(value), (total - t) + value, (value - t) + total)
    return t


def series_sums(log_mag, phases, order):
    """Return ``(re, im, dre, dim)`` of sum_n w_n exp(i n^k phi) and its phi-derivative.

    ``log_mag[n]`` is the log of the real weight of term ``n``.
    """
    log_mag = np.ascontiguousarray(log_mag, dtype=np.float64)
    reduced = np.remainder(np.asarray(phases, dtype=np.float64), TWO_PI)

    acc = [np.zeros_like(reduced) for _ in range(4)]
    comp = [np.zeros_like(reduced) for _ in range(4)]
    for n, lm in enumerate(log_mag):
        w = np.exp(lm)
        if w == 0.0:
            continue
        nk = float(n**order)
        theta = np.remainder(nk * reduced, TWO_PI)
        c = w * np.cos(theta)
        s = w * np.sin(theta)
        for j, v in enumerate((c, s, -nk * s, nk * c)):
            acc[j] = _neumaier(acc[j], comp[j], v)
    return tuple(a + e for a, e in zip(acc, comp))
