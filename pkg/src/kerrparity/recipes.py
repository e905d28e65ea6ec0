"""Pre-registered sweeps that regenerate the data behind each figure.

Grid densities: 2001 points for signal curves, 191 for N axes (step 0.1),
101 per axis for FWHM heat maps, 41 per axis for sensitivity maps, 61
log-spaced points for dark-count axes.
"""
from __future__ import annotations

from dataclasses import dataclass

from .config import Axis, Output, SweepConfig
from .signal import InterferometerSpec

FIGURE_IDS = ("fig2", "fig3a", "fig3b", "fig4", "fig5", "fig6a", "fig6b", "fig7", "fig9", "fig10")

N_AXIS = Axis("N", 1.0, 20.0, 191)
LOSS_RANGE = (0.0, 0.4)
D_AXIS = Axis("d", 1e-7, 1e-1, 61, "log")


@dataclass(frozen=True)
class FigureRecipe:
    figure_id: str
    configs: tuple[tuple[str, SweepConfig], ...]  # (file stem, config)


def _cfg(quantity, n, axes, order=2, fmt="csv"):
    return SweepConfig(quantity, InterferometerSpec(n, order), tuple(axes), output=Output(format=fmt))


def _build(figure_id: str, fmt: str):
    if figure_id == "fig2":
        phase = Axis("phase", -1.0, 1.0, 2001)
        return [(f"fig2_N{n}", _cfg("signal", n, [phase], fmt=fmt)) for n in (2, 5, 10)]
    if figure_id == "fig3a":
        return [
            ("fig3a_linear", _cfg("fwhm", 1.0, [N_AXIS], order=1, fmt=fmt)),
            ("fig3a_nonlinear", _cfg("fwhm", 1.0, [N_AXIS], order=2, fmt=fmt)),
        ]
    if figure_id == "fig3b":
        return [("fig3b", _cfg("coefficient_c", 1.0, [N_AXIS], fmt=fmt))]
    if figure_id == "fig4":
        return [("fig4", _cfg("sensitivity", 1.0, [N_AXIS], fmt=fmt))]
    if figure_id == "fig5":
        return [
            ("fig5_parity", _cfg("sensitivity", 1.0, [N_AXIS], fmt=fmt)),
            ("fig5_qcrb", _cfg("qcrb", 1.0, [N_AXIS], fmt=fmt)),
        ]
    if figure_id == "fig6a":
        axes = [Axis("loss_a", *LOSS_RANGE, 101), Axis("loss_b", *LOSS_RANGE, 101)]
        return [("fig6a", _cfg("fwhm", 10.0, axes, fmt=fmt))]
    if figure_id == "fig6b":
        axes = [Axis("loss", 0.1, 0.4, 4), N_AXIS]
        return [("fig6b", _cfg("broadening", 1.0, axes, fmt=fmt))]
    if figure_id == "fig7":
        axes = [Axis("loss_a", *LOSS_RANGE, 41), Axis("loss_b", *LOSS_RANGE, 41)]
        return [("fig7", _cfg("loss_map", 10.0, axes, fmt=fmt))]
    if figure_id == "fig9":
        return [("fig9", _cfg("dark_sweep", 10.0, [Axis("N", 10.0, 20.0, 3), D_AXIS], fmt=fmt))]
    if figure_id == "fig10":
        axes = [Axis("loss", *LOSS_RANGE, 41), D_AXIS]
        return [("fig10", _cfg("joint_map", 10.0, axes, fmt=fmt))]
    raise KeyError(figure_id)


def figure_recipe(figure_id: str, fmt: str = "csv") -> FigureRecipe:
    if figure_id not in FIGURE_IDS:
        raise ValueError(f"unknown figure id {figure_id!r} (known: {', '.join(FIGURE_IDS)})")
    return FigureRecipe(figure_id, tuple(_build(figure_id, fmt)))
