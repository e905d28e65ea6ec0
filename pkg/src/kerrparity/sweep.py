"""Evaluate a SweepConfig over the Cartesian product of its axes."""
from __future__ import annotations

import csv
import io
import itertools
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .config import SweepConfig
from .errors import KerrParityError
from .metrology import broadening_coefficient, model_fwhm, optimal_sensitivity, resolution_coefficient
from .qfi import qcrb, qfi_phase_averaged
from .signal import DetectorModel, InterferometerSpec, LossModel, ParityModel

NA = "NA"
WORKERS_ENV = "KERRPARITY_WORKERS"

OUTPUT_COLUMNS = {
    "signal": ("value",),
    "fwhm": ("fwhm",),
    "coefficient_c": ("C",),
    "sensitivity": ("phi_opt", "delta_phi"),
    "qcrb": ("F_q", "qcrb"),
    "broadening": ("C_B",),
    "loss_map": ("fwhm", "phi_opt", "delta_phi"),
    "dark_sweep": ("phi_opt", "delta_phi"),
    "joint_map": ("phi_opt", "delta_phi"),
}


@dataclass
class Table:
    columns: tuple[str, ...]
    rows: list[tuple]

    def all_na(self, n_axes: int) -> bool:
        return bool(self.rows) and all(all(v == NA for v in row[n_axes:]) for row in self.rows)


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "").strip()
    if raw:
        return max(1, int(raw))
    return os.cpu_count() or 1


def _cell_models(config: SweepConfig, point: dict):
    base_loss, base_det = config.loss, config.detector
    n = point.get("N", config.spec.mean_photons)
    spec = InterferometerSpec(n, config.spec.order)

    loss_a = base_loss.loss_a if base_loss else 0.0
    loss_b = base_loss.loss_b if base_loss else 0.0
    if "loss" in point:
        loss_a = loss_b = point["loss"]
    loss_a = point.get("loss_a", loss_a)
    loss_b = point.get("loss_b", loss_b)
    loss = LossModel.from_losses(loss_a, loss_b) if (loss_a or loss_b) else None

    jitter = base_det.jitter_inflation if base_det else 10.0
    d = point.get("d", base_det.effective_rate if base_det else 0.0)
    detector = DetectorModel.from_effective_rate(d, jitter) if d else None
    return spec, loss, detector


def evaluate_cell(config: SweepConfig, point: dict) -> tuple:
    q = config.quantity
    spec, loss, detector = _cell_models(config, point)
    if q == "signal":
        return (ParityModel(spec, loss, detector)(point["phase"]),)
    if q == "fwhm":
        return (model_fwhm(spec, loss, detector).fwhm,)
    if q == "coefficient_c":
        return (resolution_coefficient(spec.mean_photons),)
    if q == "qcrb":
        report = qfi_phase_averaged(spec.mean_photons)
        return (report.qfi, qcrb(spec.mean_photons))
    if q == "broadening":
        return (broadening_coefficient(spec.mean_photons, point["loss"]),)
    report = optimal_sensitivity(spec, loss, detector)
    if q == "loss_map":
        return (model_fwhm(spec, loss, detector).fwhm, report.optimal_phase, report.delta_phi)
    return (report.optimal_phase, report.delta_phi)


def _safe_cell(config, point, width):
    try:
        return evaluate_cell(config, point)
    except (KerrParityError, ArithmeticError, ValueError):
        return (NA,) * width


def run_sweep(config: SweepConfig, workers: int | None = None) -> Table:
    """Rows in row-major axis order (last axis varies fastest)."""
    names = [a.name for a in config.axes]
    outputs = OUTPUT_COLUMNS[config.quantity]
    grid = list(itertools.product(*(a.values().tolist() for a in config.axes)))
    points = [dict(zip(names, combo)) for combo in grid]
    workers = worker_count() if workers is None else workers

    if workers > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda p: _safe_cell(config, p, len(outputs)), points))
    else:
        results = [_safe_cell(config, p, len(outputs)) for p in points]
    rows = [tuple(combo) + tuple(res) for combo, res in zip(grid, results)]
    return Table(tuple(names) + outputs, rows)


def _fmt(value):
    if value == NA:
        return NA
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def table_to_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def table_to_json(table: Table, config: SweepConfig | None = None) -> str:
    doc = {
        "config": None if config is None else config.to_dict(),
        "columns": list(table.columns),
        "rows": [list(r) for r in table.rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def render(table: Table, fmt: str, config: SweepConfig | None = None) -> str:
    return table_to_csv(table) if fmt == "csv" else table_to_json(table, config)
