"""Sweep configuration documents (JSON), parsed strictly."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .signal import DetectorModel, InterferometerSpec, LossModel

QUANTITIES = (
    "signal",
    "fwhm",
    "coefficient_c",
    "sensitivity",
    "qcrb",
    "broadening",
    "loss_map",
    "dark_sweep",
    "joint_map",
)

# axis name -> what it overrides in a sweep cell
AXIS_NAMES = ("phase", "N", "loss_a", "loss_b", "loss", "d")

REQUIRED_AXES = {
    "signal": {"phase"},
    "coefficient_c": {"N"},
    "qcrb": {"N"},
    "broadening": {"loss"},
    "loss_map": {"loss_a", "loss_b"},
    "dark_sweep": {"d"},
    "joint_map": {"loss", "d"},
}

FORMATS = ("csv", "json")


class ConfigError(ValueError):
    """Invalid configuration document; the message names the offending field."""


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    points: int
    scale: str = "linear"

    def __post_init__(self):
        where = f"axis {self.name!r}"
        if self.name not in AXIS_NAMES:
            raise ConfigError(f"{where}: unknown axis name (expected one of {', '.join(AXIS_NAMES)})")
        if isinstance(self.points, bool) or not isinstance(self.points, int) or self.points < 2:
            raise ConfigError(f"{where}: points must be an integer >= 2, got {self.points!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)) or not self.start < self.stop:
            raise ConfigError(f"{where}: need finite start < stop, got {self.start!r}, {self.stop!r}")
        if self.scale not in ("linear", "log"):
            raise ConfigError(f"{where}: scale must be 'linear' or 'log', got {self.scale!r}")
        if self.scale == "log" and not self.start > 0:
            raise ConfigError(f"{where}: log axis requires start > 0")

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)

    def to_dict(self):
        return {
            "name": self.name,
            "start": self.start,
            "stop": self.stop,
            "points": self.points,
            "scale": self.scale,
        }


@dataclass(frozen=True)
class Output:
    path: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ConfigError(f"output.format must be one of {FORMATS}, got {self.format!r}")

    def to_dict(self):
        return {"path": self.path, "format": self.format}


@dataclass(frozen=True)
class SweepConfig:
    quantity: str
    spec: InterferometerSpec
    axes: tuple[Axis, ...]
    loss: LossModel | None = None
    detector: DetectorModel | None = None
    output: Output = field(default_factory=Output)

    def __post_init__(self):
        if self.quantity not in QUANTITIES:
            raise ConfigError(f"quantity must be one of {', '.join(QUANTITIES)}, got {self.quantity!r}")
        names = [a.name for a in self.axes]
        if not names:
            raise ConfigError("axes: at least one axis is required")
        if len(set(names)) != len(names):
            raise ConfigError(f"axes: duplicate axis names in {names}")
        missing = REQUIRED_AXES.get(self.quantity, set()) - set(names)
        if missing:
            raise ConfigError(f"axes: quantity {self.quantity!r} requires axis {sorted(missing)}")
        if "phase" in names and self.quantity != "signal":
            raise ConfigError("axes: a 'phase' axis only applies to quantity 'signal'")
        if "loss" in names and ({"loss_a", "loss_b"} & set(names)):
            raise ConfigError("axes: 'loss' sets both arms and cannot be combined with loss_a/loss_b")

    def to_dict(self):
        noise = None
        if self.loss is not None or self.detector is not None:
            noise = {}
            if self.loss is not None:
                noise["loss"] = self.loss.to_dict()
            if self.detector is not None:
                noise["detector"] = self.detector.to_dict()
        return {
            "quantity": self.quantity,
            "spec": self.spec.to_dict(),
            "noise": noise,
            "axes": [a.to_dict() for a in self.axes],
            "output": self.output.to_dict(),
        }


def serialize_config(config: SweepConfig) -> str:
    return json.dumps(config.to_dict(), indent=2)


def _expect_keys(obj, where, required=(), optional=()):
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object, got {type(obj).__name__}")
    unknown = set(obj) - set(required) - set(optional)
    if unknown:
        raise ConfigError(f"{where}: unknown key(s) {sorted(unknown)}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise ConfigError(f"{where}: missing required key(s) {missing}")


def _number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _build(where, factory, **kwargs):
    try:
        return factory(**kwargs)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def config_from_dict(doc) -> SweepConfig:
    _expect_keys(doc, "config", required=("quantity", "spec", "axes"), optional=("noise", "output"))

    spec_doc = doc["spec"]
    _expect_keys(spec_doc, "spec", required=("mean_photons",), optional=("order",))
    order = spec_doc.get("order", 2)
    if isinstance(order, bool) or not isinstance(order, int):
        raise ConfigError(f"spec.order: expected an integer, got {order!r}")
    spec = _build("spec", InterferometerSpec, mean_photons=_number(spec_doc["mean_photons"], "spec.mean_photons"), order=order)

    loss = detector = None
    noise = doc.get("noise")
    if noise is not None:
        _expect_keys(noise, "noise", optional=("loss", "detector"))
        if noise.get("loss") is not None:
            ld = noise["loss"]
            _expect_keys(ld, "noise.loss", optional=("transmissivity_a", "transmissivity_b"))
            loss = _build(
                "noise.loss",
                LossModel,
                **{k: _number(v, f"noise.loss.{k}") for k, v in ld.items()},
            )
        if noise.get("detector") is not None:
            dd = noise["detector"]
            _expect_keys(dd, "noise.detector", optional=("dark_count_rate", "jitter_inflation"))
            detector = _build(
                "noise.detector",
                DetectorModel,
                **{k: _number(v, f"noise.detector.{k}") for k, v in dd.items()},
            )

    axes_doc = doc["axes"]
    if not isinstance(axes_doc, list):
        raise ConfigError("axes: expected a list")
    axes = []
    for i, ad in enumerate(axes_doc):
        where = f"axes[{i}]"
        _expect_keys(ad, where, required=("name", "start", "stop", "points"), optional=("scale",))
        axes.append(
            Axis(
                name=ad["name"],
                start=_number(ad["start"], f"{where}.start"),
                stop=_number(ad["stop"], f"{where}.stop"),
                points=ad["points"],
                scale=ad.get("scale", "linear"),
            )
        )

    out_doc = doc.get("output") or {}
    _expect_keys(out_doc, "output", optional=("path", "format"))
    output = Output(path=out_doc.get("path"), format=out_doc.get("format", "csv"))

    return SweepConfig(doc["quantity"], spec, tuple(axes), loss, detector, output)


def parse_config(text: str) -> SweepConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return config_from_dict(doc)
