"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 numeric failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .config import FORMATS, ConfigError, parse_config
from .errors import KerrParityError
from .qfi import qfi_phase_averaged
from .recipes import figure_recipe
from .signal import DetectorModel, InterferometerSpec, LossModel, sample_trace
from .sweep import render, run_sweep

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _run_config(config, out_path):
    table = run_sweep(config)
    _emit(render(table, config.output.format, config), out_path)
    return EXIT_NUMERIC if table.all_na(len(config.axes)) else EXIT_OK


def cmd_sweep(args):
    config = parse_config(Path(args.config).read_text(encoding="utf-8"))
    return _run_config(config, args.out or config.output.path)


def cmd_figure(args):
    recipe = figure_recipe(args.figure_id, args.format)
    out_dir = Path(args.out)
    status = EXIT_OK
    for stem, config in recipe.configs:
        path = out_dir / f"{stem}.{args.format}"
        status = max(status, _run_config(config, str(path)))
        print(f"wrote {path}", file=sys.stderr)
    return status


def cmd_qcrb(args):
    report = qfi_phase_averaged(args.n)
    sys.stdout.write(json.dumps(report.to_dict(), indent=2) + "\n")
    return EXIT_OK


def cmd_signal(args):
    spec = InterferometerSpec(args.n, args.k)
    loss = None
    if args.loss_a or args.loss_b:
        loss = LossModel.from_losses(args.loss_a, args.loss_b)
    detector = DetectorModel(args.dark_rate) if args.dark_rate else None
    if args.points < 2 or not args.phase_min < args.phase_max:
        raise ValueError("need --points >= 2 and --phase-min < --phase-max")
    grid = np.linspace(args.phase_min, args.phase_max, args.points)
    trace = sample_trace(spec, grid, loss, detector)
    if args.format == "json":
        text = json.dumps(trace.to_dict(), indent=2) + "\n"
    else:
        lines = ["phase,value"] + [f"{p:.17g},{v:.17g}" for p, v in zip(trace.phases, trace.values)]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kerrparity",
        description="Kerr nonlinear phase estimation with parity detection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a sweep described by a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", help="output file (overrides output.path; default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="regenerate the data behind a figure")
    p.add_argument("figure_id")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("qcrb", help="phase-averaged QFI and quantum Cramer-Rao bound")
    p.add_argument("--n", type=float, required=True, help="mean photon number")
    p.set_defaults(func=cmd_qcrb)

    p = sub.add_parser("signal", help="sample a parity signal over a phase range")
    p.add_argument("--n", type=float, required=True, help="mean photon number")
    p.add_argument("--k", type=int, choices=(1, 2), default=2, help="nonlinearity order")
    p.add_argument("--loss-a", type=float, default=0.0, help="photon loss L_A in arm A")
    p.add_argument("--loss-b", type=float, default=0.0, help="photon loss L_B in arm B")
    p.add_argument("--dark-rate", type=float, default=0.0, help="dark counts per gate r (d = 10 r)")
    p.add_argument("--phase-min", type=float, default=-1.0)
    p.add_argument("--phase-max", type=float, default=1.0)
    p.add_argument("--points", type=int, default=2001)
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_signal)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except KerrParityError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
