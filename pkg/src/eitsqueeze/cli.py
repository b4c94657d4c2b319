"""Command-line front end.

CSV goes to stdout, diagnostics to stderr. Exit codes: 0 success,
2 usage or configuration error, 3 computation-validity error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import io
import math
import sys
from pathlib import Path

import numpy as np

from . import eit, oracle, params, sweeps
from .epr import EprLevel, threshold_scan
from .errors import ComputationError, ConfigError, NeverSatisfied
from .homodyne import Formula
from .params import PhaseMode

EXIT_OK, EXIT_CONFIG, EXIT_COMPUTE, EXIT_IO = 0, 2, 3, 4

FIG3_GRID = "-4e6:4e6:801"
FIG4_GRID = "0:1:101"
FIG4_OMEGA = 5e4

# options whose values may start with '-'
_VALUE_FLAGS = ("--omega", "--t", "--phi")


def parse_grid(spec: str) -> np.ndarray:
    """``start:stop:count``, inclusive of both ends."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be start:stop:count, got {spec!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed grid {spec!r}") from None
    if count < 1 or stop < start or not (math.isfinite(start) and math.isfinite(stop)):
        raise argparse.ArgumentTypeError(f"grid needs count >= 1 and stop >= start: {spec!r}")
    if count == 1:
        return np.array([start])
    return np.linspace(start, stop, count)


def fmt(x: float) -> str:
    return format(float(x), ".16e")


def write_table(out, meta: list[tuple[str, str]], header: list[str], rows) -> None:
    for key, value in meta:
        out.write(f"# {key} = {value}\n")
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(v if isinstance(v, str) else fmt(v) for v in row) + "\n")


def config_meta(config: params.RunConfig) -> list[tuple[str, str]]:
    meta = [tuple(line.split(" = ", 1)) for line in params.dump_config(config).splitlines()]
    meta.append(("config_sha256", params.config_hash(config)))
    return meta


def spectrum_table(out, config, formula, phase_mode, grid):
    rows = sweeps.sweep_spectrum(config, formula, phase_mode, grid)
    meta = config_meta(config) + [("formula", formula.value), ("phase", phase_mode.value)]
    write_table(
        out,
        meta,
        ["omega", "t_mag", "variance", "classification"],
        [(r.omega, r.t_mag, r.variance, r.classification) for r in rows],
    )


def transmission_table(out, config, omega, formula, phase_mode, t_grid):
    rows = sweeps.sweep_transmission(config, omega, formula, t_grid, phase_mode)
    meta = config_meta(config) + [
        ("formula", formula.value),
        ("phase", phase_mode.value),
        ("omega", fmt(omega)),
    ]
    write_table(
        out,
        meta,
        ["t_mag", "variance", "classification"],
        [(r.t_mag, r.variance, r.classification) for r in rows],
    )


def reproduce_figures(
    config: params.RunConfig,
    outdir,
    phase_mode: PhaseMode = PhaseMode.OPTIMIZED,
    omega_grid=None,
    t_grid=None,
) -> list[Path]:
    """Write fig3a/fig3b (spectra) and fig4a/fig4b (transmission scans) as CSV."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    omega_grid = parse_grid(FIG3_GRID) if omega_grid is None else omega_grid
    t_grid = parse_grid(FIG4_GRID) if t_grid is None else t_grid
    jobs = [
        ("fig3a.csv", lambda f: spectrum_table(f, config, Formula.MISMATCHED, phase_mode, omega_grid)),
        ("fig3b.csv", lambda f: spectrum_table(f, config, Formula.MATCHED, phase_mode, omega_grid)),
        ("fig4a.csv", lambda f: transmission_table(f, config, FIG4_OMEGA, Formula.MISMATCHED, phase_mode, t_grid)),
        ("fig4b.csv", lambda f: transmission_table(f, config, FIG4_OMEGA, Formula.MATCHED, phase_mode, t_grid)),
    ]
    paths = []
    for name, job in jobs:
        buf = io.StringIO()
        job(buf)
        path = outdir / name
        path.write_text(buf.getvalue(), encoding="utf-8", newline="\n")
        paths.append(path)
    return paths


def _common_options(argument_default=None) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False, argument_default=argument_default)
    p.add_argument("--config", help="flat key = value parameter file")
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override one parameter (repeatable)")
    p.add_argument("--phase", choices=[m.value for m in PhaseMode])
    p.add_argument("--formula", choices=[f.value for f in Formula])
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_options(argparse.SUPPRESS)
    parser = argparse.ArgumentParser(
        prog="eitsqueeze",
        description="Homodyne noise of two-mode squeezed light with one mode through an EIT cell.",
        parents=[_common_options()],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectrum", parents=[common], help="variance against detuning (CSV)")
    s.add_argument("--omega", type=parse_grid, default=parse_grid("-2e6:2e6:401"), help="start:stop:count")

    s = sub.add_parser("transmission-scan", parents=[common], help="variance against |T| (CSV)")
    s.add_argument("--omega", type=float, default=FIG4_OMEGA)
    s.add_argument("--t", type=parse_grid, default=parse_grid(FIG4_GRID), help="start:stop:count in [0, 1]")

    s = sub.add_parser("thresholds", parents=[common], help="|T| at which weak/strong EPR criteria set in")
    s.add_argument("--omega", type=float, default=FIG4_OMEGA)

    s = sub.add_parser("window", parents=[common], help="transparency window edges and width")
    s.add_argument("--level", type=float, default=0.5)

    sub.add_parser("fiber-match", parents=[common], help="delay-matched fiber length")

    s = sub.add_parser("oracle-check", parents=[common], help="oracle vs closed-form variances")
    s.add_argument("--omega", type=parse_grid, help="start:stop:count (default: +/-2 window widths, 101 points)")
    s.add_argument("--phi", type=parse_grid, help="start:stop:count (default: 8 phases in [0, pi))")
    s.add_argument("--csv", help="write per-point deviations to this file")

    s = sub.add_parser("figures", parents=[common], help="write fig3a/fig3b/fig4a/fig4b CSV files")
    s.add_argument("--outdir", default=".")

    sub.add_parser("dump-params", parents=[common], help="print the effective parameter file")
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    out = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
            continue
        out.append(arg)
        i += 1
    return out


def load_run_config(args) -> params.RunConfig:
    text = ""
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config!r}: {exc}") from exc
    overrides = dict(params.parse_assignment(item) for item in (args.set or []))
    return params.load_config(text, overrides)


def _dispatch(args, config, out, err) -> int:
    phase = PhaseMode(args.phase) if args.phase else config.phase_mode
    formula = Formula(args.formula) if args.formula else Formula.MISMATCHED
    cmd = args.command

    if cmd == "spectrum":
        spectrum_table(out, config, formula, phase, args.omega)
    elif cmd == "transmission-scan":
        transmission_table(out, config, args.omega, formula, phase, args.t)
    elif cmd == "thresholds":
        formulas = [formula] if args.formula else [Formula.MISMATCHED, Formula.MATCHED]
        out.write(f"# omega = {fmt(args.omega)}; phase = optimized\n")
        for f in formulas:
            for criterion in (EprLevel.WEAK, EprLevel.STRONG):
                try:
                    t = f"{threshold_scan(config, args.omega, f, criterion):.4f}"
                except NeverSatisfied:
                    t = "never"
                out.write(f"{f.value:<10} {criterion.value:<6} t_threshold = {t}\n")
    elif cmd == "window":
        lo, hi = eit.window_edges(config.eit, args.level)
        out.write(f"level = {args.level}\nlower_edge = {fmt(lo)}\nupper_edge = {fmt(hi)}\nwidth = {fmt(hi - lo)}\n")
    elif cmd == "fiber-match":
        length = eit.matched_fiber_length(config.eit, config.fiber)
        out.write(f"matched_fiber_length_m = {length:.6e}\n")
        out.write(f"configured_l_f_m = {config.fiber.l_f:.6e}\n")
        out.write(f"group_delay_s = {eit.group_delay(config.eit):.6e}\n")
    elif cmd == "oracle-check":
        omega_grid = args.omega
        if omega_grid is None:
            width = eit.window_width(config.eit)
            omega_grid = np.linspace(-2 * width, 2 * width, 101)
        phi_grid = args.phi if args.phi is not None else np.arange(8) * math.pi / 8
        report = oracle.cross_check(config, omega_grid, phi_grid)
        out.write(report.summary() + "\n")
        if args.csv:
            with open(args.csv, "w", encoding="utf-8", newline="\n") as f:
                write_table(
                    f,
                    config_meta(config),
                    ["omega", "phi_lo", "formula", "oracle", "closed_form", "deviation"],
                    report.rows,
                )
        if not report.passed:
            err.write("oracle cross-check FAILED\n")
            return EXIT_COMPUTE
    elif cmd == "figures":
        mode = PhaseMode(args.phase) if args.phase else PhaseMode.OPTIMIZED
        for path in reproduce_figures(config, args.outdir, mode):
            err.write(f"wrote {path}\n")
    elif cmd == "dump-params":
        out.write(params.dump_config(config))
    return EXIT_OK


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        config = load_run_config(args)
    except ConfigError as exc:
        err.write(f"configuration error: {exc}\n")
        return EXIT_CONFIG
    try:
        return _dispatch(args, config, out, err)
    except ComputationError as exc:
        err.write(f"computation error: {exc}\n")
        return EXIT_COMPUTE
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except OSError as exc:
        err.write(f"I/O error: {exc}\n")
        return EXIT_IO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
