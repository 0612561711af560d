"""Command-line front end: ``ppdefect {reproduce,coeffs,propagate,sweep}``.

Exit status is 0 on success, 2 on usage errors and 3 when a numerical
accuracy or resolution check fails.  Every float is written with nine
significant digits in scientific notation so that identical runs produce
byte-identical files.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, fields

import numpy as np

from . import analysis, localization, propagation, superposition
from .errors import AccuracyError, PPDefectError, ResolutionError
from .numerics import QuadratureSpec
from .wavefunction import Rectangle

FLOAT_FMT = ".8e"
EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3

# Gaussian scenario used when neither (u, csq) nor (sigma1, sigma2) is given.
DEFAULT_SIGMAS = (0.16, 22.67)
DEFAULT_RECT_U = 0.024


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    family: str = "gaussian"
    u: float = None
    csq: float = None
    sigma1: float = None
    sigma2: float = None
    output_path: str = None
    summary_path: str = None
    format: str = "json"
    grid_points: int = 2001
    tolerance: float = 1e-10
    x_max: float = 10.0
    t0: bool = False
    u_min: float = 0.005
    u_max: float = 0.05
    u_steps: int = 200
    csq_min: float = 0.3
    csq_max: float = 1.3
    csq_steps: int = 200
    workers: int = None

    def __post_init__(self):
        if self.family not in analysis.FAMILIES:
            raise UsageError(f"unknown family {self.family!r}")
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        have_uc = self.u is not None or self.csq is not None
        have_sigma = self.sigma1 is not None or self.sigma2 is not None
        if have_uc and have_sigma:
            raise UsageError("give either --u/--csq or --sigma1/--sigma2, not both")
        if have_sigma and (self.sigma1 is None or self.sigma2 is None):
            raise UsageError("--sigma1 and --sigma2 must be given together")
        if self.family == "rectangle" and (have_sigma or self.csq is not None):
            raise UsageError("the rectangle family takes only --u")
        if not self.tolerance > 0:
            raise UsageError("--tolerance must be positive")
        if self.grid_points < 2:
            raise UsageError("--grid-points must be at least 2")

    @property
    def spec(self) -> QuadratureSpec:
        return QuadratureSpec(abs_tolerance=self.tolerance, rel_tolerance=self.tolerance)


def _fmt(x) -> str:
    return format(float(x), FLOAT_FMT)


def _json_text(obj, indent=0) -> str:
    """JSON with every float in fixed scientific format; NaN becomes null."""
    pad = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json_text(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(pad + _json_text(v, indent + 1) for v in obj) + "\n" + "  " * indent + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return "null" if not math.isfinite(obj) else _fmt(obj)
    return json.dumps(str(obj))


def _emit(text: str, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _emit_record(record: dict, config: RunConfig):
    if config.format == "json":
        _emit(_json_text(record) + "\n", config.output_path)
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["quantity", "value"])
    for k, v in record.items():
        writer.writerow([k, _fmt(v) if isinstance(v, (float, np.floating)) else v])
    _emit(buf.getvalue(), config.output_path)


def _build_state(config: RunConfig):
    spec = config.spec
    if config.family == "rectangle":
        return superposition.rectangle_plus_state(config.u or DEFAULT_RECT_U, spec=spec)
    if config.u is not None or config.csq is not None:
        if config.u is None or config.csq is None:
            raise UsageError("--u and --csq must be given together for the Gaussian family")
        return superposition.gaussian_plus_state(config.csq, config.u, spec=spec)
    s1, s2 = (config.sigma1, config.sigma2) if config.sigma1 is not None else DEFAULT_SIGMAS
    return superposition.plus_state_from_sigmas(s1, s2, spec=spec)


def cmd_reproduce(config: RunConfig) -> int:
    state, scenario = _build_state(config)
    report = analysis.defect_exact(state, scenario, spec=config.spec)
    record = {"family": config.family}
    record.update(report.to_dict())
    _emit_record(record, config)
    return EXIT_OK


def cmd_coeffs(config: RunConfig) -> int:
    spec = config.spec
    if config.family == "rectangle":
        phiL = Rectangle(1.0)
        closed = localization.RECTANGLE_COEFFICIENTS
        record = {"family": "rectangle"}
    else:
        if config.sigma1 is not None:
            csq = localization.csq_from_sigma(config.sigma1)
        else:
            csq = 0.8 if config.csq is None else config.csq
        phiL = localization.gaussian_component(csq)
        closed = localization.gaussian_coefficients(csq)
        record = {"family": "gaussian", "sigma1": phiL.sigma}
        if config.u is not None:
            record["sigma2"] = localization.gaussian_sigmas(csq, config.u)[1]
        elif config.sigma2 is not None:
            record["sigma2"] = config.sigma2
    quad = localization.localization_coefficients(phiL, 1.0, spec)
    for name, a, b in (
        ("csq", closed.csq, quad.csq),
        ("eta", closed.mismatch, quad.mismatch),
        ("gamma", closed.cross_section, quad.cross_section),
    ):
        record[name] = float(a)
        record[f"{name}_quadrature"] = float(b)
        record[f"{name}_difference"] = float(a - b)
    _emit_record(record, config)
    return EXIT_OK


def cmd_propagate(config: RunConfig) -> int:
    state, scenario = _build_state(config)
    if config.format != "csv":
        raise UsageError("propagate writes CSV only")
    joint = superposition.joint_lower_bound_exact(state, scenario, config.spec)
    x = np.linspace(-config.x_max, config.x_max, config.grid_points) * scenario.L
    profile = propagation.density_profile(state, scenario, x, at_time=not config.t0)
    buf = io.StringIO()
    propagation.write_density_csv(buf, profile, joint / (2.0 * scenario.L), FLOAT_FMT)
    _emit(buf.getvalue(), config.output_path)
    return EXIT_OK


def cmd_sweep(config: RunConfig) -> int:
    grid = analysis.sweep(
        (config.u_min, config.u_max, config.u_steps),
        (config.csq_min, config.csq_max, config.csq_steps),
        family=config.family,
        workers=config.workers,
    )
    summary = analysis.sweep_summary(grid, FLOAT_FMT)
    if config.output_path is None:
        _emit(_json_text(summary) + "\n", None)
        return EXIT_OK
    analysis.write_sweep_csv(config.output_path, grid, FLOAT_FMT)
    summary_path = config.summary_path
    if summary_path is None:
        stem = config.output_path[:-4] if config.output_path.endswith(".csv") else config.output_path
        summary_path = stem + ".json"
    _emit(_json_text(summary) + "\n", summary_path)
    return EXIT_OK


COMMANDS = {"reproduce": cmd_reproduce, "coeffs": cmd_coeffs, "propagate": cmd_propagate, "sweep": cmd_sweep}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ppdefect", description="Particle propagation defect calculations.")
    common = argparse.ArgumentParser(add_help=False)
    # Defaults are None so that values from --config are only overridden by explicit flags.
    common.add_argument("--config", help="JSON file with option values; flags take precedence")
    common.add_argument("--family", choices=analysis.FAMILIES, default=None)
    common.add_argument("--u", type=float, default=None, help="uncertainty suppression factor U")
    common.add_argument("--csq", type=float, default=None, help="squared coherent spread |C|^2")
    common.add_argument("--sigma1", type=float, default=None, help="width of the position-localized Gaussian")
    common.add_argument("--sigma2", type=float, default=None, help="width of the momentum-localized Gaussian")
    common.add_argument("--output", "-o", dest="output_path", default=None, help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--tolerance", type=float, default=None, help="quadrature tolerance")
    common.add_argument("--grid-points", dest="grid_points", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("reproduce", parents=[common], help="probabilities and defect for one scenario")
    sub.add_parser("coeffs", parents=[common], help="localization coefficients, closed form and quadrature")
    prop = sub.add_parser("propagate", parents=[common], help="density profile at t = mL/B")
    prop.add_argument("--x-max", dest="x_max", type=float, default=None, help="half-width of the profile in units of L")
    prop.add_argument("--t0", action="store_const", const=True, default=None, help="emit the initial density")
    sw = sub.add_parser("sweep", parents=[common], help="defect bound over a (U, |C|^2) grid")
    for name in ("u_min", "u_max", "csq_min", "csq_max"):
        sw.add_argument("--" + name.replace("_", "-"), dest=name, type=float, default=None)
    for name in ("u_steps", "csq_steps", "workers"):
        sw.add_argument("--" + name.replace("_", "-"), dest=name, type=int, default=None)
    sw.add_argument("--summary", dest="summary_path", default=None, help="JSON summary path")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {}
    if args.config:
        try:
            with open(args.config) as fh:
                values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(values, dict):
            raise UsageError("config file must hold a JSON object")
    known = {f.name for f in fields(RunConfig)}
    unknown = set(values) - known
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key, val in vars(args).items():
        if key in known and val is not None:
            values[key] = val
    values["command"] = args.command
    if values["command"] == "propagate":
        values.setdefault("format", "csv")
    return RunConfig(**values)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        return COMMANDS[config.command](config)
    except (UsageError, ValueError, TypeError) as exc:
        print(f"ppdefect: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AccuracyError, ResolutionError) as exc:
        detail = ""
        if isinstance(exc, AccuracyError) and exc.estimate is not None:
            detail = f" (estimate {exc.estimate}, error bound {exc.error_bound})"
        print(f"ppdefect: numerical failure: {exc}{detail}", file=sys.stderr)
        return EXIT_NUMERIC
    except PPDefectError as exc:
        print(f"ppdefect: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
