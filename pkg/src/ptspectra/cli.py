"""Command-line front end: spectra, reflection scans, wedge geometry.

Every report is a table written as CSV or JSON. JSON has the layout
``{"config": ..., "rows": [...], "errors": [...], "version": "1"}``; CSV has
one header line and one line per row. Floats are written with 17
significant digits so both formats round-trip exactly.

Exit status: 0 on success, 1 for an invalid configuration, 2 when some
requested level could not be computed (the reason is in ``errors``).
"""

import argparse
import cmath
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, fields
from typing import Optional

from .numerics import DEFAULT_TOLERANCES, Tolerances
from .problem import (
    ProblemSpec,
    classify_roles,
    turning_points,
    wedge_geometry,
)
from .reflection import (
    compute_spectrum_reflectionless,
    default_length,
    reflection_amplitude,
)
from .shooting import MissedLevelError, ShootingConfig, check_cutoff, compute_spectrum_shooting
from .wkb import energy_brackets, wkb_energy_closed_form

REPORT_VERSION = "1"
SUBCOMMANDS = ("spectrum", "reflection-scan", "wedges", "compare")
METHODS = ("shooting", "reflectionless", "wkb", "all")
WEDGE_REFERENCE_ENERGY = 1.0


class ConfigError(ValueError):
    """Invalid run configuration; the message names the offending field."""

    def __init__(self, field_name, message):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass
class RunConfig:
    subcommand: str
    K: int = 1
    epsilon: float = 2.0
    n_max: int = 5
    method: str = "all"
    cutoff: float = 8.0
    L: Optional[float] = None
    e_min: Optional[float] = None
    e_max: Optional[float] = None
    e_steps: int = 50
    output_format: str = "csv"
    output_path: Optional[str] = None
    ode_rel: float = DEFAULT_TOLERANCES.ode_rel
    ode_abs: float = DEFAULT_TOLERANCES.ode_abs
    root_tol: float = DEFAULT_TOLERANCES.root_tol
    quad_tol: float = DEFAULT_TOLERANCES.quad_tol

    @property
    def tolerances(self):
        return Tolerances(self.ode_rel, self.ode_abs, self.root_tol, self.quad_tol)

    @property
    def spec(self):
        return ProblemSpec(self.K, self.epsilon)


@dataclass
class ReportRow:
    n: int
    E_shooting: Optional[float] = None
    E_reflectionless: Optional[float] = None
    E_wkb: Optional[float] = None
    rel_dev_shoot_vs_refl: Optional[float] = None
    rel_dev_vs_wkb: Optional[float] = None
    residual_shooting: Optional[float] = None
    residual_reflectionless: Optional[float] = None

    def fill_deviations(self):
        if self.E_shooting is not None and self.E_reflectionless is not None:
            self.rel_dev_shoot_vs_refl = abs(self.E_shooting - self.E_reflectionless) / abs(self.E_shooting)
        solved = self.E_shooting if self.E_shooting is not None else self.E_reflectionless
        if solved is not None and self.E_wkb is not None:
            self.rel_dev_vs_wkb = abs(solved - self.E_wkb) / self.E_wkb


REPORT_FIELDS = [f.name for f in fields(ReportRow)]


def validate(config: RunConfig) -> None:
    """Raise ConfigError naming the first invalid field."""
    if config.subcommand not in SUBCOMMANDS:
        raise ConfigError("subcommand", f"must be one of {SUBCOMMANDS}")
    try:
        spec = config.spec
    except ValueError as exc:
        name = "K" if "K" in str(exc).split()[0] else "epsilon"
        raise ConfigError(name, str(exc)) from None
    if config.method not in METHODS:
        raise ConfigError("method", f"must be one of {METHODS}")
    if config.output_format not in ("csv", "json"):
        raise ConfigError("format", "must be 'csv' or 'json'")
    if config.n_max < 0:
        raise ConfigError("n_max", "must be >= 0")
    try:
        config.tolerances
    except ValueError as exc:
        raise ConfigError("tolerances", str(exc)) from None
    if config.subcommand in ("spectrum", "compare") and config.method in ("shooting", "all"):
        try:
            check_cutoff(spec, config.cutoff)
        except ValueError as exc:
            raise ConfigError("cutoff", str(exc)) from None
    # "all" means every method that applies; explicit non-shooting methods need eps = 2
    needs_real = (config.subcommand in ("reflection-scan", "compare")
                  or (config.subcommand == "spectrum" and config.method in ("reflectionless", "wkb")))
    if needs_real and not spec.is_real_family:
        raise ConfigError("epsilon", f"{config.subcommand}/{config.method} requires epsilon = 2")
    if config.subcommand == "reflection-scan":
        if config.e_min is None or config.e_max is None:
            raise ConfigError("e_min", "reflection-scan needs --e-min and --e-max")
        if not 0.0 < config.e_min < config.e_max:
            raise ConfigError("e_min", "need 0 < e_min < e_max")
        if config.e_steps < 2:
            raise ConfigError("e_steps", "must be >= 2")
        _check_L(spec, config.L, config.e_max)
    if config.subcommand in ("spectrum", "compare") and config.method in ("reflectionless", "all") \
            and spec.is_real_family:
        top = energy_brackets(spec, config.n_max, 0.45)[-1][1]
        _check_L(spec, config.L, top)


def _check_L(spec, L, e_max):
    if L is None:
        return
    need = 4.0 * e_max ** (1.0 / (2 * spec.K + 2))
    if not L >= need:
        raise ConfigError("L", f"L = {L!r} is below 4*E_max^(1/(2K+2)) = {need:.6g} for E_max = {e_max:.6g}")


def _resolved_config(config, **extra):
    out = asdict(config)
    out.update(extra)
    return out


def run_spectrum(config: RunConfig):
    """Spectrum table for the requested method(s); returns (status, report)."""
    spec = config.spec
    tol = config.tolerances
    method = "all" if config.subcommand == "compare" else config.method
    want_shoot = method in ("shooting", "all")
    want_refl = method in ("reflectionless", "all") and spec.is_real_family
    want_wkb = method in ("wkb", "all") and spec.is_real_family
    rows = [ReportRow(n=n) for n in range(config.n_max + 1)]
    errors = []
    L = config.L
    if want_refl and L is None:
        L = default_length(spec, energy_brackets(spec, config.n_max, 0.45)[-1][1])

    if want_wkb:
        for row in rows:
            row.E_wkb = wkb_energy_closed_form(spec, row.n).energy
    if want_shoot:
        shooting = ShootingConfig(config.cutoff, tolerances=tol)
        try:
            for lv in compute_spectrum_shooting(spec, config.n_max, shooting):
                rows[lv.n].E_shooting = lv.energy
                rows[lv.n].residual_shooting = lv.residual
                if not lv.converged:
                    errors.append({"n": lv.n, "method": "shooting",
                                   "message": f"cutoff re-check moved level by {lv.meta['cutoff_shift']:.3e}"})
        except MissedLevelError as exc:
            errors.append({"n": None, "method": "shooting", "message": str(exc)})
    if want_refl:
        for lv in compute_spectrum_reflectionless(spec, config.n_max, L, tol):
            if math.isfinite(lv.energy):
                rows[lv.n].E_reflectionless = lv.energy
                rows[lv.n].residual_reflectionless = lv.residual
            if not lv.converged:
                errors.append({"n": lv.n, "method": "reflectionless", "message": lv.meta["error"]})
    for row in rows:
        row.fill_deviations()
    report = {
        "config": _resolved_config(config, method=method, L=L),
        "rows": [asdict(row) for row in rows],
        "errors": errors,
        "version": REPORT_VERSION,
    }
    return (2 if errors else 0), report


def run_reflection_scan(config: RunConfig):
    """|r|, arg r, |t| and flux error over an evenly spaced energy grid."""
    spec = config.spec
    tol = config.tolerances
    L = config.L if config.L is not None else default_length(spec, config.e_max)
    rows = []
    errors = []
    step = (config.e_max - config.e_min) / (config.e_steps - 1)
    for i in range(config.e_steps):
        E = config.e_max if i == config.e_steps - 1 else config.e_min + i * step
        try:
            res = reflection_amplitude(spec, E, L, tol)
        except (RuntimeError, ValueError) as exc:
            errors.append({"E": E, "message": str(exc)})
            continue
        rows.append({
            "E": E,
            "abs_r": abs(res.r),
            "arg_r": cmath.phase(res.r),
            "abs_t": abs(res.t),
            "flux_error": res.flux_error,
        })
    report = {
        "config": _resolved_config(config, L=L),
        "rows": rows,
        "errors": errors,
        "version": REPORT_VERSION,
    }
    return (2 if errors else 0), report


def _pi_string(frac):
    if frac is None or frac.denominator > 1000:
        return None
    if frac == 0:
        return "0"
    if frac.denominator == 1:
        return f"{frac.numerator} pi"
    return f"{frac.numerator}/{frac.denominator} pi"


def run_wedges(config: RunConfig):
    """Wedge angles, turning points at E = 1 (eps = 2) and the role table."""
    spec = config.spec
    geom = wedge_geometry(spec)
    blank = {"kind": None, "name": None, "value": None, "pi_multiple": None,
             "branch": None, "wedge": None, "behavior": None, "travel": None}
    rows = []
    for name in ("theta_right", "theta_left", "opening_angle", "right_upper_edge",
                 "right_lower_edge", "left_upper_edge", "left_lower_edge"):
        frac = geom.pi_multiples.get(name) if geom.pi_multiples else None
        rows.append(dict(blank, kind="angle", name=name, value=getattr(geom, name),
                         pi_multiple=_pi_string(frac)))
    if spec.is_real_family:
        tp = turning_points(spec, WEDGE_REFERENCE_ENERGY)
        for name, z in (("x_right", tp.x_right), ("x_left", tp.x_left)):
            rows.append(dict(blank, kind="turning_point", name=f"{name}.real", value=z.real))
            rows.append(dict(blank, kind="turning_point", name=f"{name}.imag", value=z.imag))
    for role in classify_roles(spec):
        rows.append(dict(blank, kind="role", branch=role.branch, wedge=role.wedge,
                         behavior=role.behavior, travel=role.travel))
    report = {
        "config": _resolved_config(config, reference_energy=WEDGE_REFERENCE_ENERGY),
        "rows": rows,
        "errors": [],
        "version": REPORT_VERSION,
    }
    return 0, report


def format_float(x: float) -> str:
    """17 significant digits, always recognisable as a float."""
    text = format(x, ".17g")
    if math.isfinite(x) and not any(c in text for c in ".e"):
        text += ".0"
    return text


def _json_value(obj):
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj) if math.isfinite(obj) else json.dumps(repr(obj))
    if isinstance(obj, complex):
        return _json_value([obj.real, obj.imag])
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_value(v) for v in obj) + "]"
    return json.dumps(str(obj))


def to_json(report) -> str:
    return _json_value(report) + "\n"


def to_csv(report) -> str:
    rows = report["rows"]
    buf = io.StringIO()
    if not rows:
        return ""
    header = list(rows[0].keys())
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if row[k] is None else
                         (format_float(row[k]) if isinstance(row[k], float) else row[k])
                         for k in header])
    return buf.getvalue()


def render(report, output_format) -> str:
    return to_json(report) if output_format == "json" else to_csv(report)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ptspectra",
        description="Spectra of H = p^2 + x^(2K)(ix)^eps by complex shooting, "
                    "real-axis reflectionlessness and WKB.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--K", type=int, default=1)
        p.add_argument("--epsilon", type=float, default=2.0)
        p.add_argument("--n-max", dest="n_max", type=int, default=5)
        p.add_argument("--method", choices=METHODS, default="all")
        p.add_argument("--cutoff", type=float, default=8.0)
        p.add_argument("--L", type=float, default=None)
        p.add_argument("--e-min", dest="e_min", type=float, default=None)
        p.add_argument("--e-max", dest="e_max", type=float, default=None)
        p.add_argument("--e-steps", dest="e_steps", type=int, default=50)
        p.add_argument("--format", dest="output_format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", dest="output_path", default=None)
        p.add_argument("--ode-rel", dest="ode_rel", type=float, default=DEFAULT_TOLERANCES.ode_rel)
        p.add_argument("--ode-abs", dest="ode_abs", type=float, default=DEFAULT_TOLERANCES.ode_abs)
        p.add_argument("--root-tol", dest="root_tol", type=float, default=DEFAULT_TOLERANCES.root_tol)
        p.add_argument("--quad-tol", dest="quad_tol", type=float, default=DEFAULT_TOLERANCES.quad_tol)
    return parser


RUNNERS = {
    "spectrum": run_spectrum,
    "compare": run_spectrum,
    "reflection-scan": run_reflection_scan,
    "wedges": run_wedges,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(**vars(args))
    try:
        validate(config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    status, report = RUNNERS[config.subcommand](config)
    text = render(report, config.output_format)
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for err in report["errors"]:
        print(f"warning: {err}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
