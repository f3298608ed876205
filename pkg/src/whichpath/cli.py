"""Command-line front end.

Every subcommand reads one JSON run configuration, optionally patched with
``--set block.key=value``, and writes CSV (header row, 17 significant digits)
or JSON to a file or stdout.

Exit status is 0 on success, 1 for configuration or validation errors and 2
when a quadrature or ODE integration fails.
"""

import argparse
import csv
import io
import json
import math
import re
import sys
import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from . import decoherence, fieldmeas, gravity, pathinfo, pattern
from .experiment import ExperimentConfig, GeometryWarning, flight_time, fringe_spacing
from .units import constants

SUBCOMMANDS = ("bohr-rosenfeld", "distinguishability", "visibility",
               "duality-curve", "pattern", "gravity")

_SCHEMA = {
    "experiment": {"d", "L", "R", "v", "m", "Z", "slit_fraction", "log_term"},
    "detector": {"xi", "T_meas", "S", "omega"},
    "sweep": {"z_min", "z_max", "n_points", "log"},
    "mc": {"n_particles", "seed", "bins", "halfwidth"},
    "output": {"format", "path"},
}
_REQUIRED_EXPERIMENT = ("d", "L", "R", "v")


class ConfigError(ValueError):
    """Invalid run configuration; the message names the offending field."""


@dataclass(frozen=True)
class RunConfig:
    experiment: ExperimentConfig
    detector: dict
    sweep: dict | None
    mc: dict
    output: dict


def _line_of(text, key):
    if text is None:
        return None
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _where(text, source, key):
    line = _line_of(text, key)
    return f"{source}:{line}" if line else source


def _parse_value(raw):
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def apply_override(doc, assignment):
    """Set ``block.key=value`` in a config document (value parsed as JSON when possible)."""
    if "=" not in assignment:
        raise ConfigError(f"override {assignment!r} is not of the form block.key=value")
    path, raw = assignment.split("=", 1)
    parts = path.strip().split(".")
    if len(parts) != 2:
        raise ConfigError(f"override key {path!r} must be block.key")
    block, key = parts
    doc.setdefault(block, {})[key] = _parse_value(raw.strip())


def load_document(source):
    """Read a config file, or the bundled fixture when `source` is ``@name``."""
    if source.startswith("@"):
        name = source[1:]
        try:
            text = resources.files("whichpath").joinpath(f"data/{name}.json").read_text()
        except FileNotFoundError:
            raise ConfigError(f"no bundled fixture named {name!r}") from None
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {source}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{source}:1: top level must be a JSON object")
    return doc, text


def _number(value, name, where, integer=False, allow_none=False):
    if value is None and allow_none:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: {name} must be a number, got {value!r}")
    if integer:
        if float(value) != int(value):
            raise ConfigError(f"{where}: {name} must be an integer, got {value!r}")
        return int(value)
    if not math.isfinite(value):
        raise ConfigError(f"{where}: {name} must be finite")
    return float(value)


def build_run_config(doc, text=None, source="<config>"):
    """Validate a config document against the schema and the module invariants."""
    for block, body in doc.items():
        if block == "comment":
            continue
        if block not in _SCHEMA:
            raise ConfigError(f"{_where(text, source, block)}: unknown block {block!r}")
        if not isinstance(body, dict):
            raise ConfigError(f"{_where(text, source, block)}: {block} must be an object")
        for key in body:
            if key != "comment" and key not in _SCHEMA[block]:
                raise ConfigError(f"{_where(text, source, key)}: unknown key {block}.{key}")

    exp = doc.get("experiment")
    if exp is None:
        raise ConfigError(f"{source}: missing required block 'experiment'")
    where_exp = _where(text, source, "experiment")
    for key in _REQUIRED_EXPERIMENT:
        if exp.get(key) is None:
            raise ConfigError(f"{where_exp}: missing required field experiment.{key}")
    fields = {}
    for key in sorted(_SCHEMA["experiment"]):
        if key in exp:
            val = _number(exp[key], f"experiment.{key}", _where(text, source, key),
                          allow_none=key in ("m", "log_term"))
            if val is not None:
                fields[key] = val
    try:
        experiment = ExperimentConfig(**fields)
    except ValueError as exc:
        raise ConfigError(f"{where_exp}: experiment: {exc}") from None

    det = {k: _number(v, f"detector.{k}", _where(text, source, k), allow_none=True)
           for k, v in doc.get("detector", {}).items() if k != "comment"}
    for key, val in det.items():
        if val is not None and not val > 0:
            raise ConfigError(f"{_where(text, source, key)}: detector.{key} must be positive")

    sweep = None
    if "sweep" in doc:
        sw = doc["sweep"]
        where_sw = _where(text, source, "sweep")
        for key in ("z_min", "z_max", "n_points"):
            if sw.get(key) is None:
                raise ConfigError(f"{where_sw}: missing required field sweep.{key}")
        log = sw.get("log", False)
        if not isinstance(log, bool):
            raise ConfigError(f"{_where(text, source, 'log')}: sweep.log must be true or false")
        sweep = {
            "z_min": _number(sw["z_min"], "sweep.z_min", where_sw),
            "z_max": _number(sw["z_max"], "sweep.z_max", where_sw),
            "n_points": _number(sw["n_points"], "sweep.n_points", where_sw, integer=True),
            "log": log,
        }
        if sweep["z_min"] < 0 or sweep["z_max"] < sweep["z_min"]:
            raise ConfigError(f"{where_sw}: need 0 <= sweep.z_min <= sweep.z_max")
        if sweep["n_points"] < 1:
            raise ConfigError(f"{where_sw}: sweep.n_points must be at least 1")
        if log and sweep["z_min"] <= 0:
            raise ConfigError(f"{where_sw}: a log-spaced sweep needs z_min > 0")

    mc_doc = doc.get("mc", {})
    where_mc = _where(text, source, "mc")
    mc = {
        "n_particles": _number(mc_doc.get("n_particles", 100_000), "mc.n_particles", where_mc, integer=True),
        "seed": _number(mc_doc.get("seed", 0), "mc.seed", where_mc, integer=True),
        "bins": _number(mc_doc.get("bins", 200), "mc.bins", where_mc, integer=True),
        "halfwidth": _number(mc_doc.get("halfwidth"), "mc.halfwidth", where_mc, allow_none=True),
    }
    if mc["n_particles"] < 0 or mc["seed"] < 0 or mc["bins"] < 2:
        raise ConfigError(f"{where_mc}: need n_particles >= 0, seed >= 0 and bins >= 2")

    out_doc = doc.get("output", {})
    output = {"format": out_doc.get("format", "csv"), "path": out_doc.get("path")}
    if output["format"] not in ("csv", "json"):
        raise ConfigError(f"{_where(text, source, 'format')}: output.format must be csv or json")
    return RunConfig(experiment=experiment, detector=det, sweep=sweep, mc=mc, output=output)


def z_grid(run):
    """Charges to evaluate: the sweep grid, or the single ``experiment.Z``."""
    if run.sweep is None:
        return np.array([run.experiment.Z])
    sw = run.sweep
    if sw["log"]:
        return np.geomspace(sw["z_min"], sw["z_max"], sw["n_points"])
    return np.linspace(sw["z_min"], sw["z_max"], sw["n_points"])


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def format_csv(columns, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def format_json(columns, rows):
    def conv(v):
        if isinstance(v, (bool, np.bool_)):
            return bool(v)
        if isinstance(v, (int, np.integer)):
            return int(v)
        return float(v)
    records = [{c: conv(v) for c, v in zip(columns, row)} for row in rows]
    return json.dumps(records, indent=2) + "\n"


# -- subcommands: each returns (columns, rows, sidecar-or-None) -------------------

def cmd_bohr_rosenfeld(run):
    cfg = run.experiment
    app = fieldmeas.apparatus_for(cfg, xi=run.detector.get("xi"), T_meas=run.detector.get("T_meas"))
    delta_E = fieldmeas.field_uncertainty(app)
    per_charge = fieldmeas.field_difference(1.0, app.R, cfg.d, app.xi)
    row = [app.xi, app.T_meas, delta_E, cfg.Z * per_charge, per_charge,
           fieldmeas.critical_charge_z1(cfg),
           fieldmeas.critical_charge_z1_exact(cfg, xi=app.xi, T_meas=app.T_meas)]
    cols = ["xi", "T_meas", "delta_E", "Delta_E", "Delta_E_per_charge", "Z1", "Z1_exact_geometry"]
    return cols, [row], None


def cmd_distinguishability(run):
    cfg = run.experiment
    z = z_grid(run)
    z1 = fieldmeas.critical_charge_z1(cfg)
    D = np.atleast_1d(pathinfo.distinguishability_of_charge(z, cfg))
    return ["Z", "D", "Z1"], [[a, b, z1] for a, b in zip(z, D)], None


def cmd_visibility(run):
    cfg = run.experiment
    rows = []
    traj = decoherence.trajectory_pair(cfg)
    for Z in z_grid(run):
        closed = decoherence.visibility_closed_form(Z, cfg)
        numeric = decoherence.visibility_numeric(Z, cfg, traj=traj)
        zero_photon, _ = decoherence.zero_photon_factor(Z, cfg)
        rows.append([Z, closed.visibility, closed.log_visibility,
                     numeric.visibility, numeric.log_visibility, zero_photon])
    cols = ["Z", "V", "log_V", "V_numeric", "log_V_numeric", "zero_photon_factor"]
    return cols, rows, None


def cmd_duality_curve(run):
    cfg = run.experiment
    points = pattern.duality_curve(cfg, z_grid(run))
    return ["Z", "V", "D", "f"], [[p.Z, p.V, p.D, p.f] for p in points], None


def cmd_pattern(run):
    cfg = run.experiment
    if cfg.m is None:
        raise ConfigError("pattern: experiment.m is required for the fringe spacing")
    mc = run.mc
    halfwidth = mc["halfwidth"]
    spacing = fringe_spacing(cfg)
    if halfwidth is None:
        halfwidth = 10.0 * spacing
    pcfg = pattern.PatternConfig(cfg=cfg, n_points=mc["bins"], screen_halfwidth=halfwidth)
    hist = pattern.monte_carlo_pattern(pcfg, cfg.Z, mc["n_particles"], mc["seed"])
    rows = [[b, c] for b, c in zip(hist.centers, hist.counts)]
    sidecar = {"Z": cfg.Z, "n_particles": mc["n_particles"], "seed": mc["seed"],
               "fringe_spacing": spacing,
               "visibility_expected": float(decoherence.visibility_closed_form(cfg.Z, cfg).visibility)}
    if hist.total > 0:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            fit = pattern.fit_fringes(hist)
        sidecar.update(visibility_recovered=fit.visibility, visibility_stderr=fit.stderr,
                       n_periods=fit.n_periods)
    return ["bin_center", "counts"], rows, sidecar


def cmd_gravity(run):
    cfg = run.experiment
    k = constants()
    m_crit = gravity.critical_mass(cfg)
    fp = gravity.fringe_vs_planck(cfg, m_crit)
    cols = ["m_crit", "fringe", "ratio", "bound_cT_over_R", "delta_phi_pp"]
    row = [m_crit, fp.fringe, fp.ratio_to_planck_length, fp.bound,
           gravity.required_phi_pp_accuracy(m_crit, cfg.R, cfg.d)]
    S, omega = run.detector.get("S"), run.detector.get("omega")
    if S is not None and omega is not None:
        det = gravity.GravityDetector(S=S, omega=omega, R=cfg.R)
        T = flight_time(cfg)
        signal = abs(float(gravity.detector_response(det, row[-1], T)))
        eta_scale, eta_ceiling = gravity.eta_accuracy_bound(m_crit, cfg.R, cfg.d, S, T)
        cols += ["eta_signal", "eta_scale", "eta_ceiling_scale", "planck_length"]
        row += [signal, eta_scale, eta_ceiling, k.planck_length]
    return cols, [row], None


_COMMANDS = {
    "bohr-rosenfeld": cmd_bohr_rosenfeld,
    "distinguishability": cmd_distinguishability,
    "visibility": cmd_visibility,
    "duality-curve": cmd_duality_curve,
    "pattern": cmd_pattern,
    "gravity": cmd_gravity,
}


def run(subcommand, config_path, overrides=(), output=None, fmt=None, stdout=None):
    """Execute one subcommand; returns the process exit status."""
    stdout = sys.stdout if stdout is None else stdout
    try:
        if subcommand not in _COMMANDS:
            raise ConfigError(f"unknown subcommand {subcommand!r}")
        doc, text = load_document(config_path)
        for assignment in overrides:
            apply_override(doc, assignment)
        if overrides:
            text = None
        run_cfg = build_run_config(doc, text, config_path)
        cols, rows, sidecar = _COMMANDS[subcommand](run_cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (decoherence.QuadratureError, gravity.IntegrationError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    fmt = fmt or run_cfg.output["format"]
    path = output or run_cfg.output["path"]
    body = format_csv(cols, rows) if fmt == "csv" else format_json(cols, rows)
    side = json.dumps(sidecar, indent=2, sort_keys=True) + "\n" if sidecar is not None else None
    if path:
        Path(path).write_text(body)
        if side is not None:
            Path(str(path) + ".json").write_text(side)
    else:
        stdout.write(body)
        if side is not None:
            sys.stderr.write(side)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="whichpath",
        description="Which-path detection and decoherence in two-slit interference.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("config", help="JSON run config, or @tonomura for the bundled fixture")
        p.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="BLOCK.KEY=VALUE", help="override one config value")
        p.add_argument("-o", "--output", help="output file (default: output.path or stdout)")
        p.add_argument("--format", choices=("csv", "json"), help="output format")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    warnings.simplefilter("default", GeometryWarning)
    return run(args.subcommand, args.config, args.overrides, args.output, args.format)


if __name__ == "__main__":
    sys.exit(main())
