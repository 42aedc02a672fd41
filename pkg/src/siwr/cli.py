"""Config-driven command line for the SIWR model.

One JSON config file per invocation; every field has a default, unknown
keys are rejected with their dotted path, and ``--set path=value``
overrides individual fields.  Subcommands map one-to-one onto library
operations and write CSV (data tables) or JSON (reports) into the output
directory.  All numeric output uses 17 significant digits so doubles
round-trip losslessly, every file embeds the seed and the fully resolved
parameter set as metadata, and files are written atomically (temp file
plus rename) with nothing left behind on failure.

Exit codes: 0 success, 1 configuration error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import copy
import json
import math
import os
import sys

import numpy as np

from .equilibrium import EquilibriumReport, NonConvergence, dfe_report, solve_endemic
from .integrator import SolverConfig, StepSizeUnderflow, Trajectory, integrate, summarize
from .model import PARAM_FIELDS, Parameters, State, r0_components
from .sensitivity import (
    DEFAULT_SEED,
    GENERATOR,
    ParameterRange,
    run_sensitivity,
)
from .sweeps import (
    ScenarioSpec,
    bifurcation_scan,
    calibration_report,
    intervention_sweep,
    r0_contour,
    scenario_compare,
)

__all__ = ["main", "ConfigError"]


class ConfigError(Exception):
    """Invalid run configuration; the message carries the offending field."""


# JSON spelling of each Parameters field ("lambda" is a Python keyword).
_PARAM_KEYS = tuple("lambda" if f == "lam" else f for f in PARAM_FIELDS)

_DEFAULT_CONFIG: dict = {
    "seed": DEFAULT_SEED,
    "output_dir": "out",
    "summary_threshold": 1.0,
    "parameters": {
        "lambda": 1.0, "mu": 1e-4, "delta": 5e-3, "gamma": 0.2,
        "beta1": 0.25, "beta_max": 0.5, "k": 1e4, "theta": 0.1,
        "sigma": 0.33, "eps_h": 0.0, "eps_w": 0.0, "nu": 0.0,
    },
    "initial_state": {"s": 9990.0, "i": 10.0, "r": 0.0, "w": 0.0},
    "solver": {
        "rel_tol": 1e-6, "abs_tol": 1e-8, "h_init": 0.1, "h_min": 1e-10,
        "h_max": 10.0, "output_dt": 1.0, "t_end": 100.0,
    },
    "sweep": {"which": "eps_h", "values": [0.0, 0.3, 0.6, 0.9]},
    "scenarios": None,
    "bifurcation": {"which": "beta1", "lo": 0.0, "hi": 0.26, "steps": 50},
    "contour": {"grid_n": 101},
    "prcc": {"n": 1000, "horizon": 100.0, "ranges": None},
}

# Leaf kinds: num (int or float), int, str, numlist, or a nested schema.
_SCHEMA: dict = {
    "seed": "int",
    "output_dir": "str",
    "summary_threshold": "num",
    "parameters": {k: "num" for k in _PARAM_KEYS},
    "initial_state": {"s": "num", "i": "num", "r": "num", "w": "num"},
    "solver": {
        "rel_tol": "num", "abs_tol": "num", "h_init": "num", "h_min": "num",
        "h_max": "num", "output_dt": "num", "t_end": "num",
    },
    "sweep": {"which": "str", "values": "numlist"},
    "scenarios": "scenarios",
    "bifurcation": {"which": "str", "lo": "num", "hi": "num", "steps": "int"},
    "contour": {"grid_n": "int"},
    "prcc": {"n": "int", "horizon": "num", "ranges": "ranges"},
}

_SCENARIO_SCHEMA = {"label": "str", "eps_h": "num", "eps_w": "num", "nu": "num", "horizon": "num"}


def _is_num(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _check_leaf(kind: str, value, path: str) -> None:
    if kind == "num":
        if not _is_num(value):
            raise ConfigError(f"config error at {path}: expected a number, got {value!r}")
    elif kind == "int":
        if not isinstance(value, int) or isinstance(value, bool):
            raise ConfigError(f"config error at {path}: expected an integer, got {value!r}")
    elif kind == "str":
        if not isinstance(value, str):
            raise ConfigError(f"config error at {path}: expected a string, got {value!r}")
    elif kind == "numlist":
        if not isinstance(value, list) or not value or not all(_is_num(v) for v in value):
            raise ConfigError(f"config error at {path}: expected a non-empty list of numbers")
    elif kind == "scenarios":
        if value is None:
            return
        if not isinstance(value, list):
            raise ConfigError(f"config error at {path}: expected null or a list of scenarios")
        for idx, item in enumerate(value):
            if not isinstance(item, dict):
                raise ConfigError(f"config error at {path}[{idx}]: expected an object")
            if "label" not in item:
                raise ConfigError(f"config error at {path}[{idx}]: missing required key 'label'")
            for key, sub in item.items():
                if key not in _SCENARIO_SCHEMA:
                    raise ConfigError(f"config error at {path}[{idx}].{key}: unknown key")
                _check_leaf(_SCENARIO_SCHEMA[key], sub, f"{path}[{idx}].{key}")
    elif kind == "ranges":
        if value is None:
            return
        if not isinstance(value, dict):
            raise ConfigError(f"config error at {path}: expected null or an object of [lo, hi] pairs")
        for key, pair in value.items():
            if key not in _PARAM_KEYS:
                raise ConfigError(f"config error at {path}.{key}: unknown parameter")
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(_is_num(v) for v in pair)):
                raise ConfigError(f"config error at {path}.{key}: expected [lower, upper]")
    else:  # pragma: no cover - schema typo guard
        raise AssertionError(kind)


def _validate_tree(schema: dict, cfg: dict, prefix: str = "") -> None:
    for key, value in cfg.items():
        path = f"{prefix}{key}"
        if key not in schema:
            raise ConfigError(f"config error at {path}: unknown key")
        expected = schema[key]
        if isinstance(expected, dict):
            if not isinstance(value, dict):
                raise ConfigError(f"config error at {path}: expected an object")
            _validate_tree(expected, value, f"{path}.")
        else:
            _check_leaf(expected, value, path)


def _deep_merge(dst: dict, src: dict) -> dict:
    for key, value in src.items():
        if isinstance(value, dict) and isinstance(dst.get(key), dict):
            _deep_merge(dst[key], value)
        else:
            dst[key] = copy.deepcopy(value)
    return dst


def _apply_set(cfg: dict, assignment: str) -> None:
    if "=" not in assignment:
        raise ConfigError(f"--set expects path=value, got {assignment!r}")
    raw_path, raw_value = assignment.split("=", 1)
    segments = raw_path.strip().split(".")
    if not all(segments):
        raise ConfigError(f"--set has an empty path segment in {raw_path!r}")
    try:
        value = json.loads(raw_value)
    except json.JSONDecodeError:
        value = raw_value  # bare strings allowed, e.g. sweep.which=eps_w
    node = cfg
    for seg in segments[:-1]:
        nxt = node.get(seg)
        if nxt is None:
            node[seg] = nxt = {}
        if not isinstance(nxt, dict):
            raise ConfigError(f"--set cannot address into {'.'.join(segments)!r}")
        node = nxt
    node[segments[-1]] = value


def resolve_config(args) -> dict:
    """Defaults, overlaid by the config file, --set edits, then --seed/--out."""
    cfg = copy.deepcopy(_DEFAULT_CONFIG)
    if args.config is not None:
        try:
            with open(args.config, encoding="utf-8") as fh:
                user = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(user, dict):
            raise ConfigError("config file must contain a JSON object")
        _validate_tree(_SCHEMA, user)
        _deep_merge(cfg, user)
    for assignment in args.set or []:
        _apply_set(cfg, assignment)
    if args.seed is not None:
        cfg["seed"] = args.seed
    if args.out is not None:
        cfg["output_dir"] = args.out
    _validate_tree(_SCHEMA, cfg)
    if cfg["seed"] < 0:
        raise ConfigError(f"config error at seed: must be >= 0, got {cfg['seed']!r}")
    return cfg


def _build_parameters(cfg: dict) -> Parameters:
    block = cfg["parameters"]
    kwargs = {field: float(block[key]) for field, key in zip(PARAM_FIELDS, _PARAM_KEYS)}
    p = Parameters(**kwargs)
    try:
        p.validate()
    except ValueError as exc:
        raise ConfigError(f"config error at parameters: {exc}") from exc
    return p


def _build_state(cfg: dict) -> State:
    block = cfg["initial_state"]
    x0 = State(s=float(block["s"]), i=float(block["i"]), r=float(block["r"]), w=float(block["w"]))
    try:
        x0.validate()
    except ValueError as exc:
        raise ConfigError(f"config error at initial_state: {exc}") from exc
    return x0


def _build_solver(cfg: dict) -> SolverConfig:
    block = cfg["solver"]
    sc = SolverConfig(**{key: float(block[key]) for key in block})
    try:
        sc.validate()
    except ValueError as exc:
        raise ConfigError(f"config error at solver: {exc}") from exc
    return sc


def _build_ranges(cfg: dict) -> list[ParameterRange] | None:
    block = cfg["prcc"]["ranges"]
    if block is None:
        return None
    return [ParameterRange(name, float(pair[0]), float(pair[1])) for name, pair in block.items()]


def _build_scenarios(cfg: dict) -> list[ScenarioSpec] | None:
    block = cfg["scenarios"]
    if block is None:
        return None
    specs = []
    for item in block:
        specs.append(ScenarioSpec(
            label=str(item["label"]),
            eps_h=item.get("eps_h"),
            eps_w=item.get("eps_w"),
            nu=item.get("nu"),
            horizon=float(item.get("horizon", 100.0)),
        ))
    return specs


# ---------------------------------------------------------------------------
# Serialization: 17 significant digits everywhere, atomic file replacement.


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _json_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{pad}  {json.dumps(str(key))}: {_json_text(val, indent + 1)}'
            for key, val in obj.items()
        )
        return "{\n" + items + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ",\n".join(f"{pad}  {_json_text(val, indent + 1)}" for val in obj)
        return "[\n" + items + f"\n{pad}]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if math.isnan(obj):
            return '"nan"'
        if math.isinf(obj):
            return '"inf"' if obj > 0 else '"-inf"'
        return _fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


class _StagedOutputs:
    """Collect temp files and rename them into place only on success."""

    def __init__(self, out_dir: str):
        self.out_dir = out_dir
        self.staged: list[tuple[str, str]] = []

    def write_text(self, name: str, text: str) -> str:
        os.makedirs(self.out_dir, exist_ok=True)
        final = os.path.join(self.out_dir, name)
        tmp = f"{final}.tmp{os.getpid()}"
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        self.staged.append((tmp, final))
        return final

    def commit(self) -> None:
        for tmp, final in self.staged:
            os.replace(tmp, final)
        self.staged.clear()

    def abort(self) -> None:
        for tmp, _ in self.staged:
            try:
                os.unlink(tmp)
            except OSError:
                pass
        self.staged.clear()


def _json_compact(obj) -> str:
    if isinstance(obj, dict):
        return "{" + ", ".join(
            f"{json.dumps(str(k))}: {_json_compact(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_compact(v) for v in obj) + "]"
    return _json_text(obj)


def _meta_lines(meta: dict) -> str:
    return "".join(f"# {key}: {_json_compact(value)}\n" for key, value in meta.items())


def _csv_text(meta: dict, header: list[str], rows: list[list]) -> str:
    lines = [_meta_lines(meta), ",".join(header) + "\n"]
    for row in rows:
        lines.append(",".join(
            _fmt(v) if _is_num(v) and not isinstance(v, bool) else str(v) for v in row
        ) + "\n")
    return "".join(lines)


def _base_meta(command: str, cfg: dict) -> dict:
    return {
        "command": command,
        "seed": cfg["seed"],
        "parameters": {key: float(cfg["parameters"][key]) for key in _PARAM_KEYS},
    }


def _summary_dict(summary) -> dict:
    return {
        "peak_infected": summary.peak_infected,
        "peak_time": summary.peak_time,
        "cumulative_infections": summary.cumulative_infections,
        "final_susceptible": summary.final_susceptible,
        "duration_above": summary.duration_above,
        "threshold": summary.threshold,
    }


def _report_dict(report: EquilibriumReport | None) -> dict:
    if report is None:
        return {"kind": "no_endemic"}
    return {
        "kind": report.kind,
        "state": {
            "s": report.state.s, "i": report.state.i,
            "r": report.state.r, "w": report.state.w,
        },
        "residual_norm": report.residual_norm,
        "eigenvalues": [{"re": v.real, "im": v.imag} for v in report.eigenvalues],
        "stability": report.stability,
        "r0": report.r0_at_params,
    }


def _sweep_csv_rows(rows, value_key: str | None = None):
    out = []
    for row in rows:
        s = row.summary
        val = row.overrides.get(value_key, math.nan) if value_key else math.nan
        out.append([
            row.label if value_key is None else value_key,
            val,
            row.r0,
            s.peak_infected, s.peak_time, s.cumulative_infections,
            s.final_susceptible, s.duration_above,
            row.endemic_i,
            str(row.converged).lower(),
        ])
    return out


# ---------------------------------------------------------------------------
# Subcommand bodies: each returns lines for stdout and stages its files.


def _cmd_simulate(cfg: dict, out: _StagedOutputs) -> list[str]:
    p, x0, sc = _build_parameters(cfg), _build_state(cfg), _build_solver(cfg)
    tr = integrate(p, x0, sc)
    summary = summarize(tr, float(cfg["summary_threshold"]))
    meta = _base_meta("simulate", cfg)
    meta["initial_state"] = dict(cfg["initial_state"])
    meta["solver"] = dict(cfg["solver"])
    rows = [
        [tr.times[j], tr.y[j, 0], tr.y[j, 1], tr.y[j, 2], tr.y[j, 3], tr.cum_incidence[j]]
        for j in range(len(tr.times))
    ]
    path = out.write_text("trajectory.csv", _csv_text(meta, ["t", "S", "I", "R", "W", "C"], rows))
    spath = out.write_text("summary.json", _json_text(
        {"meta": meta, "summary": _summary_dict(summary)}) + "\n")
    return [
        f"simulated {sc.t_end:g} days: peak I = {summary.peak_infected:.6g} "
        f"at t = {summary.peak_time:g}, cumulative infections = "
        f"{summary.cumulative_infections:.6g}",
        f"wrote {path}",
        f"wrote {spath}",
    ]


def _cmd_r0(cfg: dict, out: _StagedOutputs) -> list[str]:
    p = _build_parameters(cfg)
    parts = r0_components(p)
    path = out.write_text("r0.json", _json_text({"meta": _base_meta("r0", cfg), **parts}) + "\n")
    return [
        _fmt(parts["r0"]),
        f"direct_term = {_fmt(parts['direct_term'])}",
        f"environmental_term = {_fmt(parts['environmental_term'])}",
        f"removal_denominator = {_fmt(parts['removal_denominator'])}",
        f"wrote {path}",
    ]


def _cmd_dfe(cfg: dict, out: _StagedOutputs) -> list[str]:
    p = _build_parameters(cfg)
    report = dfe_report(p)
    path = out.write_text("dfe.json", _json_text(
        {"meta": _base_meta("dfe", cfg), "report": _report_dict(report)}) + "\n")
    st = report.state
    return [
        f"disease-free equilibrium: S={st.s:.10g} I={st.i:g} R={st.r:.10g} W={st.w:g}",
        f"stability: {report.stability} (r0 = {report.r0_at_params:.6g})",
        f"wrote {path}",
    ]


def _cmd_endemic(cfg: dict, out: _StagedOutputs) -> list[str]:
    p = _build_parameters(cfg)
    report = solve_endemic(p)
    path = out.write_text("endemic.json", _json_text(
        {"meta": _base_meta("endemic", cfg), "report": _report_dict(report)}) + "\n")
    if report is None:
        return [f"no endemic equilibrium (r0 = {r0_components(p)['r0']:.6g})", f"wrote {path}"]
    st = report.state
    return [
        f"endemic equilibrium: S={st.s:.10g} I={st.i:.10g} R={st.r:.10g} W={st.w:.10g}",
        f"stability: {report.stability} (r0 = {report.r0_at_params:.6g}, "
        f"residual = {report.residual_norm:.3g})",
        f"wrote {path}",
    ]


def _cmd_sweep(cfg: dict, out: _StagedOutputs) -> list[str]:
    p, x0, sc = _build_parameters(cfg), _build_state(cfg), _build_solver(cfg)
    which = cfg["sweep"]["which"]
    values = [float(v) for v in cfg["sweep"]["values"]]
    try:
        rows = intervention_sweep(p, which, values, x0=x0, solver=sc,
                                  threshold=float(cfg["summary_threshold"]))
    except ValueError as exc:
        raise ConfigError(f"config error at sweep.which: {exc}") from exc
    meta = _base_meta("sweep", cfg)
    meta["solver"] = dict(cfg["solver"])
    header = ["parameter", "value", "r0", "peak_infected", "peak_time",
              "cumulative_infections", "final_susceptible", "duration_above",
              "endemic_i", "converged"]
    path = out.write_text(f"sweep_{which}.csv",
                          _csv_text(meta, header, _sweep_csv_rows(rows, which)))
    return [f"swept {which} over {len(values)} values", f"wrote {path}"]


def _cmd_scenarios(cfg: dict, out: _StagedOutputs) -> list[str]:
    p, x0 = _build_parameters(cfg), _build_state(cfg)
    specs = _build_scenarios(cfg)
    rows = scenario_compare(p, specs, x0=x0, threshold=float(cfg["summary_threshold"]))
    meta = _base_meta("scenarios", cfg)
    header = ["label", "eps_h", "eps_w", "nu", "r0", "peak_infected", "peak_time",
              "cumulative_infections", "final_susceptible", "duration_above",
              "endemic_i", "converged"]
    csv_rows = []
    for row in rows:
        s = row.summary
        csv_rows.append([
            row.label,
            row.overrides.get("eps_h", p.eps_h),
            row.overrides.get("eps_w", p.eps_w),
            row.overrides.get("nu", p.nu),
            row.r0,
            s.peak_infected, s.peak_time, s.cumulative_infections,
            s.final_susceptible, s.duration_above,
            row.endemic_i, str(row.converged).lower(),
        ])
    path = out.write_text("scenarios.csv", _csv_text(meta, header, csv_rows))
    return [f"compared {len(rows)} scenarios", f"wrote {path}"]


def _cmd_bifurcation(cfg: dict, out: _StagedOutputs) -> list[str]:
    p = _build_parameters(cfg)
    block = cfg["bifurcation"]
    try:
        rows = bifurcation_scan(p, block["which"], float(block["lo"]),
                                float(block["hi"]), int(block["steps"]))
    except ValueError as exc:
        raise ConfigError(f"config error at bifurcation: {exc}") from exc
    meta = _base_meta("bifurcation", cfg)
    header = ["parameter", "value", "r0", "endemic_i", "converged"]
    csv_rows = [
        [block["which"], row.overrides[block["which"]], row.r0, row.endemic_i,
         str(row.converged).lower()]
        for row in rows
    ]
    path = out.write_text(f"bifurcation_{block['which']}.csv", _csv_text(meta, header, csv_rows))
    flagged = sum(1 for row in rows if not row.converged)
    lines = [f"scanned {block['which']} over [{block['lo']:g}, {block['hi']:g}] "
             f"in {block['steps']} steps", f"wrote {path}"]
    if flagged:
        lines.append(f"warning: {flagged} rows did not converge")
    return lines


def _cmd_contour(cfg: dict, out: _StagedOutputs) -> list[str]:
    p = _build_parameters(cfg)
    grid_n = int(cfg["contour"]["grid_n"])
    try:
        matrix = r0_contour(p, grid_n)
    except ValueError as exc:
        raise ConfigError(f"config error at contour.grid_n: {exc}") from exc
    grid = np.linspace(0.0, 1.0, grid_n)
    header = ["eps_h\\eps_w"] + [_fmt(v) for v in grid]
    rows = [[grid[i]] + [matrix[i, j] for j in range(grid_n)] for i in range(grid_n)]
    path = out.write_text("r0_contour.csv", _csv_text(_base_meta("contour", cfg), header, rows))
    return [f"computed {grid_n}x{grid_n} r0 grid over (eps_h, eps_w), nu = 0", f"wrote {path}"]


def _cmd_prcc(cfg: dict, out: _StagedOutputs) -> list[str]:
    p, x0 = _build_parameters(cfg), _build_state(cfg)
    ranges = _build_ranges(cfg)
    try:
        result = run_sensitivity(
            p, ranges, n=int(cfg["prcc"]["n"]), seed=int(cfg["seed"]),
            horizon=float(cfg["prcc"]["horizon"]), x0=x0,
        )
    except ValueError as exc:
        raise ConfigError(f"config error at prcc: {exc}") from exc
    meta = _base_meta("prcc", cfg)
    meta["generator"] = result.generator
    meta["n_samples"] = result.n_samples
    meta["outcome"] = result.outcome
    meta["failed_samples"] = list(result.failed_samples)
    csv_rows = [[name, coeff] for name, coeff in result.coefficients.items()]
    path = out.write_text("prcc.csv", _csv_text(meta, ["parameter", "prcc"], csv_rows))
    lines = [f"{name}: {coeff:+.4f}" for name, coeff in result.coefficients.items()]
    lines.append(f"wrote {path}")
    return lines


def _cmd_calibration(cfg: dict, out: _StagedOutputs) -> list[str]:
    p, x0, sc = _build_parameters(cfg), _build_state(cfg), _build_solver(cfg)
    cal = calibration_report(p, x0, sc)
    path = out.write_text("calibration.json", _json_text(
        {"meta": _base_meta("calibration", cfg), "calibration": cal}) + "\n")
    def show(v):
        return "not reached" if v is None else f"{v:.4g}"
    return [
        f"r0 = {cal['r0_baseline']:.4g}",
        f"peak time = {cal['baseline_peak_time_days']:g} d "
        f"(reference window {cal['reference_peak_window_days'][0]:g}-"
        f"{cal['reference_peak_window_days'][1]:g} d)",
        f"nu=0.01 peak reduction = {cal['nu_0.01_peak_reduction_pct']:.4g}% "
        f"(reference ~{cal['reference_peak_reduction_pct']:g}%)",
        f"eps_h crossing of r0=1 at {show(cal['eps_h_r0_crossing'])} "
        f"(reference > {cal['reference_eps_h_threshold']:g})",
        f"eps_w crossing of r0=1 at {show(cal['eps_w_r0_crossing'])} "
        f"(reference > {cal['reference_eps_w_threshold']:g})",
        f"wrote {path}",
    ]


_COMMANDS = {
    "simulate": (_cmd_simulate, "integrate the model and write trajectory.csv + summary.json"),
    "r0": (_cmd_r0, "print the basic reproduction number and its components"),
    "dfe": (_cmd_dfe, "disease-free equilibrium report with stability"),
    "endemic": (_cmd_endemic, "endemic equilibrium report with stability"),
    "sweep": (_cmd_sweep, "sweep one control (eps_h, eps_w or nu) over a value grid"),
    "scenarios": (_cmd_scenarios, "compare single and combined intervention packages"),
    "bifurcation": (_cmd_bifurcation, "endemic branch along a transmission-parameter ramp"),
    "contour": (_cmd_contour, "r0 over the (eps_h, eps_w) unit square with nu = 0"),
    "prcc": (_cmd_prcc, "LHS/PRCC global sensitivity of cumulative infections"),
    "calibration": (_cmd_calibration, "measured baseline behavior vs reference claims"),
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON run configuration")
    common.add_argument("--out", metavar="DIR", help="output directory (default from config)")
    common.add_argument("--seed", type=int, metavar="N", help="override the run seed")
    common.add_argument("--set", action="append", metavar="PATH=VALUE",
                        help="override one config field, e.g. --set parameters.gamma=0.25")
    common.add_argument("--dump-config", action="store_true",
                        help="print the fully resolved config as JSON and exit")
    parser = argparse.ArgumentParser(
        prog="siwr",
        description="SIWR cholera model: simulation, equilibria, interventions, sensitivity.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_fn, help_text) in _COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
    except ConfigError as exc:
        print(f"siwr: {exc}", file=sys.stderr)
        return 1

    if args.dump_config:
        print(_json_text(cfg))
        return 0

    out = _StagedOutputs(str(cfg["output_dir"]))
    try:
        lines = _COMMANDS[args.command][0](cfg, out)
        out.commit()
    except ConfigError as exc:
        out.abort()
        print(f"siwr: {exc}", file=sys.stderr)
        return 1
    except (StepSizeUnderflow, NonConvergence, RuntimeError, ValueError,
            OverflowError, ZeroDivisionError) as exc:
        out.abort()
        print(f"siwr: numerical failure: {exc}", file=sys.stderr)
        return 2
    for line in lines:
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
