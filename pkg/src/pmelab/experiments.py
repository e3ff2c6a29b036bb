"""Case configs, theorem recipes and parameter sweeps.

A case config is a YAML (or JSON) mapping with the sections ``density``,
``exponents``, ``barrier`` (optional), ``datum``, ``solver`` and ``outputs``.
Unknown keys are rejected so that typos cannot silently change a recipe.
"""

from __future__ import annotations

import copy
import csv
import datetime as _dt
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np
import yaml

from .barrier import SUB, BarrierSpec, eval_barrier, make_barrier, support_edge
from .density import DensitySpec, load_table, power_density
from .errors import (ConfigInvalid, NewtonDivergence, NoFeasiblePoint, PmeLabError)
from .feasibility import (FeasibilityReport, ProblemExponents, barrier_from_report,
                          feasible_critical_blowup, feasible_critical_global,
                          feasible_fast_blowup, feasible_fast_global, feasible_slow)
from .residual import (RegionSpec, check_interface, compare_bracket_conventions,
                       verify_sign)
from .solver import (BLOWUP, GLOBAL, SchemeConfig, compare_with_barrier,
                     local_existence_time, solve_regularized)

NUMERICAL_FAILURE = "NumericalFailure"
SYSTEMS = ("fast-global", "fast-blowup", "critical-global", "critical-blowup", "slow")
DATUM_KINDS = ("zero", "scaled-barrier", "bump", "power-profile")

NUM = (int, float)
_SCHEMA = {
    "name": str,
    "density": {"R": NUM, "q": NUM, "eps0": NUM, "table": str, "c1": NUM, "c2": NUM,
                "symmetric": bool},
    "exponents": {"m": NUM, "p": NUM},
    "barrier": {"system": str, "eps": NUM, "omega": NUM, "case": str, "T": NUM,
                "delta_exp": NUM, "horizon": NUM, "d": NUM, "sign_mode": str,
                "alpha": NUM, "bracket_sign": int, "check_until": NUM,
                "regime": str, "orientation": str, "C": NUM, "a": NUM, "beta": NUM,
                "d_exp": NUM, "log_core_sign": int},
    "datum": {"kind": str, "scale": NUM, "center": NUM, "width": NUM, "height": NUM,
              "C": NUM, "d": NUM},
    "solver": {"delta": NUM, "t_end": NUM, **{f.name: object for f in fields(SchemeConfig)}},
    "outputs": {"dir": str, "snapshot_every": int},
}
_REQUIRED = {"exponents": ("m", "p"), "density": ("q",)}


@dataclass
class CaseConfig:
    name: str
    density: dict
    exponents: dict
    datum: dict
    solver: dict
    outputs: dict = field(default_factory=dict)
    barrier: dict | None = None


def _validate(node, schema, path: str) -> None:
    if isinstance(schema, dict):
        if not isinstance(node, dict):
            raise ConfigInvalid(path or ".", "expected a mapping")
        for key, val in node.items():
            if key not in schema:
                raise ConfigInvalid(f"{path}.{key}", "unknown key")
            _validate(val, schema[key], f"{path}.{key}")
        return
    if schema is object:
        return
    if schema is NUM and isinstance(node, bool):
        raise ConfigInvalid(path, "expected a number")
    if not isinstance(node, schema):
        name = "number" if schema is NUM else schema.__name__
        raise ConfigInvalid(path, f"expected {name}, got {type(node).__name__}")


def parse_config(data: dict) -> CaseConfig:
    """Validate a config mapping (strict keys) and return a CaseConfig."""
    if not isinstance(data, dict):
        raise ConfigInvalid(".", "config must be a mapping")
    _validate(data, _SCHEMA, "")
    for section in ("density", "exponents", "datum"):
        if section not in data:
            raise ConfigInvalid(f".{section}", "missing section")
    for section, keys in _REQUIRED.items():
        for key in keys:
            if key not in data[section]:
                raise ConfigInvalid(f".{section}.{key}", "missing key")
    kind = data["datum"].get("kind")
    if kind not in DATUM_KINDS:
        raise ConfigInvalid(".datum.kind", f"expected one of {DATUM_KINDS}")
    barrier = data.get("barrier")
    if barrier is not None:
        if "regime" in barrier:
            for key in ("orientation", "C"):
                if key not in barrier:
                    raise ConfigInvalid(f".barrier.{key}", "needed with an explicit regime")
            if "system" in barrier:
                raise ConfigInvalid(".barrier.system", "give either system or regime")
        elif barrier.get("system") not in SYSTEMS:
            raise ConfigInvalid(".barrier.system", f"expected one of {SYSTEMS}")
    if kind == "scaled-barrier" and barrier is None:
        raise ConfigInvalid(".barrier", "scaled-barrier datum needs a barrier section")
    solver = dict(data.get("solver", {}))
    try:
        make_scheme(solver)
    except (TypeError, ValueError) as exc:
        raise ConfigInvalid(".solver", str(exc)) from None
    m, p = data["exponents"]["m"], data["exponents"]["p"]
    if not (m > 1 and p > 1):
        raise ConfigInvalid(".exponents", "need m > 1 and p > 1")
    return CaseConfig(name=data.get("name", "case"), density=dict(data["density"]),
                      exponents=dict(data["exponents"]), datum=dict(data["datum"]),
                      solver=solver, outputs=dict(data.get("outputs", {})),
                      barrier=None if barrier is None else dict(barrier))


def load_config(path: str | Path) -> CaseConfig:
    try:
        with open(path) as fh:
            data = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        raise ConfigInvalid(".", f"unreadable config: {exc}") from None
    except OSError as exc:
        raise ConfigInvalid(".", str(exc)) from None
    return parse_config(data)


def make_scheme(solver: dict) -> SchemeConfig:
    kw = {k: v for k, v in solver.items() if k not in ("delta", "t_end")}
    return SchemeConfig(**kw)


def make_density(section: dict) -> DensitySpec:
    try:
        if "table" in section:
            keys = ("R", "q", "c1", "c2", "eps0")
            missing = [k for k in keys if k not in section]
            if missing:
                raise ConfigInvalid(f".density.{missing[0]}", "needed with a table")
            return load_table(section["table"], **{k: section[k] for k in keys},
                              symmetric=section.get("symmetric", True))
        extra = {"c1", "c2", "symmetric"} & section.keys()
        if extra:
            raise ConfigInvalid(f".density.{sorted(extra)[0]}", "only valid with a table")
        return power_density(section.get("R", 1.0), section["q"], section.get("eps0"))
    except ConfigInvalid:
        raise
    except (PmeLabError, ValueError, OSError) as exc:
        raise ConfigInvalid(".density", str(exc)) from None


def run_feasibility(section: dict, exps: ProblemExponents, density: DensitySpec,
                    t_end: float) -> FeasibilityReport:
    system = section["system"]
    opts = {k: v for k, v in section.items()
            if k not in ("system", "bracket_sign", "check_until")}
    try:
        if system == "fast-global":
            return feasible_fast_global(exps, density, **opts)
        if system == "fast-blowup":
            return feasible_fast_blowup(exps, density, **opts)
        if system == "critical-global":
            opts.setdefault("horizon", t_end)
            return feasible_critical_global(exps, density, **opts)
        if system == "critical-blowup":
            return feasible_critical_blowup(exps, density, **opts)
        return feasible_slow(exps, density, **opts)
    except PmeLabError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigInvalid(".barrier", str(exc)) from None


EXPLICIT_KEYS = ("C", "a", "T", "eps", "delta_exp", "d_exp", "bracket_sign", "alpha", "beta",
                 "log_core_sign")


def explicit_barrier(section: dict, exps: ProblemExponents, density: DensitySpec) -> BarrierSpec:
    """A barrier from user-supplied parameters, without a feasibility search."""
    kw = {k: section[k] for k in EXPLICIT_KEYS if k in section}
    try:
        return make_barrier(section["regime"].lower(), section["orientation"], m=exps.m,
                            p=exps.p, q=density.q, R=density.R, **kw)
    except (PmeLabError, ValueError, KeyError) as exc:
        raise ConfigInvalid(".barrier", str(exc)) from None


def make_datum(section: dict, barrier: BarrierSpec | None, density: DensitySpec, m: float):
    """Callable x -> u0(x) for the configured datum family."""
    kind = section["kind"]
    R = density.R
    if kind == "zero":
        return lambda x: np.zeros_like(x)
    if kind == "scaled-barrier":
        scale = section.get("scale", 1.0)
        return lambda x: scale * np.asarray(eval_barrier(barrier, density, x, 0.0))
    if kind == "bump":
        c = section.get("center", 0.0)
        w = section.get("width", 0.3 * R)
        h = section.get("height", 1e-2)
        return lambda x: h * np.maximum(1 - ((x - c) / w) ** 2, 0.0) ** 2
    # power profile C (R-|x|)^(d/m); C and d default to a slow barrier's values
    C, d = section.get("C"), section.get("d")
    if barrier is not None and barrier.d_exp is not None:
        C = barrier.C if C is None else C
        d = barrier.d_exp if d is None else d
    if C is None or d is None:
        raise ConfigInvalid(".datum", "power-profile needs C and d (or a slow barrier)")
    return lambda x: C * (R - np.abs(x)) ** (d / m)


def barrier_regions(spec: BarrierSpec, t_end: float) -> list[RegionSpec]:
    """Regions on which each barrier family is certified."""
    if spec.regime.tag == "Slow":
        return [RegionSpec("SlowInterior", 0.0, t_end)]
    if spec.orientation == SUB:
        return [RegionSpec("S1S2", 0.0, 0.9 * spec.T)]
    return [RegionSpec("A", 0.0, t_end)]


def barrier_check(spec: BarrierSpec, density: DensitySpec, t_end: float,
                  grid: tuple[int, int] = (400, 100), dump: list | None = None) -> dict:
    """Sign checks on the family's regions plus the pasting conditions."""
    out = {"family": spec.family, "orientation": spec.orientation, "regions": []}
    passed = True
    for region in barrier_regions(spec, t_end):
        rep = verify_sign(spec, density, region, grid=grid, dump=dump)
        out["regions"].append(rep.to_dict())
        passed &= rep.passed
        if spec.family == "fast-super":
            conv = compare_bracket_conventions(spec, density, region, grid)
            out["bracket_conventions"] = {"passing": conv["passing"], "note": conv["note"]}
    window_end = 0.9 * spec.T if spec.orientation == SUB and spec.time.kind == "backward" \
        else t_end
    iface = check_interface(spec, density, np.linspace(0.0, window_end, 5))
    out["interfaces"] = iface
    passed &= iface["passed"]
    out["passed"] = bool(passed)
    return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else ("inf" if v > 0 else "-inf" if v < 0 else "nan")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def write_json(path: Path, data: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    body = dict(_jsonable(data))
    body["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    path.write_text(json.dumps(body, indent=2, sort_keys=True) + "\n")


def write_history(path: Path, history: np.ndarray) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "sup_norm", "mass", "dt"])
        for row in history:
            w.writerow([repr(float(v)) for v in row])


def write_snapshots(path: Path, result, every: int = 1) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "x", "u"])
        for k in range(0, len(result.snapshot_times), max(1, every)):
            t = repr(float(result.snapshot_times[k]))
            for x, u in zip(result.grid, result.snapshots[k]):
                w.writerow([t, repr(float(x)), repr(float(u))])


def write_residual_dump(path: Path, rows: list) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "t", "residual", "bracket"])
        for row in rows:
            w.writerow([repr(float(v)) for v in row])


def run_case(cfg: CaseConfig, out_dir: str | Path | None = None, write: bool = True) -> dict:
    """Feasibility, barrier check, solve and comparison for one config.

    Returns a summary dict; artifacts go to ``out_dir`` (or outputs.dir).
    Numerical failures of the solver are recorded in the summary with
    status NumericalFailure rather than raised.
    """
    density = make_density(cfg.density)
    exps = ProblemExponents(cfg.exponents["m"], cfg.exponents["p"])
    t_end = float(cfg.solver.get("t_end", 5.0))
    delta = float(cfg.solver.get("delta", 0.01))
    scheme = make_scheme(cfg.solver)
    summary: dict = {"name": cfg.name, "m": exps.m, "p": exps.p, "q": density.q,
                     "R": density.R, "delta": delta, "t_end": t_end}
    spec = None
    if cfg.barrier is not None and "regime" in cfg.barrier:
        spec = explicit_barrier(cfg.barrier, exps, density)
    elif cfg.barrier is not None:
        try:
            report = run_feasibility(cfg.barrier, exps, density, t_end)
        except NoFeasiblePoint as exc:
            summary["feasibility"] = exc.report.to_dict()
            summary["status"] = "Infeasible"
            summary["passed"] = False
            _emit(cfg, out_dir, write, summary, None)
            return summary
        summary["feasibility"] = report.to_dict()
        summary["feasibility_digest"] = report.digest()
        spec = barrier_from_report(report, cfg.barrier.get("bracket_sign"))
    if spec is not None:
        summary["barrier"] = {"family": spec.family, "C": spec.C, "a": spec.a, "T": spec.T,
                              "alpha": spec.alpha, "beta": spec.beta,
                              "bracket_sign": spec.bracket_sign}
        check_end = min(t_end, cfg.barrier.get("check_until", t_end))
        summary["barrier_check"] = barrier_check(spec, density, check_end)
    u0 = make_datum(cfg.datum, spec, density, exps.m)
    try:
        result = solve_regularized(density, exps.m, exps.p, u0, delta, scheme, t_end)
    except NewtonDivergence as exc:
        summary["status"] = NUMERICAL_FAILURE
        summary["error"] = str(exc)
        summary["passed"] = False
        _emit(cfg, out_dir, write, summary, None)
        return summary
    summary.update(result.summary())
    summary["history_final"] = result.history[-1].tolist()
    tau = local_existence_time(exps.p, result.snapshots[0])
    summary["local_existence_time"] = tau
    if result.status == BLOWUP:
        dt_last = float(result.history[-1, 3])
        summary["no_false_blowup"] = bool(result.bracket[0] >= tau - dt_last)
    if spec is not None:
        summary["comparison"] = _compare(result, spec, density, delta)
    _emit(cfg, out_dir, write, summary, result)
    return summary


def _compare(result, spec: BarrierSpec, density: DensitySpec, delta: float) -> dict:
    if spec.orientation == SUB and spec.regime.tag != "Slow":
        # the ordering on I_delta needs the sub-barrier supported inside I_delta
        edge_ok = _support_inside_until(spec, density.R - delta, result)
        if edge_ok is None:
            return {"applicable": False,
                    "reason": "sub-barrier is not compactly supported inside I_delta"}
        rep = compare_with_barrier(result, spec, t_max=edge_ok)
    else:
        rep = compare_with_barrier(result, spec)
    out = rep.to_dict()
    out["applicable"] = True
    return out


def _support_inside_until(spec: BarrierSpec, edge: float, result) -> float | None:
    """Last snapshot time at which the sub-barrier support lies inside [-edge, edge]."""
    last = None
    for t in result.snapshot_times:
        if t >= spec.T:
            break
        s = support_edge(spec, float(t))
        if s is None or s >= edge:
            break
        last = float(t)
    return last


def _emit(cfg: CaseConfig, out_dir, write: bool, summary: dict, result) -> None:
    if not write:
        return
    target = out_dir or cfg.outputs.get("dir")
    if target is None:
        return
    target = Path(target)
    write_json(target / "summary.json", summary)
    if result is not None:
        write_history(target / "history.csv", result.history)
        write_snapshots(target / "snapshots.csv", result, cfg.outputs.get("snapshot_every", 1))


# ---------------------------------------------------------------- theorem recipes

BLOWUP_SOLVER = {"order": 2, "rel_change_tol": 0.02}

RECIPES: dict[str, dict] = {
    "T2.1": {
        "name": "fast-global",
        "density": {"R": 1.0, "q": 3.0},
        "exponents": {"m": 2, "p": 3},
        "barrier": {"system": "fast-global"},
        "datum": {"kind": "scaled-barrier", "scale": 0.5},
        "solver": {"delta": 0.01, "t_end": 5.0},
        "expect": GLOBAL,
    },
    "T2.2": {
        "name": "fast-blowup",
        "density": {"R": 1.0, "q": 3.0},
        "exponents": {"m": 2, "p": 3},
        "barrier": {"system": "fast-blowup"},
        "datum": {"kind": "scaled-barrier", "scale": 1.0},
        "solver": {"delta": 1e-4, "t_end": 2.0, **BLOWUP_SOLVER},
        "expect": BLOWUP,
    },
    "T2.3": {
        "name": "fujita",
        "density": {"R": 1.0, "q": 3.0},
        "exponents": {"m": 3, "p": 2},
        "datum": {"kind": "bump", "center": 0.0, "width": 0.3, "height": 1e-2},
        "solver": {"delta": 1e-9, "t_end": 1000.0, "dt_max": 10.0, **BLOWUP_SOLVER},
        "expect": BLOWUP,
    },
    "T2.4": {
        "name": "critical-global",
        "density": {"R": 1.0, "q": 2.0},
        "exponents": {"m": 2, "p": 3},
        "barrier": {"system": "critical-global"},
        "datum": {"kind": "scaled-barrier", "scale": 0.5},
        "solver": {"delta": 0.01, "t_end": 5.0},
        "expect": GLOBAL,
    },
    "T2.5": {
        "name": "critical-blowup",
        "density": {"R": 1.0, "q": 2.0},
        "exponents": {"m": 2, "p": 3},
        "barrier": {"system": "critical-blowup"},
        "datum": {"kind": "scaled-barrier", "scale": 1.0},
        "solver": {"delta": 0.01, "t_end": 2.0, **BLOWUP_SOLVER},
        "expect": BLOWUP,
    },
    "T2.6": {
        "name": "slow-global",
        "density": {"R": 1.0, "q": 1.0},
        "exponents": {"m": 2, "p": 3},
        "barrier": {"system": "slow"},
        "datum": {"kind": "power-profile"},
        "solver": {"delta": 0.01, "t_end": 5.0},
        "expect": GLOBAL,
    },
}
THEOREMS = tuple(RECIPES)


def recipe_config(theorem: str, scale: str = "desk") -> tuple[CaseConfig, str]:
    if theorem not in RECIPES:
        raise ConfigInvalid(".theorem", f"expected one of {THEOREMS}")
    if scale != "desk":
        raise ConfigInvalid(".scale", "only the desk scale is defined")
    data = copy.deepcopy(RECIPES[theorem])
    expect = data.pop("expect")
    return parse_config(data), expect


def _grade(summary: dict, expect: str) -> list[dict]:
    claims = []
    status = summary.get("status")
    claims.append({"claim": f"outcome is {expect}", "passed": status == expect,
                   "observed": status})
    if expect == GLOBAL and status == GLOBAL:
        reached = abs(summary.get("t_end", 0.0) - summary["t_end_requested"]) <= 1e-9
        claims.append({"claim": "reached t_end", "passed": reached,
                       "observed": summary.get("t_end")})
    if expect == BLOWUP and status == BLOWUP:
        if "barrier" in summary:
            T = summary["barrier"]["T"]
            hi = summary["bracket"][1]
            claims.append({"claim": "blow-up bracket ends by 1.1 T", "passed": hi <= 1.1 * T,
                           "observed": hi, "bound": 1.1 * T})
        claims.append({"claim": "bracket starts after the local existence time",
                       "passed": bool(summary.get("no_false_blowup")),
                       "observed": summary["bracket"][0],
                       "bound": summary["local_existence_time"]})
    comp = summary.get("comparison")
    if comp is not None and comp.get("applicable"):
        claims.append({"claim": f"ordering against the {comp['orientation']}-barrier",
                       "passed": bool(comp["passed"]), "observed": comp["margin"],
                       "tol": comp["tol"]})
    bc = summary.get("barrier_check")
    if bc is not None:
        claims.append({"claim": "barrier residual sign and pasting", "passed": bc["passed"]})
    return claims


def reproduce_theorem(theorem: str, scale: str = "desk",
                      out_dir: str | Path | None = None) -> dict:
    """Run a theorem's desk-scale instance and grade its qualitative claim."""
    cfg, expect = recipe_config(theorem, scale)
    summary = run_case(cfg, out_dir=out_dir, write=out_dir is not None)
    summary["t_end_requested"] = float(cfg.solver.get("t_end", 5.0))
    claims = _grade(summary, expect)
    report = {"theorem": theorem, "scale": scale, "expected": expect, "claims": claims,
              "passed": all(c["passed"] for c in claims), "summary": summary}
    if theorem == "T2.5":
        report["notes"] = ["the log-profile sub-barrier grows without bound at the edge, "
                           "so the ordering on I_delta is not applicable"]
    if out_dir is not None:
        write_json(Path(out_dir) / "report.json", report)
    return report


# ---------------------------------------------------------------- sweeps

@dataclass
class PhaseTable:
    axes: dict
    cells: dict = field(default_factory=dict)

    def rows(self) -> list[dict]:
        out = []
        for m in self.axes["m"]:
            for p in self.axes["p"]:
                for q in self.axes["q"]:
                    out.append(self.cells[(m, p, q)])
        return out


def _sweep_cell(args) -> tuple[tuple, dict]:
    m, p, q, datum, solver, R = args
    key = (m, p, q)
    row = {"m": m, "p": p, "q": q, "outcome": NUMERICAL_FAILURE,
           "t_blowup_lo": "", "t_blowup_hi": ""}
    try:
        cfg = parse_config({"name": f"m{m}-p{p}-q{q}", "density": {"R": R, "q": q},
                            "exponents": {"m": m, "p": p}, "datum": datum,
                            "solver": solver})
        summary = run_case(cfg, write=False)
        row["outcome"] = summary["status"]
        if summary["status"] == BLOWUP:
            row["t_blowup_lo"], row["t_blowup_hi"] = (float(v) for v in summary["bracket"])
    except (PmeLabError, ValueError, ArithmeticError) as exc:
        row["error"] = str(exc)
    return key, row


def sweep(axes: dict, datum: dict | None = None, solver: dict | None = None,
          R: float = 1.0, workers: int = 1, csv_path: str | Path | None = None) -> PhaseTable:
    """Run one case per (m, p, q) triple; failures are recorded per cell."""
    for name in ("m", "p", "q"):
        if not axes.get(name):
            raise ConfigInvalid(f".axes.{name}", "axis must be nonempty")
    datum = datum or {"kind": "bump", "center": 0.0, "width": 0.3, "height": 1e-2}
    solver = solver or {"delta": 1e-9, "t_end": 200.0, "dt_max": 10.0, **BLOWUP_SOLVER}
    jobs = [(m, p, q, datum, solver, R) for m in axes["m"] for p in axes["p"]
            for q in axes["q"]]
    table = PhaseTable({k: list(axes[k]) for k in ("m", "p", "q")})
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_cell, jobs))
    else:
        results = [_sweep_cell(j) for j in jobs]
    for key, row in results:
        table.cells[key] = row
    if csv_path is not None:
        path = Path(csv_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["m", "p", "q", "outcome", "t_blowup_lo", "t_blowup_hi"])
            for row in table.rows():
                lo, hi = row["t_blowup_lo"], row["t_blowup_hi"]
                w.writerow([row["m"], row["p"], row["q"], row["outcome"],
                            repr(float(lo)) if lo != "" else "",
                            repr(float(hi)) if hi != "" else ""])
    return table
