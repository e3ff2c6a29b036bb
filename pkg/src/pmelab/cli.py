"""Command-line entry point: simulate, barrier-check, feasible, reproduce, sweep."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .density import DensitySpec, power_density
from .errors import (ConfigInvalid, EpsilonTooLarge, KBoundViolated, NewtonDivergence,
                     NoFeasiblePoint, PeqMUnsupported, PmeLabError)
from .experiments import (NUMERICAL_FAILURE, SYSTEMS, THEOREMS, _jsonable, barrier_check,
                          explicit_barrier, load_config, make_density, reproduce_theorem,
                          run_case, run_feasibility, sweep, write_json, write_residual_dump)
from .feasibility import ProblemExponents, barrier_from_report

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2, 3


def _print(data) -> None:
    print(json.dumps(_jsonable(data), indent=2, sort_keys=True))


def _cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    if args.t_end is not None:
        cfg.solver["t_end"] = args.t_end
    if args.nx is not None:
        cfg.solver["nx"] = args.nx
    if args.delta is not None:
        cfg.solver["delta"] = args.delta
    if args.snapshot_every is not None:
        cfg.outputs["snapshot_every"] = args.snapshot_every
    out = args.out or cfg.outputs.get("dir") or "out/" + cfg.name
    summary = run_case(cfg, out_dir=out)
    _print({k: summary.get(k) for k in ("name", "status", "bracket", "t_end", "comparison")
            if k in summary})
    if summary.get("status") == NUMERICAL_FAILURE:
        return EXIT_NUMERICAL
    if summary.get("status") == "Infeasible":
        return EXIT_FAIL
    return EXIT_PASS


def _exponents_and_density(args):
    if args.config:
        cfg = load_config(args.config)
        if cfg.barrier is None:
            raise ConfigInvalid(".barrier", "missing section")
        return cfg, ProblemExponents(cfg.exponents["m"], cfg.exponents["p"]), \
            make_density(cfg.density)
    if args.m is None or args.p is None or args.q is None or args.system is None:
        raise ConfigInvalid(".", "give --config or all of --system --m --p --q")
    density = power_density(args.R, args.q)
    if args.c1 is not None or args.c2 is not None:
        density = DensitySpec(R=args.R, q=args.q, c1=args.c1 or 1.0, c2=args.c2 or 1.0,
                              eps0=density.eps0)
    return None, ProblemExponents(args.m, args.p), density


def _barrier_section(args, cfg) -> tuple[dict, float]:
    if cfg is not None:
        return dict(cfg.barrier), float(cfg.solver.get("t_end", 5.0))
    section = {"system": args.system}
    if args.eps is not None:
        section["eps"] = args.eps
    if getattr(args, "case", None):
        section["case"] = args.case
    if getattr(args, "sign_mode", None):
        section["sign_mode"] = args.sign_mode
    return section, args.t_end


def _cmd_feasible(args) -> int:
    cfg, exps, density = _exponents_and_density(args)
    section, t_end = _barrier_section(args, cfg)
    try:
        report = run_feasibility(section, exps, density, t_end)
    except NoFeasiblePoint as exc:
        _print({"error": str(exc), "report": exc.report.to_dict()})
        return EXIT_FAIL
    except (KBoundViolated, EpsilonTooLarge, PeqMUnsupported) as exc:
        _print({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_FAIL
    body = report.to_dict()
    body["digest"] = report.digest()
    _print(body)
    if args.out:
        write_json(Path(args.out), body)
    return EXIT_PASS


def _cmd_barrier_check(args) -> int:
    cfg, exps, density = _exponents_and_density(args)
    section, t_end = _barrier_section(args, cfg)
    report = None
    if "regime" in section:
        spec = explicit_barrier(section, exps, density)
    else:
        try:
            report = run_feasibility(section, exps, density, t_end)
        except (NoFeasiblePoint, KBoundViolated, EpsilonTooLarge, PeqMUnsupported) as exc:
            _print({"error": type(exc).__name__, "message": str(exc)})
            return EXIT_FAIL
        spec = barrier_from_report(report, section.get("bracket_sign"))
    rows: list = [] if args.dump else None
    result = barrier_check(spec, density, t_end, grid=(args.nx, args.nt), dump=rows)
    if report is not None:
        result["feasibility_digest"] = report.digest()
    _print(result)
    if args.dump:
        write_residual_dump(Path(args.dump), rows)
    return EXIT_PASS if result["passed"] else EXIT_FAIL


def _cmd_reproduce(args) -> int:
    report = reproduce_theorem(args.theorem, args.scale, out_dir=args.out)
    _print({"theorem": report["theorem"], "passed": report["passed"],
            "claims": report["claims"], "notes": report.get("notes", [])})
    if report["summary"].get("status") == NUMERICAL_FAILURE:
        return EXIT_NUMERICAL
    return EXIT_PASS if report["passed"] else EXIT_FAIL


def _cmd_sweep(args) -> int:
    datum = {"kind": "bump", "center": 0.0, "width": args.width, "height": args.height}
    solver = {"delta": args.delta, "t_end": args.t_end, "dt_max": args.dt_max,
              "order": 2, "rel_change_tol": 0.02, "nx": args.nx}
    table = sweep({"m": args.m, "p": args.p, "q": args.q}, datum, solver,
                  workers=args.workers, csv_path=args.out)
    _print(table.rows())
    failed = any(r["outcome"] == NUMERICAL_FAILURE for r in table.rows())
    return EXIT_NUMERICAL if failed else EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pmelab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one case config")
    sim.add_argument("--config", required=True)
    sim.add_argument("--t-end", type=float)
    sim.add_argument("--nx", type=int)
    sim.add_argument("--delta", type=float)
    sim.add_argument("--snapshot-every", type=int)
    sim.add_argument("--out", help="output directory (default outputs.dir or out/<name>)")
    sim.set_defaults(func=_cmd_simulate)

    for name, func, help_ in (("feasible", _cmd_feasible, "construct barrier parameters"),
                              ("barrier-check", _cmd_barrier_check,
                               "verify the residual sign of a barrier")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config")
        p.add_argument("--system", choices=SYSTEMS)
        p.add_argument("--m", type=float)
        p.add_argument("--p", type=float)
        p.add_argument("--q", type=float)
        p.add_argument("--R", type=float, default=1.0)
        p.add_argument("--eps", type=float)
        p.add_argument("--c1", type=float, help="declared lower sandwich constant")
        p.add_argument("--c2", type=float, help="declared upper sandwich constant")
        p.add_argument("--t-end", type=float, default=5.0)
        if name == "barrier-check":
            p.add_argument("--nx", type=int, default=400)
            p.add_argument("--nt", type=int, default=100)
            p.add_argument("--dump", help="CSV file for x,t,residual,bracket samples")
        else:
            p.add_argument("--out", help="write the report JSON here")
            p.add_argument("--case", choices=("PgtM", "PltM", "PeqM"), help="fast blow-up case")
            p.add_argument("--sign-mode", choices=("corrected", "literal"),
                           help="slow-regime sign convention")
        p.set_defaults(func=func)

    rep = sub.add_parser("reproduce", help="run a theorem's desk-scale instance")
    rep.add_argument("--theorem", required=True, choices=THEOREMS)
    rep.add_argument("--scale", default="desk")
    rep.add_argument("--out")
    rep.set_defaults(func=_cmd_reproduce)

    sw = sub.add_parser("sweep", help="phase table over (m, p, q)")
    sw.add_argument("--m", type=float, nargs="+", required=True)
    sw.add_argument("--p", type=float, nargs="+", required=True)
    sw.add_argument("--q", type=float, nargs="+", required=True)
    sw.add_argument("--height", type=float, default=1e-2)
    sw.add_argument("--width", type=float, default=0.3)
    sw.add_argument("--delta", type=float, default=1e-9)
    sw.add_argument("--t-end", type=float, default=200.0)
    sw.add_argument("--dt-max", type=float, default=10.0)
    sw.add_argument("--nx", type=int, default=801)
    sw.add_argument("--workers", type=int, default=1)
    sw.add_argument("--out", default="sweep.csv")
    sw.set_defaults(func=_cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigInvalid as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NewtonDivergence as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except PmeLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
