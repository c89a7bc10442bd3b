"""Command-line front end.

Single results are written as JSON, frontiers as CSV. Exit status is 0 on
success, 2 for invalid input and 3 when an instance exceeds the enumeration
budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bimodal import BimodalParams, classify_optimal, closed_form_2m, suboptimality_checks, thresholds
from .corners import corner_points, lattice_bound, lattice_set
from .errors import BudgetExceeded, DegenerateDenominator, ValidationError
from .evaluate import CostWeights, cost, eval_single
from .multitask import eval_replicated, heuristic_multi, separation_demo
from .pmf import load_pmf
from .policy import canonicalize, format_policy, parse_policy
from .search import exhaustive_search, frontier, heuristic_k
from .simulate import simulate_dynamic, simulate_static

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3

SUBCOMMANDS = ("eval", "frontier", "search", "lattice", "bimodal", "multitask", "separation", "simulate")

REQUIRED = {
    "eval": ("pmf", "policy"),
    "frontier": ("pmf",),
    "search": ("pmf",),
    "lattice": ("pmf",),
    "bimodal": ("a1", "a2", "p1"),
    "multitask": ("pmf",),
    "separation": ("a1", "a2", "p1"),
    "simulate": ("pmf", "policy"),
}


class CliError(ValidationError):
    pass


def num(x: float) -> float:
    """Round to 9 significant digits for output."""
    return float(f"{x:.9g}")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pmf", type=Path, help="JSON file with 'support' and 'probs'")
    common.add_argument("--policy", help="comma-separated start times, e.g. 0,2,7")
    common.add_argument("--lambda", dest="lam", type=float, default=0.5)
    common.add_argument("--machines", type=int, default=2)
    common.add_argument("--tasks", type=int, default=1)
    common.add_argument("--k", type=int, default=2)
    common.add_argument("--trials", type=int, default=100_000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--mode", choices=("exhaustive", "heuristic"), default="exhaustive")
    common.add_argument("--out", type=Path, help="output file (default: stdout)")
    common.add_argument("--a1", type=float)
    common.add_argument("--a2", type=float)
    common.add_argument("--p1", type=float)

    parser = argparse.ArgumentParser(prog="taskrep", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k != "out"}
    cfg["lambda"] = cfg.pop("lam")
    cfg["pmf"] = str(cfg["pmf"]) if cfg["pmf"] is not None else None
    return cfg


def _check_required(args) -> None:
    missing = [f"--{f}" for f in REQUIRED[args.subcommand] if getattr(args, f) is None]
    if missing:
        raise CliError(f"{args.subcommand}: missing required flag(s) {', '.join(missing)}")
    CostWeights(args.lam)
    for flag in ("machines", "tasks", "k", "trials"):
        if getattr(args, flag) < 1:
            raise CliError(f"--{flag} must be >= 1")


def _load(args):
    if not args.pmf.exists():
        raise CliError(f"pmf file not found: {args.pmf}")
    try:
        return load_pmf(args.pmf)
    except json.JSONDecodeError as exc:
        raise CliError(f"cannot parse {args.pmf}: {exc}") from exc


def _policy(args, pmf):
    return canonicalize(parse_policy(args.policy), pmf)


def _bimodal(args) -> BimodalParams:
    return BimodalParams(args.a1, args.a2, args.p1)


def cmd_eval(args):
    pmf = _load(args)
    v = _policy(args, pmf)
    e = eval_single(pmf, v)
    return {
        "policy": format_policy(v),
        "expected_T": num(e.expected_T),
        "expected_C": num(e.expected_C),
        "J": num(cost(e, args.lam)),
        "t_pmf": {"support": [num(a) for a in e.t_pmf.support], "probs": [num(p) for p in e.t_pmf.probs]},
    }


def cmd_frontier(args):
    return frontier(_load(args), args.machines).to_csv()


def cmd_search(args):
    pmf = _load(args)
    if args.mode == "exhaustive":
        v, _ = exhaustive_search(pmf, args.machines, args.lam)
    else:
        v = heuristic_k(pmf, args.machines, args.k, args.lam)
    e = eval_single(pmf, v)
    return {
        "mode": args.mode,
        "policy": format_policy(v),
        "expected_T": num(e.expected_T),
        "expected_C": num(e.expected_C),
        "J": num(cost(e, args.lam)),
    }


def cmd_lattice(args):
    pmf = _load(args)
    lat = lattice_set(pmf, args.machines)
    out = {
        "lattice": [num(x) for x in lat.values],
        "size": len(lat),
        "bound": lattice_bound(len(pmf), args.machines),
    }
    prefix = parse_policy(args.policy) if args.policy else ()
    out["corner_points"] = [num(x) for x in corner_points(prefix, pmf)]
    out["prefix"] = format_policy(prefix) if prefix else ""
    return out


def cmd_bimodal(args):
    b = _bimodal(args)
    subs = suboptimality_checks(b)
    try:
        th = thresholds(b)
        tau = {"tau1": num(th.tau1), "tau2": num(th.tau2), "tau3": num(th.tau3)}
    except DegenerateDenominator:
        tau = None
    cls = classify_optimal(b, args.lam)
    cands = []
    for v, (et, ec) in cls.metrics.items():
        cands.append({"policy": format_policy(v), "ET": num(et), "EC": num(ec), "J": num(cls.costs[v])})
    return {
        "flags": {"a": subs.sub_a, "b": subs.sub_b, "c": subs.sub_c},
        "region": cls.region,
        "thresholds": tau,
        "candidates": cands,
        "winner": format_policy(cls.policy),
        "threshold_prediction": format_policy(cls.predicted) if cls.predicted is not None else None,
        "threshold_agrees": cls.agrees_with_thresholds,
        "closed_form_check": {
            format_policy(v): [num(x) for x in closed_form_2m(b, v[1])] for v in cls.metrics
        },
    }


def cmd_multitask(args):
    pmf = _load(args)
    if args.policy:
        v = _policy(args, pmf)
        source = "given"
    else:
        v = heuristic_multi(pmf, args.machines, args.tasks, args.k, args.lam)
        source = "heuristic"
    e = eval_replicated(pmf, v, args.tasks)
    lam = args.lam
    return {
        "policy": format_policy(v),
        "policy_source": source,
        "tasks": args.tasks,
        "expected_T_max": num(e.expected_T_max),
        "expected_C": num(e.expected_C),
        "expected_C_total": num(e.expected_C_total),
        "J": num(lam * e.expected_T_max + (1 - lam) * e.expected_C),
    }


def cmd_separation(args):
    rep = separation_demo(_bimodal(args), args.lam)
    d = rep.to_dict()
    for key in ("pi_s", "pi_d"):
        d[key] = {k: num(x) for k, x in d[key].items()}
    d["J_s"], d["J_d"] = num(d["J_s"]), num(d["J_d"])
    return d


def cmd_simulate(args):
    pmf = _load(args)
    v = _policy(args, pmf)
    est = simulate_static(pmf, v, args.tasks, args.trials, args.seed)
    out = {"policy": format_policy(v), "static": _est(est)}
    if args.tasks == 1:
        out["dynamic"] = _est(simulate_dynamic(pmf, v, args.trials, args.seed))
    return out


def _est(est):
    d = est.to_dict()
    return {k: num(x) if isinstance(x, float) else x for k, x in d.items()}


HANDLERS = {
    "eval": cmd_eval,
    "frontier": cmd_frontier,
    "search": cmd_search,
    "lattice": cmd_lattice,
    "bimodal": cmd_bimodal,
    "multitask": cmd_multitask,
    "separation": cmd_separation,
    "simulate": cmd_simulate,
}


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def run(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INVALID
    try:
        _check_required(args)
        result = HANDLERS[args.subcommand](args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValidationError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    meta = {"tool": "taskrep", "version": __version__, "subcommand": args.subcommand, "config": _config(args)}
    if isinstance(result, str):
        _emit(result, args.out)
        if args.out is not None:
            # CSV keeps a bare header; provenance goes to a sidecar file
            Path(f"{args.out}.meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    else:
        meta.update(result)
        _emit(json.dumps(meta, indent=2) + "\n", args.out)
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
