"""Command-line interface.

Subcommands: `bound n` and `bound m` for single budgets, `census` for
JSON-lines batches, `lab` for the spectral-flow campaign, `tor` for
connected sums of Floer module shapes.  Exit codes: 0 success, 2 on
domain-guard rejection, 1 on internal error.  The environment variable
HYPERCOB_PRECISION_BITS overrides the working precision.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import floer
from .config import DEFAULT_PROFILE_NAME, default_config, load_config
from .flowlab import run_campaign
from .geometry import BudgetError, GeometryBudget
from .interval import Bound, BoundDomainError, apply_precision_env
from .pipeline import build_report, census_report, parse_census

__all__ = ["main"]


def _fraction_arg(raw: str) -> Fraction:
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {raw!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypercob",
        description="Homology-cobordism obstruction constants from hyperbolic geometry budgets")
    sub = parser.add_subparsers(dest="command", required=True)

    bound = sub.add_parser("bound", help="compute an obstruction constant for one budget")
    bound_sub = bound.add_subparsers(dest="which", required=True)

    def add_budget_flags(p):
        p.add_argument("--volume", type=_fraction_arg, required=True,
                       help="volume upper bound V")
        p.add_argument("--inj", type=_fraction_arg, required=True,
                       help="injectivity radius lower bound eps")
        p.add_argument("--lambda1", type=_fraction_arg, required=True,
                       help="coexact spectral gap lower bound delta")
        p.add_argument("--profile", default=DEFAULT_PROFILE_NAME,
                       help="Weyl constants profile name (default eps0.15)")
        p.add_argument("--config", help="JSON config file with extra profiles / f_bound")
        p.add_argument("--unchecked", action="store_true",
                       help="relax the V >= 0.94, eps <= 0.15, delta <= 1 conventions")
        p.add_argument("--diameter", type=_fraction_arg,
                       help="use this diameter upper bound instead of V/(pi sinh^2(eps/2))")

    bound_n = bound_sub.add_parser("n", help="Brieskorn exclusion constant")
    add_budget_flags(bound_n)

    bound_m = bound_sub.add_parser("m", help="Froyshov invariant bound")
    add_budget_flags(bound_m)
    bound_m.add_argument("--reducible-grading-bound", type=_fraction_arg, required=True,
                         help="bound on |gr_Q| of the reducible (from config or literature)")

    census = sub.add_parser("census", help="process a JSON-lines census file")
    census.add_argument("--input", required=True, help="JSON-lines file")
    census.add_argument("--profile", default=DEFAULT_PROFILE_NAME)
    census.add_argument("--config", help="JSON config file")
    census.add_argument("--f-bound", type=_fraction_arg,
                        help="reducible-grading bound, enables the m constant per record")

    lab = sub.add_parser("lab", help="run the finite-dimensional spectral-flow campaign")
    lab.add_argument("--trials", type=int, default=1000)
    lab.add_argument("--seed", type=int, default=0)
    lab.add_argument("--dim-min", type=int, default=8)
    lab.add_argument("--dim-max", type=int, default=100)
    lab.add_argument("--norm-max", type=float, default=5.0)
    lab.add_argument("--spectrum-range", type=float, default=12.0)
    lab.add_argument("--weight", choices=("both", "sobolev", "flat"), default="both")
    lab.add_argument("--eps-tilde", type=float, default=0.01,
                     help="target per-step relative perturbation size")
    lab.add_argument("--steps", type=int, help="force the containment step count")
    lab.add_argument("--workers", type=int, default=1)
    lab.add_argument("--output", help="write per-instance records here instead of stdout")

    tor = sub.add_parser("tor", help="connected sums of Floer module shapes")
    tor.add_argument("--input", required=True,
                     help='JSON file: {"modules": [{"tower_bottom": d, "torsion": [n, ...]}]}')

    return parser


def _load_profile(args):
    cfg = load_config(args.config) if getattr(args, "config", None) else default_config()
    return cfg, cfg.profile(args.profile)


def _budget_from_args(args) -> GeometryBudget:
    return GeometryBudget(volume=args.volume, inj_radius=args.inj, lambda1=args.lambda1,
                          unchecked=args.unchecked, diameter_override=args.diameter)


def _cmd_bound(args) -> int:
    cfg, profile = _load_profile(args)
    budget = _budget_from_args(args)
    f_bound = None
    if args.which == "m":
        f_bound = Bound.from_fraction(args.reducible_grading_bound)
    elif cfg.f_bound is not None:
        f_bound = Bound.from_fraction(cfg.f_bound)
    report = build_report(budget, profile, f_bound=f_bound)
    doc = report.to_json_dict()
    doc["profile"] = args.profile
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_census(args) -> int:
    cfg, profile = _load_profile(args)
    records, parse_issues = parse_census(args.input)
    f_bound = None
    raw_f = args.f_bound if args.f_bound is not None else cfg.f_bound
    if raw_f is not None:
        f_bound = Bound.from_fraction(Fraction(raw_f))
    reports, issues = census_report(records, profile, f_bound=f_bound)
    for issue in parse_issues:
        print(f"line {issue.line}: {issue.message}", file=sys.stderr)
    for issue in issues:
        print(f"record {issue.line}: {issue.message}", file=sys.stderr)
    doc = {
        "profile": args.profile,
        "records": [r.to_json_dict() for r in reports],
        "skipped": len(parse_issues) + len(issues),
    }
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_lab(args) -> int:
    weight_models = ("sobolev", "flat") if args.weight == "both" else (args.weight,)
    result = run_campaign(trials=args.trials, base_seed=args.seed,
                          dim_range=(args.dim_min, args.dim_max),
                          norm_max=args.norm_max, spectrum_range=args.spectrum_range,
                          eps_tilde_max=args.eps_tilde, steps=args.steps,
                          weight_models=weight_models, workers=args.workers)
    lines = [json.dumps(record) for record in result.records]
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write("\n".join(lines) + "\n")
            handle.write(json.dumps({"summary": result.summary}) + "\n")
    else:
        for line in lines:
            print(line)
    print(json.dumps({"summary": result.summary}))
    return 0


def _cmd_tor(args) -> int:
    with open(args.input, "r", encoding="utf-8") as handle:
        raw = json.load(handle, parse_float=Fraction)
    modules_raw = raw.get("modules")
    if not isinstance(modules_raw, list) or not modules_raw:
        raise ValueError('tor input must contain a nonempty "modules" list')
    modules = []
    for body in modules_raw:
        modules.append(floer.HMModule(
            tower_bottom=Fraction(body.get("tower_bottom", 0)),
            torsion=tuple(int(n) for n in body.get("torsion", ()))))
    total = modules[0]
    for m in modules[1:]:
        total = floer.connected_sum(total, m)
    t = floer.torsion_width(total)
    doc = {
        "summands": [
            {"tower_bottom": str(m.tower_bottom), "torsion": list(m.torsion),
             "torsion_width": floer.torsion_width(m)}
            for m in modules
        ],
        "connected_sum": {
            "tower_bottom": str(total.tower_bottom),
            "torsion": list(total.torsion),
            "torsion_width": t,
            "pin2_width_upper": floer.width_upper_from_torsion(t),
        },
    }
    print(json.dumps(doc, indent=2))
    return 0


_COMMANDS = {
    "bound": _cmd_bound,
    "census": _cmd_census,
    "lab": _cmd_lab,
    "tor": _cmd_tor,
}


def main(argv=None) -> int:
    apply_precision_env()
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (BudgetError, BoundDomainError, ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
