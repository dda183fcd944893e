"""Command-line interface.

Subcommands: stats | expect {subgraph,induced,trees,clique,factor} |
prob {subgraph,induced,tree} | oracle {enumerate,expect,prob,mcmc} |
martingale verify | moments verify | trees {count,average,moments} |
compare.

Output formats: human text (default), JSON (--format json) with stable
keys, CSV (--format csv) for grid sweeps.  Every report records the
seed; identical invocations produce byte-identical JSON.  Exit codes:
0 success, 1 I/O or parse failure, 2 precondition or validation
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import asymptotic, oracle, trees, validate
from .graphs import (ParseError, check_assumptions, compute_stats,
                     is_graphical, read_degree_file, read_graph_file)
from .oracle import BudgetExceededError

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2


def _fraction_fields(x: Fraction) -> dict:
    return {"rational": f"{x.numerator}/{x.denominator}", "value": float(x)}


def _flatten(prefix: str, obj, out: dict) -> None:
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out[prefix] = obj


def emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
        return
    flat: dict = {}
    _flatten("", payload, flat)
    if fmt == "csv":
        keys = list(flat)
        print(",".join(keys))
        print(",".join(str(flat[k]) for k in keys))
        return
    width = max((len(k) for k in flat), default=0)
    for k, v in flat.items():
        print(f"{k.ljust(width)}  {v}")


def _payload(args, result: dict) -> dict:
    return {
        "command": args.command_path,
        "seed": getattr(args, "seed", 0),
        "inputs": {k: v for k, v in sorted(vars(args).items())
                   if k not in ("func", "command_path", "format")
                   and v is not None},
        "result": result,
    }


def _load_degrees(args):
    return read_degree_file(args.degrees)


def _load_pattern(args, attr: str = "pattern"):
    return read_graph_file(getattr(args, attr))


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------

def cmd_stats(args) -> dict:
    d = _load_degrees(args)
    stats = compute_stats(d)
    report = check_assumptions(d, a=args.a, eps=args.eps)
    return {
        "n": stats.n,
        "mean_degree": stats.mean_degree,
        "density": stats.density,
        "spread": stats.spread,
        "max_dev": stats.max_dev,
        "regular": stats.is_regular,
        "graphical": is_graphical(d),
        "assumptions": {
            "deviation_ratio": report.deviation_ratio,
            "deviation_ok": report.deviation_ok,
            "degree_ratio": report.degree_ratio,
            "degree_ok": report.degree_ok,
        },
    }


def cmd_expect(args) -> dict:
    d = _load_degrees(args)
    if args.target == "subgraph":
        pattern = _load_pattern(args)
        if args.simplified:
            rep = asymptotic.expected_subgraph_count_simplified(d, pattern, b=args.b)
        else:
            rep = asymptotic.expected_subgraph_count(d, pattern, b=args.b)
    elif args.target == "induced":
        pattern = _load_pattern(args)
        if args.simplified:
            rep = asymptotic.expected_induced_simplified(d, pattern, b=args.b)
        else:
            rep = asymptotic.expected_induced_count(d, pattern, b=args.b)
    elif args.target == "trees":
        rep = asymptotic.expected_spanning_trees(d, b=args.b)
    elif args.target == "clique":
        rep = asymptotic.expected_clique_count(d, args.order,
                                               independent=args.independent,
                                               b=args.b)
    elif args.target == "factor":
        if args.pattern is not None:
            pattern = _load_pattern(args)
            h = args.factor_degree
            if h is None:
                degs = pattern.degree_sequence
                h = degs[0] if degs else 0
            rep = asymptotic.expected_regular_factor(d, pattern, h, b=args.b)
        else:
            if args.factor_degree is None:
                raise ValueError("factor needs --factor-degree or --pattern")
            rep = asymptotic.expected_total_regular_factors(
                d, args.factor_degree, b=args.b)
    else:
        raise ValueError(f"unknown expect target {args.target!r}")
    return rep.to_dict()


def cmd_prob(args) -> dict:
    d = _load_degrees(args)
    pattern = _load_pattern(args)
    if args.target == "subgraph":
        rep = asymptotic.subgraph_probability(d, pattern, b=args.b)
    elif args.target == "induced":
        rep = asymptotic.induced_probability(d, pattern, b=args.b)
    elif args.target == "tree":
        rep = asymptotic.tree_probability(d, pattern,
                                          trunc_exponent=args.trunc_exponent,
                                          b=args.b)
    else:
        raise ValueError(f"unknown prob target {args.target!r}")
    return rep.to_dict()


def cmd_oracle(args) -> dict:
    d = _load_degrees(args)
    if args.target == "enumerate":
        count = 0
        sample = []
        for edges in oracle.enumerate_realizations(d, budget=args.budget):
            count += 1
            if not args.count_only and count <= args.max_list:
                sample.append([[u + 1, v + 1] for u, v in edges])
        out = {"realizations": count}
        if not args.count_only:
            out["listed"] = sample
        return out
    if args.target == "expect":
        if args.kind == "trees":
            res = oracle.exact_expected_spanning_trees(d, budget=args.budget)
        else:
            pattern = _load_pattern(args)
            if args.method == "dp":
                res = oracle.expected_copies_exact(d, pattern,
                                                   induced=args.induced)
            else:
                res = oracle.exact_expected_copies(d, pattern,
                                                   induced=args.induced,
                                                   budget=args.budget)
        return {"realizations": res.realization_count,
                "expectation": _fraction_fields(res.expectation)}
    if args.target == "prob":
        pattern = _load_pattern(args)
        res = oracle.exact_pattern_probability(d, pattern,
                                               induced=args.induced,
                                               method=args.method,
                                               budget=args.budget)
        return {"realizations": res.realization_count,
                "probability": _fraction_fields(res.expectation)}
    if args.target == "mcmc":
        pattern = _load_pattern(args)
        est = oracle.mc_expected_copies(d, pattern, induced=args.induced,
                                        samples=args.samples,
                                        steps=args.steps, seed=args.seed)
        return {"estimate": est.estimate, "stderr": est.stderr,
                "samples": est.samples, "steps": args.steps}
    raise ValueError(f"unknown oracle target {args.target!r}")


def cmd_martingale_verify(args) -> dict:
    sound = validate.martingale_soundness_suite(trials=args.trials,
                                                seed=args.seed)
    incr = validate.increment_inequality_suite(trials=max(10, args.trials // 4),
                                               seed=args.seed)
    return {"soundness": sound.to_dict(), "increments": incr.to_dict()}


def cmd_moments_verify(args) -> dict:
    ident = validate.moment_identity_suite(trials=args.trials, seed=args.seed)
    rem = validate.psi_remainder_suite(trials=max(20, args.trials // 2),
                                       seed=args.seed)
    return {"identities": ident.to_dict(), "remainder": rem.to_dict()}


def cmd_trees(args) -> dict:
    if args.target == "count":
        x = _load_degrees(args)
        return {"trees": trees.count_trees_with_degrees(tuple(x))}
    if args.target == "average":
        x = _load_degrees(args)
        phi = [float(tok) for tok in args.phi.split(",")]
        avg = trees.tree_edge_average(tuple(x), phi)
        centre, k_bound = trees.tree_exp_average_bound(tuple(x), phi)
        return {"edge_average": float(avg), "exp_center": centre,
                "exp_k_bound": k_bound}
    if args.target == "moments":
        rep = trees.tree_degree_moments(args.n, trunc_exponent=args.trunc_exponent)
        return {
            "n": rep.n,
            "truncation": rep.truncation,
            "mean": float(rep.mean),
            "mean_square": float(rep.mean_square),
            "variance": float(rep.variance),
            "variance_square": float(rep.variance_square),
            "cov_11": float(rep.cov[(1, 1)]),
            "deviations": rep.deviations(),
        }
    raise ValueError(f"unknown trees target {args.target!r}")


def cmd_compare(args) -> dict:
    d = _load_degrees(args)
    if args.kind == "trees":
        row = validate.compare_spanning_trees(d, method=args.method,
                                              budget=args.budget)
    elif args.kind == "induced":
        pattern = _load_pattern(args)
        if args.method == "mcmc":
            row = validate.compare_mcmc(d, pattern, induced=True,
                                        samples=args.samples,
                                        steps=args.steps, seed=args.seed)
        else:
            row = validate.compare_induced(d, pattern, method=args.method,
                                           budget=args.budget)
    elif args.kind == "subgraph":
        pattern = _load_pattern(args)
        if args.method == "mcmc":
            row = validate.compare_mcmc(d, pattern, induced=False,
                                        samples=args.samples,
                                        steps=args.steps, seed=args.seed)
        else:
            row = validate.compare_subgraph(d, pattern, method=args.method,
                                            budget=args.budget)
    elif args.kind == "factor":
        pattern = _load_pattern(args)
        row = validate.compare_subgraph(d, pattern, method=args.method,
                                        budget=args.budget, formula="factor",
                                        factor_degree=args.factor_degree)
    else:
        raise ValueError(f"unknown compare kind {args.kind!r}")
    return row.to_dict()


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json", "csv"),
                   default="text", help="output format")
    p.add_argument("--seed", type=int, default=0, help="random seed")


def _add_b(p: argparse.ArgumentParser) -> None:
    p.add_argument("--b", type=float, default=asymptotic.DEFAULT_ERROR_EXPONENT,
                   help="error-envelope exponent for diagnostics")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="degcount",
        description="Pattern-count analytics for fixed-degree random graphs")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="degree-sequence statistics")
    p.add_argument("--degrees", required=True)
    p.add_argument("--a", type=float, default=0.25)
    p.add_argument("--eps", type=float, default=0.05)
    _add_common(p)
    p.set_defaults(func=cmd_stats, command_path="stats")

    p = sub.add_parser("expect", help="asymptotic expected counts")
    p.add_argument("target",
                   choices=("subgraph", "induced", "trees", "clique", "factor"))
    p.add_argument("--degrees", required=True)
    p.add_argument("--pattern")
    p.add_argument("--order", type=int, default=3, help="clique order r")
    p.add_argument("--independent", action="store_true")
    p.add_argument("--factor-degree", type=int, default=None)
    p.add_argument("--simplified", action="store_true")
    _add_b(p)
    _add_common(p)
    p.set_defaults(func=cmd_expect, command_path="expect")

    p = sub.add_parser("prob", help="fixed-placement presence probabilities")
    p.add_argument("target", choices=("subgraph", "induced", "tree"))
    p.add_argument("--degrees", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--trunc-exponent", type=float, default=0.15)
    _add_b(p)
    _add_common(p)
    p.set_defaults(func=cmd_prob, command_path="prob")

    p = sub.add_parser("oracle", help="exact and Monte Carlo ground truth")
    p.add_argument("target", choices=("enumerate", "expect", "prob", "mcmc"))
    p.add_argument("--degrees", required=True)
    p.add_argument("--pattern")
    p.add_argument("--induced", action="store_true")
    p.add_argument("--kind", choices=("copies", "trees"), default="copies")
    p.add_argument("--method", choices=("enumerate", "dp"), default="enumerate")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--max-list", type=int, default=20)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--steps", type=int, default=20000)
    _add_common(p)
    p.set_defaults(func=cmd_oracle, command_path="oracle")

    p = sub.add_parser("martingale", help="certificate machinery")
    p.add_argument("target", choices=("verify",))
    p.add_argument("--trials", type=int, default=200)
    _add_common(p)
    p.set_defaults(func=cmd_martingale_verify, command_path="martingale verify")

    p = sub.add_parser("moments", help="moment identities")
    p.add_argument("target", choices=("verify",))
    p.add_argument("--trials", type=int, default=100)
    _add_common(p)
    p.set_defaults(func=cmd_moments_verify, command_path="moments verify")

    p = sub.add_parser("trees", help="labelled-tree utilities")
    p.add_argument("target", choices=("count", "average", "moments"))
    p.add_argument("--degrees", help="tree degree sequence file")
    p.add_argument("--phi", help="comma-separated vertex weights")
    p.add_argument("--n", type=int, help="vertex count for moment report")
    p.add_argument("--trunc-exponent", type=float, default=1.0)
    _add_common(p)
    p.set_defaults(func=cmd_trees, command_path="trees")

    p = sub.add_parser("compare", help="formula vs oracle / Monte Carlo")
    p.add_argument("--kind", required=True,
                   choices=("subgraph", "induced", "trees", "factor"))
    p.add_argument("--degrees", required=True)
    p.add_argument("--pattern")
    p.add_argument("--factor-degree", type=int, default=None)
    p.add_argument("--method", choices=("auto", "enumerate", "dp", "mcmc"),
                   default="auto")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--steps", type=int, default=20000)
    _add_common(p)
    p.set_defaults(func=cmd_compare, command_path="compare")

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        result = args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    payload = _payload(args, result)
    emit(payload, args.format)
    if args.command_path in ("martingale verify", "moments verify"):
        for section in result.values():
            if not section.get("ok", True):
                return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
