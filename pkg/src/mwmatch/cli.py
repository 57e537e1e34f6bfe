"""Command-line interface: ``mwmatch solve|gen|bench|scaling``."""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from typing import Sequence

from . import bench as B
from .baselines import DenseCostMatrix, hungarian_eager, mcmf_dijkstra
from .certificate import check_certificate
from .graph import GraphError, GraphParseError, clean, read_graph, write_graph
from .kwok import SolveOptions, solve, solved_graph

EXIT_USAGE = 2


def default_seed() -> int:
    return int(os.environ.get("MWM_SEED", "0"))


def read_config(path: str) -> dict[str, str]:
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            s = line.split("#", 1)[0].strip()
            if not s:
                continue
            if "=" not in s:
                raise GraphParseError(lineno, f"expected key=value in {path}")
            k, v = s.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def _csv_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _bool(text: str) -> bool:
    return text.strip().lower() in ("1", "true", "yes", "on")


def _weight_bound(token: str, n_right: int) -> int:
    t = token.strip().upper()
    if t == "R":
        return n_right
    if t in ("R^2", "R2", "R**2"):
        return n_right * n_right
    return int(t)


def _int_range(text: str) -> list[int]:
    """``a:b:step`` (inclusive) or a comma list."""
    if ":" in text:
        a, b, step = (int(x) for x in text.split(":"))
        return list(range(a, b + 1, step))
    return [int(x) for x in _csv_list(text)]


def specs_from_config(cfg: dict[str, str]) -> list[B.InstanceSpec]:
    n_left = int(cfg["n_left"])
    seed = int(cfg["seed"]) if "seed" in cfg else default_seed()
    lo_tok, hi_tok = cfg.get("weights", "1:R").split(":")
    specs = []
    for ratio in (int(x) for x in _csv_list(cfg.get("ratios", "1"))):
        for rule_tok in _csv_list(cfg.get("rules", "c_lgR:0.5")):
            rule, param = rule_tok.split(":")
            n_right = n_left * ratio
            spec = B.InstanceSpec(
                n_left, ratio, rule.strip(), float(param),
                _weight_bound(lo_tok, n_right), _weight_bound(hi_tok, n_right), seed,
            )
            spec.validate()
            specs.append(spec)
    return specs


def cmd_solve(args) -> int:
    try:
        with open(args.file) as f:
            raw = read_graph(f)
    except GraphParseError as e:
        print(f"error: {args.file}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    g = clean(raw)
    opts = SolveOptions(greedy=not args.no_greedy, prune=not args.no_prune,
                        sorted_adjacency=args.sorted_adj)
    if args.algo == "kwok":
        res = solve(g, opts)
    elif args.algo == "hungarian":
        res = hungarian_eager(DenseCostMatrix.from_graph(g))
    else:
        res = mcmf_dijkstra(g)

    m = res.matching
    print(f"weight {m.total_weight}")
    rows = sorted((g.original_pair(l, r), w) for (l, r), w in
                  ((p, g.weight_of(*p)) for p in m.pairs))
    for (a, b), w in rows:
        print(f"{a} {b} {w}")
    if args.stats:
        for k, v in res.stats.as_dict().items():
            print(f"# {k} {v}")
    if args.certify:
        if args.algo == "kwok":
            cg, labels, matching = solved_graph(g, opts), res.labels, m
        elif args.algo == "hungarian":
            cg, labels, matching = g, res.labels, m
        else:
            # flow potentials are not matching duals: borrow a certified dual
            ref = solve(g, opts)
            cg, labels, matching = solved_graph(g, opts), ref.labels, ref.matching
        problems = check_certificate(cg, matching, labels.h_left, labels.h_right,
                                     cg.default_tolerance())
        if matching.total_weight != m.total_weight and cg.integer:
            problems.append(f"weight {m.total_weight} != certified optimum {matching.total_weight}")
        if problems:
            for p in problems:
                print(f"certificate FAILED: {p}", file=sys.stderr)
            return 1
        print("certificate OK")
    return 0


def cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    lo_tok, hi_tok = args.weights.split(":")
    n_right = args.n_left * args.ratio
    spec = B.InstanceSpec(args.n_left, args.ratio, args.rule, args.param,
                          _weight_bound(lo_tok, n_right), _weight_bound(hi_tok, n_right), seed)
    try:
        g = B.gen(spec)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.output == "-":
        write_graph(g, sys.stdout)
    else:
        with open(args.output, "w") as f:
            write_graph(g, f)
    return 0


def cmd_bench(args) -> int:
    cfg = read_config(args.config)
    specs = specs_from_config(cfg)
    algos = _csv_list(cfg.get("algorithms", "kwok,hungarian,hungarian_virtual,mcmf"))
    rounds = int(cfg.get("rounds", "10"))
    greedy = _bool(cfg.get("greedy", "true")) and not args.no_greedy
    rows: list[B.RoundResult] = []
    try:
        records = B.bench(specs, algos, rounds, greedy=greedy, rows=rows, parallel=args.parallel)
    except B.WeightMismatch as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    with open(args.output, "w", newline="") as f:
        B.write_csv(rows, f)
    if args.parallel:
        print("# timings from --parallel runs are not comparable with sequential runs")
    for rec in records:
        print(rec.summary())
    for rec in records:
        if rec.algorithm.startswith("kwok") and rec.spec.ratio == 1:
            for h in rec.h_adjustments:
                ratio = h / rec.spec.n_left
                if not B.H_BAND[0] <= ratio <= B.H_BAND[1]:
                    print(f"# flag: h_adjustments/L = {ratio:.3f} outside {B.H_BAND} ({rec.spec.label()})")
    return 0


def cmd_scaling(args) -> int:
    cfg = read_config(args.config)
    e_values = _int_range(cfg.get("e_values", "1000:20000:1000"))
    points = int(cfg.get("l_points", "6"))
    rounds = int(cfg.get("rounds", "10"))
    seed = int(cfg["seed"]) if "seed" in cfg else default_seed()
    result = B.scaling_study(e_values, lambda e: B.default_l_sweep(e, points), rounds,
                             seed, parallel=args.parallel)
    with open(args.output, "w", newline="") as f:
        B.write_scaling_csv(result, f)
    for e in sorted(result.maxima):
        p = result.maxima[e]
        print(f"E={e:>7}  argmax L={p.n_left:>6}  max mean visited edges={p.mean_edges_visited:.0f}")
    if result.exponent is None:
        print("exponent: insufficient points")
    else:
        print(f"exponent: {result.exponent:.3f}")
    print(f"h_adjustments/L within {B.H_BAND}: {100 * result.h_band_fraction():.1f}% of runs")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mwmatch", description="Maximum-weight bipartite matching tools")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve a graph file and print the matching")
    s.add_argument("file")
    s.add_argument("--algo", choices=("kwok", "hungarian", "mcmf"), default="kwok")
    s.add_argument("--no-greedy", action="store_true")
    s.add_argument("--no-prune", action="store_true")
    s.add_argument("--sorted-adj", action="store_true")
    s.add_argument("--stats", action="store_true")
    s.add_argument("--certify", action="store_true")
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("gen", help="write a random graph")
    g.add_argument("--n-left", type=int, required=True)
    g.add_argument("--ratio", type=int, default=1, help="R = ratio * L")
    g.add_argument("--rule", choices=B.RULES, default="fixed")
    g.add_argument("--param", type=float, required=True, help="c for c_lgR, k for frac, |E| for fixed")
    g.add_argument("--weights", default="1:R", help="lo:hi, tokens R and R^2 allowed")
    g.add_argument("--seed", type=int)
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="timing table from a config file")
    b.add_argument("config")
    b.add_argument("-o", "--output", required=True)
    b.add_argument("--no-greedy", action="store_true")
    b.add_argument("--parallel", action="store_true")
    b.set_defaults(func=cmd_bench)

    c = sub.add_parser("scaling", help="visited-edge scaling study from a config file")
    c.add_argument("config")
    c.add_argument("-o", "--output", required=True)
    c.add_argument("--parallel", action="store_true")
    c.set_defaults(func=cmd_scaling)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
