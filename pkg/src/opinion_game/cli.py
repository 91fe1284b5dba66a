"""Command-line front end: load or synthesize a topology, assign weights, run
one of the solvers, and emit CSV (stdout or --out); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from . import harness
from .dynamics import ConvergenceError, iter_phases
from .game import GameSolverError
from .model import BAD, GOOD, Budgets, InvestmentPlan, Network, load_edge_list, validate
from .centrality import compute_profile
from .strategy_dependent import (
    DependencyCoefficients,
    profile_utility,
    single_camp_optimal,
    two_camp_equilibrium,
)
from .strategy_fixed import bounded_greedy, evaluate_two_phase, farsighted_unbounded, myopic_loss

#: node count of the synthetic fallback graph used when --graph is omitted
SYNTHETIC_NODES = 300
SYNTHETIC_ATTACH = 2


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _emit(rows, header, out_path) -> None:
    stream = open(out_path, "w", newline="", encoding="utf-8") if out_path else sys.stdout
    try:
        writer = csv.writer(stream)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    finally:
        if out_path:
            stream.close()


def _load_topology(args):
    if args.graph:
        return load_edge_list(args.graph, symmetrize=args.symmetrize)
    print(
        f"no --graph given; using a synthetic preferential-attachment graph "
        f"(n={SYNTHETIC_NODES}, seed={args.seed})",
        file=sys.stderr,
    )
    return harness.ba_graph(SYNTHETIC_NODES, SYNTHETIC_ATTACH, seed=args.seed)


def _scheme(args) -> harness.WeightScheme:
    grid = tuple(args.w0_grid) if args.w0_grid else harness.DEFAULT_W0_GRID
    return harness.WeightScheme(camp_base=args.camp_base, w0_grid=grid)


def _network(args, mode: str) -> Network:
    """Topology plus generated weights at the first grid value; initial
    opinions are overridden by --v0."""
    scheme = _scheme(args)
    topology = _load_topology(args)
    net = harness.generate_weights(topology, scheme.w0_grid[0], scheme)
    if args.v0 != 0.0:
        net = Network.build(
            net.n, net.topology().edges,
            w0=net.w0, v0=args.v0, wg=net.wg, wb=net.wb, theta=net.theta,
        )
    problems = validate(net, mode)
    for violation in problems:
        print(f"invalid network: {violation}", file=sys.stderr)
    if problems:
        raise ValueError(f"{len(problems)} constraint violations")
    return net


def _cmd_centrality(args) -> None:
    net = _network(args, "fixed")
    prof = compute_profile(net, orders=max(2, args.orders))
    header = ["node", "r", "s"] + [f"r{q}" for q in range(3, max(2, args.orders) + 1)]
    rows = []
    for i in range(net.n):
        row = [i, float(prof.r[i]), float(prof.s[i])]
        row += [float(vec[i]) for vec in prof.higher]
        rows.append(row)
    _emit(rows, header, args.out)


def _cmd_steady_state(args) -> None:
    mode = args.mode or "fixed"
    net = _network(args, mode)
    zero = np.zeros(net.n)
    states = list(iter_phases(net, [(zero, zero), (zero, zero)], mode))
    sums = ", ".join(f"{float(state.v.sum()):.12g}" for state in states)
    print(f"phase opinion sums: {sums}", file=sys.stderr)
    rows = [[i, float(states[0].v[i]), float(states[1].v[i])] for i in range(net.n)]
    _emit(rows, ["node", "v1", "v2"], args.out)


def _cmd_strategy_fixed(args) -> None:
    net = _network(args, "fixed")
    prof = compute_profile(net)
    plans = {}
    for camp, budget in ((GOOD, args.kg), (BAD, args.kb)):
        if args.bounded:
            plans[camp] = bounded_greedy(net, budget, camp, cap=args.cap, profile=prof)
        else:
            pure = farsighted_unbounded(net, budget, camp, profile=prof)
            x1 = np.zeros(net.n)
            x2 = np.zeros(net.n)
            if pure.node is not None:
                (x1 if pure.phase == 1 else x2)[pure.node] = pure.amount
            plans[camp] = InvestmentPlan(camp, x1, x2)
    objective = evaluate_two_phase(
        net, plans[GOOD].x1, plans[GOOD].x2, plans[BAD].x1, plans[BAD].x2, profile=prof
    )
    rows = []
    for camp in (GOOD, BAD):
        plan = plans[camp]
        k1, k2 = float(plan.x1.sum()), float(plan.x2.sum())
        slots = [
            (phase, int(node), float(vec[node]))
            for phase, vec in ((1, plan.x1), (2, plan.x2))
            for node in np.nonzero(vec)[0]
        ]
        if not slots:
            rows.append([camp, None, None, 0.0, k1, k2, objective])
        for phase, node, amount in slots:
            rows.append([camp, node, phase, amount, k1, k2, objective])
    print(f"myopic loss (bad camp, kb={args.kb:g}): {myopic_loss(net, args.kb, prof):.12g}",
          file=sys.stderr)
    _emit(rows, ["camp", "node", "phase", "amount", "k1", "k2", "objective"], args.out)


def _cmd_strategy_dep(args) -> None:
    mode = args.mode or "dependency2"
    net = _network(args, "dependency")
    if mode == "dependency1":
        profile, value = single_camp_optimal(net, args.kg)
        rows = [[profile.alpha, profile.beta, profile.k1, profile.k2, value]]
        _emit(rows, ["alpha", "beta", "kg1", "kg2", "value"], args.out)
        return
    coef = DependencyCoefficients(net)
    solution = two_camp_equilibrium(
        net, args.kg, args.kb, max_nodes=args.max_nodes, coefficients=coef
    )
    rows = []
    for i, p in enumerate(solution.row_mix):
        if p <= 1e-9:
            continue
        for j, q in enumerate(solution.col_mix):
            if q <= 1e-9:
                continue
            good = solution.profiles[i]
            bad = solution.profiles[j]
            _, kg1, kb1 = profile_utility(net, good, bad, args.kg, args.kb, coefficients=coef)
            rows.append([
                solution.value,
                good[0] if good else None, good[1] if good else None, float(p),
                bad[0] if bad else None, bad[1] if bad else None, float(q),
                kg1, args.kg - kg1, kb1, args.kb - kb1,
            ])
    header = ["value", "g_alpha", "g_beta", "g_prob",
              "b_gamma", "b_delta", "b_prob", "kg1", "kg2", "kb1", "kb2"]
    _emit(rows, header, args.out)


def _cmd_sweep(args) -> None:
    mode = args.mode or "bounded"
    scheme = _scheme(args)
    topology = _load_topology(args)
    rows = harness.sweep_w0(
        topology, scheme, mode, Budgets(args.kg, args.kb),
        bounded_cap=args.cap, max_nodes=args.max_nodes,
    )
    table = [[row[col] for col in harness.SWEEP_COLUMNS] for row in rows]
    _emit(table, list(harness.SWEEP_COLUMNS), args.out)


def _parse_grid(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad w0 grid {text!r}; expected comma-separated floats")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opinion-game",
        description="Two-phase opinion-investment games on social networks",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="edge-list file ('src dst [weight]'); synthetic graph if omitted")
    common.add_argument("--symmetrize", action="store_true", help="duplicate each edge in both directions")
    common.add_argument("--kg", type=float, default=100.0, help="good camp budget")
    common.add_argument("--kb", type=float, default=100.0, help="bad camp budget")
    common.add_argument("--camp-base", type=float, default=0.1, dest="camp_base",
                        help="per-camp reference weight at w0=0")
    common.add_argument("--w0-grid", type=_parse_grid, default=None, dest="w0_grid",
                        help="comma-separated bias weights; non-sweep commands use the first value")
    common.add_argument("--v0", type=float, default=0.0, help="constant initial opinion override")
    common.add_argument("--cap", type=float, default=1.0, help="per-node per-phase investment cap")
    common.add_argument("--out", help="CSV output path (stdout if omitted)")
    common.add_argument("--seed", type=int, default=0, help="seed for synthetic graph generation")
    common.add_argument("--max-nodes", type=int, default=40, dest="max_nodes",
                        help="refusal guard for the two-camp dependency game")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("centrality", parents=[common], help="emit per-node influence vectors")
    p.add_argument("--orders", type=int, default=2, help="highest look-ahead order to emit")
    p.set_defaults(func=_cmd_centrality)

    p = sub.add_parser("steady-state", parents=[common], help="two investment-free phases")
    p.add_argument("--mode", choices=["fixed", "dependency"], default="fixed")
    p.set_defaults(func=_cmd_steady_state)

    p = sub.add_parser("strategy-fixed", parents=[common], help="fixed-weight camp strategies")
    p.add_argument("--bounded", action="store_true", help="apply the per-node cap")
    p.set_defaults(func=_cmd_strategy_fixed)

    p = sub.add_parser("strategy-dep", parents=[common], help="bias-dependency strategies")
    p.add_argument("--mode", choices=["dependency1", "dependency2"], default="dependency2")
    p.set_defaults(func=_cmd_strategy_dep)

    p = sub.add_parser("sweep", parents=[common], help="sweep the bias weight grid")
    p.add_argument("--mode", choices=list(harness.SWEEP_MODES), default="bounded")
    p.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ValueError, OSError, ConvergenceError, GameSolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
