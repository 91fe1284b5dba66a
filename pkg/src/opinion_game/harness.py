"""Experiment pipeline: weight assignment over a topology, bias-weight sweeps,
and a seeded synthetic graph generator for desk-scale runs.

Weights follow a one-knob scheme: at the reference bias weight w0 = 0 every
node grants each camp ``camp_base`` and spreads the remaining 1 - 2*camp_base
uniformly over its out-edges; for a general w0 all of those values scale by
(1 - w0), so each node's weights always sum to exactly 1. The camp total
theta used by the dependency setting stays at the unscaled reference value
2 * camp_base across the whole sweep.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .centrality import compute_profile
from .model import BAD, GOOD, Budgets, Network, Topology
from .strategy_dependent import (
    DependencyCoefficients,
    profile_utility,
    single_camp_optimal,
    two_camp_equilibrium,
)
from .strategy_fixed import bounded_greedy, evaluate_two_phase, myopic_loss

DEFAULT_W0_GRID = tuple(i * 0.05 for i in range(20))

SWEEP_MODES = ("bounded", "dependency1", "dependency2")

#: column order of sweep rows; myopic_loss is None outside the bounded mode
SWEEP_COLUMNS = ("w0", "k1_good", "k2_good", "k1_bad", "k2_bad", "objective", "myopic_loss")


@dataclass(frozen=True)
class WeightScheme:
    """Reference camp weight and the grid of bias weights to sweep."""

    camp_base: float = 0.1
    w0_grid: tuple[float, ...] = DEFAULT_W0_GRID

    def __post_init__(self):
        if not 0.0 < self.camp_base or not 2.0 * self.camp_base < 1.0:
            raise ValueError(f"camp_base must satisfy 0 < 2*camp_base < 1, got {self.camp_base}")
        if len(self.w0_grid) == 0:
            raise ValueError("w0_grid must be non-empty")
        for g in self.w0_grid:
            if not 0.0 <= g < 1.0:
                raise ValueError(f"w0 grid values must lie in [0, 1), got {g}")


def generate_weights(topology: Topology, w0: float, scheme: WeightScheme | None = None) -> Network:
    """Assign weights to a topology for one bias-weight value.

    Initial opinions are zero. Isolated nodes simply have no edge weights;
    their camp and bias weights are still assigned.
    """
    scheme = scheme if scheme is not None else WeightScheme()
    if not 0.0 <= w0 < 1.0:
        raise ValueError(f"w0 must lie in [0, 1), got {w0}")
    scale = 1.0 - w0
    cg = scheme.camp_base
    deg = topology.out_degrees()
    edges = [
        (i, j, (1.0 - 2.0 * cg) * scale / deg[i])
        for i, j, _ in topology.edges
    ]
    return Network.build(
        topology.n,
        edges,
        w0=w0,
        v0=0.0,
        wg=cg * scale,
        wb=cg * scale,
        theta=2.0 * cg,
    )


def ba_graph(n: int, attach: int = 2, seed: int = 0) -> Topology:
    """Seeded preferential-attachment topology with arcs in both directions.

    Each new node links to ``attach`` distinct existing nodes drawn in
    proportion to degree. Edge weights are placeholders until
    :func:`generate_weights` assigns them.
    """
    if attach < 1 or n <= attach:
        raise ValueError(f"need n > attach >= 1, got n={n}, attach={attach}")
    rng = random.Random(seed)
    undirected: list[tuple[int, int]] = []
    repeated: list[int] = []
    targets = list(range(attach))
    for v in range(attach, n):
        for t in targets:
            undirected.append((v, t))
        repeated.extend(targets)
        repeated.extend([v] * attach)
        chosen: set[int] = set()
        while len(chosen) < attach:
            chosen.add(rng.choice(repeated))
        targets = sorted(chosen)
    edges = [(i, j, 0.0) for i, j in undirected] + [(j, i, 0.0) for i, j in undirected]
    return Topology(n=n, edges=tuple(edges))


def _expected_splits(net, solution, kg, kb, coefficients, cutoff=1e-12):
    """Mixed-strategy expectation of the phase-1 budgets over support pairs."""
    eg1 = eb1 = 0.0
    for i, p in enumerate(solution.row_mix):
        if p <= cutoff:
            continue
        for j, q in enumerate(solution.col_mix):
            if q <= cutoff:
                continue
            _, a, b = profile_utility(
                net, solution.profiles[i], solution.profiles[j], kg, kb,
                coefficients=coefficients,
            )
            eg1 += p * q * a
            eb1 += p * q * b
    return eg1, eb1


def sweep_point(
    topology: Topology,
    w0: float,
    scheme: WeightScheme | None = None,
    mode: str = "bounded",
    budgets: Budgets | None = None,
    *,
    bounded_cap: float = 1.0,
    max_nodes: int = 40,
) -> dict:
    """One sweep row: generate weights at w0, run the mode's optimizer, and
    report the phase budgets and objective (columns in SWEEP_COLUMNS)."""
    if mode not in SWEEP_MODES:
        raise ValueError(f"mode must be one of {SWEEP_MODES}, got {mode!r}")
    budgets = budgets if budgets is not None else Budgets(100.0, 100.0)
    net = generate_weights(topology, w0, scheme)
    if mode == "bounded":
        prof = compute_profile(net)
        good = bounded_greedy(net, budgets.kg, GOOD, cap=bounded_cap, profile=prof)
        bad = bounded_greedy(net, budgets.kb, BAD, cap=bounded_cap, profile=prof)
        objective = evaluate_two_phase(net, good.x1, good.x2, bad.x1, bad.x2, profile=prof)
        return {
            "w0": w0,
            "k1_good": float(good.x1.sum()),
            "k2_good": float(good.x2.sum()),
            "k1_bad": float(bad.x1.sum()),
            "k2_bad": float(bad.x2.sum()),
            "objective": objective,
            "myopic_loss": myopic_loss(net, budgets.kb, profile=prof),
        }
    if mode == "dependency1":
        profile, value = single_camp_optimal(net, budgets.kg)
        return {
            "w0": w0,
            "k1_good": profile.k1,
            "k2_good": profile.k2,
            "k1_bad": 0.0,
            "k2_bad": 0.0,
            "objective": value,
            "myopic_loss": None,
        }
    coef = DependencyCoefficients(net)
    solution = two_camp_equilibrium(
        net, budgets.kg, budgets.kb, max_nodes=max_nodes, coefficients=coef
    )
    eg1, eb1 = _expected_splits(net, solution, budgets.kg, budgets.kb, coef)
    return {
        "w0": w0,
        "k1_good": eg1,
        "k2_good": budgets.kg - eg1,
        "k1_bad": eb1,
        "k2_bad": budgets.kb - eb1,
        "objective": solution.value,
        "myopic_loss": None,
    }


def sweep_w0(
    topology: Topology,
    scheme: WeightScheme | None = None,
    mode: str = "bounded",
    budgets: Budgets | None = None,
    *,
    bounded_cap: float = 1.0,
    max_nodes: int = 40,
) -> list[dict]:
    """Run :func:`sweep_point` for every grid value; one row per w0."""
    scheme = scheme if scheme is not None else WeightScheme()
    return [
        sweep_point(
            topology, w0, scheme, mode, budgets,
            bounded_cap=bounded_cap, max_nodes=max_nodes,
        )
        for w0 in scheme.w0_grid
    ]
