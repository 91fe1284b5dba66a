"""Camp strategies when the camp influence weights are fixed per node.

With fixed weights the two camps' objectives decouple, so each camp can rank
the 2n (node, phase) slots by their per-unit worth: s_i * w_i for a phase-1
slot (the investment must survive into the final phase) and r_i * w_i for a
phase-2 slot. The unbounded optimum sits on a single slot; under a per-node
cap the optimum greedily fills slots in worth order.

Ties are broken deterministically: phase 2 first, then the lowest node id.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .centrality import CentralityProfile, compute_profile
from .model import BAD, GOOD, InvestmentPlan, Network


@dataclass(frozen=True)
class PureInvestment:
    """Entire-budget investment on one node in one phase; node None means
    the camp does not invest at all (amount is then 0)."""

    node: int | None
    phase: int | None
    amount: float


@dataclass(frozen=True)
class ScoredSlot:
    node: int
    phase: int
    coefficient: float


def _camp_weights(net: Network, camp: str) -> np.ndarray:
    if camp == GOOD:
        return net.wg
    if camp == BAD:
        return net.wb
    raise ValueError(f"camp must be {GOOD!r} or {BAD!r}, got {camp!r}")


def _profile(net: Network, profile: CentralityProfile | None) -> CentralityProfile:
    return profile if profile is not None else compute_profile(net)


def scored_slots(net: Network, camp: str, profile: CentralityProfile | None = None) -> list[ScoredSlot]:
    """All 2n investment slots of a camp with their per-unit objective worth."""
    prof = _profile(net, profile)
    w = _camp_weights(net, camp)
    slots = [ScoredSlot(i, 1, float(prof.s[i] * w[i])) for i in range(net.n)]
    slots += [ScoredSlot(i, 2, float(prof.r[i] * w[i])) for i in range(net.n)]
    return slots


def farsighted_unbounded(
    net: Network, budget: float, camp: str, profile: CentralityProfile | None = None
) -> PureInvestment:
    """Optimal single-slot strategy with no per-node bound.

    The entire budget goes on the slot with the largest worth if that worth
    is positive; otherwise the camp stays out. Phase 1 wins only when the
    best phase-1 worth strictly beats every phase-2 worth.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    prof = _profile(net, profile)
    w = _camp_weights(net, camp)
    first = prof.s * w
    second = prof.r * w
    i1 = int(np.argmax(first))
    i2 = int(np.argmax(second))
    if budget == 0 or max(first[i1], second[i2]) <= 0:
        return PureInvestment(None, None, 0.0)
    if first[i1] > second[i2]:
        return PureInvestment(i1, 1, float(budget))
    return PureInvestment(i2, 2, float(budget))


def myopic_strategy(
    net: Network, budget: float, camp: str, profile: CentralityProfile | None = None
) -> PureInvestment:
    """Greedy strategy that only looks at the current phase: entire budget on
    the node with the largest r_i * w_i, spent in phase 1."""
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    prof = _profile(net, profile)
    w = _camp_weights(net, camp)
    worth = prof.r * w
    i = int(np.argmax(worth))
    if budget == 0 or worth[i] <= 0:
        return PureInvestment(None, None, 0.0)
    return PureInvestment(i, 1, float(budget))


def myopic_loss(net: Network, kb: float, profile: CentralityProfile | None = None) -> float:
    """Objective loss the bad camp suffers by playing myopically instead of
    farsightedly, with budget kb.

    The myopic camp dumps its budget in phase 1 on the node with the top
    r_i * w_ib, realizing a final-phase worth of s_i * w_ib there, while the
    farsighted play would realize the best slot worth overall; the loss is kb
    times the worth gap (never negative).
    """
    if kb < 0:
        raise ValueError("kb must be nonnegative")
    prof = _profile(net, profile)
    first = prof.s * net.wb
    second = prof.r * net.wb
    best = max(float(first.max()), float(second.max()), 0.0)
    i_hat = int(np.argmax(second))
    achieved = max(float(first[i_hat]), 0.0)
    return kb * (best - achieved)


def bounded_greedy(
    net: Network,
    budget: float,
    camp: str,
    cap: float = 1.0,
    profile: CentralityProfile | None = None,
) -> InvestmentPlan:
    """Optimal plan when each (node, phase) slot holds at most ``cap`` units:
    fill slots in decreasing worth while the worth stays positive."""
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    if cap <= 0:
        raise ValueError("cap must be positive")
    order = sorted(
        scored_slots(net, camp, profile),
        key=lambda slot: (-slot.coefficient, -slot.phase, slot.node),
    )
    x1 = np.zeros(net.n)
    x2 = np.zeros(net.n)
    remaining = float(budget)
    for slot in order:
        if remaining <= 0 or slot.coefficient <= 0:
            break
        amount = min(cap, remaining)
        if slot.phase == 1:
            x1[slot.node] = amount
        else:
            x2[slot.node] = amount
        remaining -= amount
    return InvestmentPlan(camp, x1, x2)


def multi_election_scores(
    net: Network, d1: float, d2: float, profile: CentralityProfile | None = None
) -> np.ndarray:
    """Per-node decision scores when the first-phase outcome itself carries
    weight d1 and the final outcome weight d2: d1 * r + d2 * s."""
    if d1 < 0 or d2 < 0:
        raise ValueError("weights must be nonnegative")
    prof = _profile(net, profile)
    return d1 * prof.r + d2 * prof.s


def evaluate_two_phase(
    net: Network, x1, x2, y1, y2, profile: CentralityProfile | None = None
) -> float:
    """Total final-phase opinion mass for a two-phase schedule, evaluated in
    closed form (no dynamics run):

        sum_i s_i w0_i v0_i + s . (wg o x1 - wb o y1) + r . (wg o x2 - wb o y2)
    """
    prof = _profile(net, profile)
    n = net.n
    x1 = np.zeros(n) if x1 is None else np.asarray(x1, dtype=float)
    x2 = np.zeros(n) if x2 is None else np.asarray(x2, dtype=float)
    y1 = np.zeros(n) if y1 is None else np.asarray(y1, dtype=float)
    y2 = np.zeros(n) if y2 is None else np.asarray(y2, dtype=float)
    base = float(prof.s @ (net.w0 * net.v0))
    phase1 = float(prof.s @ (net.wg * x1 - net.wb * y1))
    phase2 = float(prof.r @ (net.wg * x2 - net.wb * y2))
    return base + phase1 + phase2
