"""Strategies when camp influence on a node depends on the node's bias.

Here each node grants the camps a total weight theta split in proportion to
(1 +- w0 * v_prev) / 2, so phase-1 investments change the weights the camps
enjoy in phase 2 and the camps' problems no longer decouple. Two structural
facts keep the problem tractable:

* an optimal schedule either exhausts the whole budget or spends nothing,
  and puts each phase's spending on a single node, so a camp's pure strategy
  reduces to (phase-1 node, phase-2 node, budget split), with a stay-out
  option on the side;
* for a fixed pair of node profiles the final-phase objective is a quadratic
  in the two phase-1 budgets, concave in the good camp's and convex in the
  bad camp's (under nonnegative weights), so the per-profile value is a
  saddle point over the budget box.

The single-camp optimum scans all n^2 node pairs, settling each pair's split
in closed form. With two camps the (n^2+1) x (n^2+1) payoff matrix of saddle
values feeds the zero-sum solver in :mod:`opinion_game.game`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .centrality import delta_matrix, delta_row, katz_r, katz_s
from .dynamics import DENSE_MAX_N, dependency_camp_weights, solve_linear
from .game import MatrixGame, solve_zero_sum
from .model import Network

Pair = tuple[int, int]

#: bracket tolerance of the saddle bisection, scaled by the budget
SADDLE_TOL = 1e-10

#: default node-count guard for the two-camp game assembly
MAX_GAME_NODES = 40


@dataclass(frozen=True)
class PureProfile:
    """One camp's pure strategy: nodes for the two phases plus the budget
    split. alpha = beta = None is the stay-out strategy (k1 = k2 = 0)."""

    alpha: Optional[int]
    beta: Optional[int]
    k1: float
    k2: float

    def __post_init__(self):
        if self.k1 < 0 or self.k2 < 0:
            raise ValueError("phase budgets must be nonnegative")
        if (self.alpha is None) != (self.beta is None):
            raise ValueError("stay-out profiles drop both nodes")
        if self.alpha is None and (self.k1 != 0 or self.k2 != 0):
            raise ValueError("stay-out profiles carry no budget")


@dataclass(frozen=True, eq=False)
class GameSolution:
    """Solved two-camp game: payoff over pure profiles (good camp maximizes),
    mixed strategies of both camps, and the game value."""

    payoff: np.ndarray
    row_mix: np.ndarray
    col_mix: np.ndarray
    value: float
    profiles: tuple[Optional[Pair], ...]


def camp_weights(net: Network, v_prev) -> tuple[np.ndarray, np.ndarray]:
    """Effective per-phase camp weights given the entering opinions; the two
    weights sum to theta elementwise."""
    return dependency_camp_weights(net.theta, net.w0, np.asarray(v_prev, dtype=float))


class DependencyCoefficients:
    """Per-instance constants of the final-phase objective.

    c[i] = w0[i] * v0[i] is node i's bias carry. Row j of the coupling
    matrix, b[j, i] = r[j] * w0[j] * delta[j, i], measures how strongly a
    unit of phase-1 opinion at node i resurfaces in the final phase through
    node j's bias; its row sums over j reproduce s. s_total = sum_ij c_i b_ji
    is the objective when nobody invests. Rows and the c-weighted row sums
    are fetched lazily through the centrality row cache.
    """

    def __init__(self, net: Network, r: np.ndarray | None = None, s: np.ndarray | None = None):
        self.net = net
        self.r = katz_r(net) if r is None else np.asarray(r, dtype=float)
        self.s = katz_s(net, self.r) if s is None else np.asarray(s, dtype=float)
        self.c = net.w0 * net.v0
        self.theta = net.theta
        self.s_total = float(self.c @ self.s)
        self._cb: dict[int, float] = {}

    def b_row(self, j: int) -> np.ndarray:
        return self.r[j] * self.net.w0[j] * delta_row(self.net, j)

    def b_entry(self, j: int, i: int) -> float:
        return float(self.b_row(j)[i])

    def cb(self, j: int) -> float:
        """sum_i b[j, i] * c[i], cached per node."""
        val = self._cb.get(j)
        if val is None:
            val = float(self.b_row(j) @ self.c)
            self._cb[j] = val
        return val


def _quad_coefficients(
    coef: DependencyCoefficients,
    good: Optional[Pair],
    bad: Optional[Pair],
    kg: float,
    kb: float,
) -> tuple[float, float, float, float, float, float]:
    """Coefficients (u00, qa, qb, qaa, qbb, qab) of the final-phase objective

        u(a, b) = u00 + qa a + qb b + qaa a^2 + qbb b^2 + qab a b

    after fixing the node profiles and substituting the phase-2 budgets
    kg - a and kb - b (a, b are the phase-1 budgets). A camp passed as None
    stays out entirely: its variable disappears and its budget is forced to
    zero. Under the dependency assumptions qaa <= 0 and qbb >= 0, making u
    concave in a and convex in b.
    """
    u00 = coef.s_total
    qa = qb = qaa = qbb = qab = 0.0
    g1 = g2 = 0.0
    if good is not None:
        alpha, beta = good
        g1 = 0.5 * coef.theta[alpha] * (1.0 + coef.c[alpha])
        g2 = 0.5 * coef.theta[beta]
        gain_beta = coef.cb(beta) + coef.r[beta]
        b_ba = coef.b_entry(beta, alpha)
        u00 += kg * g2 * gain_beta
        qa = g1 * (coef.s[alpha] + kg * g2 * b_ba) - g2 * gain_beta
        qaa = -g1 * g2 * b_ba
    if bad is not None:
        gamma, delta = bad
        h1 = 0.5 * coef.theta[gamma] * (1.0 - coef.c[gamma])
        h2 = 0.5 * coef.theta[delta]
        gain_delta = coef.cb(delta) - coef.r[delta]
        b_dg = coef.b_entry(delta, gamma)
        u00 += kb * h2 * gain_delta
        qb = -h1 * (coef.s[gamma] + kb * h2 * b_dg) - h2 * gain_delta
        qbb = h1 * h2 * b_dg
        if good is not None:
            b_da = coef.b_entry(delta, alpha)
            b_bg = coef.b_entry(beta, gamma)
            qa += g1 * kb * h2 * b_da
            qb -= h1 * kg * g2 * b_bg
            qab = -g1 * h2 * b_da + h1 * g2 * b_bg
    return u00, qa, qb, qaa, qbb, qab


def _best_split(q1: float, q2: float, hi: float, maximize: bool = True) -> float:
    """Extremum of q1 t + q2 t^2 on [0, hi]; candidates are the endpoints and
    the interior stationary point, with the first strict winner kept (0
    first, then hi). Degenerate quadratics therefore land on an endpoint."""
    candidates = [0.0, hi]
    if q2 != 0.0:
        t = -q1 / (2.0 * q2)
        if 0.0 < t < hi:
            candidates.append(t)
    best = candidates[0]
    best_val = 0.0
    for t in candidates[1:]:
        val = q1 * t + q2 * t * t
        if (val > best_val) if maximize else (val < best_val):
            best, best_val = t, val
    return best


def _saddle_numeric(
    u, qa: float, qb: float, qaa: float, qbb: float, qab: float, kg: float, kb: float
) -> tuple[float, float]:
    """Box saddle point via derivative-sign bisection of the two outer problems.

    g(a) = min_b u(a, b) is concave (a minimum of concave quadratics) and
    h(b) = max_a u(a, b) convex, so each outer problem is settled by
    bisecting on the sign of a central-difference slope estimate. Both g and
    h are piecewise quadratic (the inner extremum is a clamped stationary
    point or an endpoint), so after the bisection localizes the optimum the
    result is polished against the exact piece breakpoints and stationary
    points inside the method's error window. The returned pair is then an
    exact box saddle: neither camp can improve by changing its own split.
    """

    def inner_b(a: float) -> float:
        if qbb > 0.0:
            return min(max(-(qb + qab * a) / (2.0 * qbb), 0.0), kb)
        return 0.0 if u(a, 0.0) <= u(a, kb) else kb

    def inner_a(b: float) -> float:
        if qaa < 0.0:
            return min(max(-(qa + qab * b) / (2.0 * qaa), 0.0), kg)
        return 0.0 if u(0.0, b) >= u(kg, b) else kg

    def g(a: float) -> float:
        return u(a, inner_b(a))

    def h(b: float) -> float:
        return u(inner_a(b), b)

    def bisect(fun, hi: float, step: float, maximize: bool) -> float:
        sign = 1.0 if maximize else -1.0

        def slope(t: float) -> float:
            return sign * (fun(t + step) - fun(t - step))

        if slope(0.0) <= 0.0:
            return 0.0
        if slope(hi) >= 0.0:
            return hi
        lo_t, hi_t = 0.0, hi
        tol = SADDLE_TOL * max(1.0, hi)
        while hi_t - lo_t > tol:
            mid = 0.5 * (lo_t + hi_t)
            if slope(mid) > 0.0:
                lo_t = mid
            else:
                hi_t = mid
        return 0.5 * (lo_t + hi_t)

    def polish(fun, t_hat: float, hi: float, step: float, maximize: bool, special) -> float:
        # the central-difference bisection localizes the optimum to within
        # its step near a kink; the true optimum is a breakpoint, a piece
        # stationary point, or a box endpoint, all inside this window
        lo_w = max(0.0, t_hat - 4.0 * step)
        hi_w = min(hi, t_hat + 4.0 * step)
        best, best_val = t_hat, fun(t_hat)
        for t in (lo_w, hi_w, *special):
            if lo_w <= t <= hi_w:
                val = fun(t)
                if (val > best_val) if maximize else (val < best_val):
                    best, best_val = t, val
        return best

    def g_special() -> list[float]:
        pts: list[float] = []
        if qab != 0.0:
            if qbb > 0.0:
                pts += [-qb / qab, -(qb + 2.0 * qbb * kb) / qab]
            else:
                pts.append(-(qb + qbb * kb) / qab)
        if qaa != 0.0:
            for edge in (0.0, kb):
                pts.append(-(qa + qab * edge) / (2.0 * qaa))
        if qbb > 0.0:
            curv = qaa - qab * qab / (4.0 * qbb)
            if curv != 0.0:
                pts.append(-(qa - qab * qb / (2.0 * qbb)) / (2.0 * curv))
        return pts

    def h_special() -> list[float]:
        pts: list[float] = []
        if qab != 0.0:
            if qaa < 0.0:
                pts += [-qa / qab, -(qa + 2.0 * qaa * kg) / qab]
            else:
                pts.append(-(qa + qaa * kg) / qab)
        if qbb != 0.0:
            for edge in (0.0, kg):
                pts.append(-(qb + qab * edge) / (2.0 * qbb))
        if qaa < 0.0:
            curv = qbb - qab * qab / (4.0 * qaa)
            if curv != 0.0:
                pts.append(-(qb - qab * qa / (2.0 * qaa)) / (2.0 * curv))
        return pts

    if kg <= 0.0:
        a_star = 0.0
    else:
        step_a = max(1e-6, 1e-6 * kg)
        a_star = polish(g, bisect(g, kg, step_a, True), kg, step_a, True, g_special())
    if kb <= 0.0:
        b_star = 0.0
    else:
        step_b = max(1e-6, 1e-6 * kb)
        b_star = polish(h, bisect(h, kb, step_b, False), kb, step_b, False, h_special())
    return a_star, b_star


def _saddle_closed_form(
    qa: float, qb: float, qaa: float, qbb: float, qab: float
) -> tuple[float, float] | None:
    """Interior stationary point of the saddle system, or None when the
    quadratic is not strictly concave-convex. Solves the pair of first-order
    conditions 2 qaa a + qab b = -qa and qab a + 2 qbb b = -qb."""
    if not (qaa < 0.0 and qbb > 0.0):
        return None
    den = qab * qab - 4.0 * qaa * qbb
    a = (2.0 * qbb * qa - qab * qb) / den
    b = (2.0 * qaa * qb - qab * qa) / den
    return a, b


def profile_utility(
    net: Network,
    good: Optional[Pair],
    bad: Optional[Pair],
    kg: float,
    kb: float,
    coefficients: DependencyCoefficients | None = None,
) -> tuple[float, float, float]:
    """Saddle value and phase-1 budgets for one pure node-profile pair.

    ``good`` and ``bad`` are (phase-1 node, phase-2 node) pairs, or None for
    a camp that stays out. Returns (value, kg1, kb1); the remaining budgets
    kg - kg1 and kb - kb1 go to phase 2. The good camp's split maximizes and
    the bad camp's minimizes the quadratic objective over the budget box:
    when the closed-form stationary point is interior it is the saddle,
    otherwise the saddle is located numerically on the box boundary.
    """
    if kg < 0 or kb < 0:
        raise ValueError("budgets must be nonnegative")
    coef = coefficients if coefficients is not None else DependencyCoefficients(net)
    u00, qa, qb, qaa, qbb, qab = _quad_coefficients(coef, good, bad, kg, kb)

    def u(a: float, b: float) -> float:
        return u00 + qa * a + qb * b + qaa * a * a + qbb * b * b + qab * a * b

    if good is None and bad is None:
        return u00, 0.0, 0.0
    if bad is None:
        a = _best_split(qa, qaa, kg, maximize=True)
        return u(a, 0.0), a, 0.0
    if good is None:
        b = _best_split(qb, qbb, kb, maximize=False)
        return u(0.0, b), 0.0, b

    interior = _saddle_closed_form(qa, qb, qaa, qbb, qab)
    if interior is not None:
        a, b = interior
        if 0.0 <= a <= kg and 0.0 <= b <= kb:
            return u(a, b), a, b
    a, b = _saddle_numeric(u, qa, qb, qaa, qbb, qab, kg, kb)
    return u(a, b), a, b


def _split_values(
    s_total: float,
    kg: float,
    first_gain,
    second_gain,
    coupling,
) -> np.ndarray:
    """Best objective over the budget split for a batch of node pairs.

    Per pair the objective as a function of the phase-1 budget t is
    s_total + first_gain * t + second_gain * (kg - t) + coupling * t * (kg - t);
    the maximum sits at an endpoint or, when the quadratic is strictly
    concave, at the clamped interior stationary point. Arguments broadcast,
    so either gain may be the scanned vector.
    """
    v_zero = s_total + kg * np.asarray(second_gain, dtype=float)
    v_full = s_total + kg * np.asarray(first_gain, dtype=float)
    values = np.maximum(v_full, v_zero)
    with np.errstate(divide="ignore", invalid="ignore"):
        k1 = (first_gain - second_gain + coupling * kg) / (2.0 * coupling)
        v_int = (
            s_total
            + first_gain * k1
            + second_gain * (kg - k1)
            + coupling * k1 * (kg - k1)
        )
    inside = (coupling > 0.0) & (k1 > 0.0) & (k1 < kg)
    return np.where(inside, np.maximum(values, v_int), values)


def single_camp_optimal(
    net: Network, kg: float, coefficients: DependencyCoefficients | None = None
) -> tuple[PureProfile, float]:
    """Best two-phase schedule for the good camp alone (bad camp absent).

    Scans every (phase-1 node, phase-2 node) pair; per pair the objective is
    quadratic in the phase-1 budget, so the split is settled in closed form
    (endpoints when the quadratic degenerates). Returns the stay-out profile
    with the idle objective when no pair strictly beats it. Ties between
    pairs go to the first pair in (alpha, beta) scan order.
    """
    if kg < 0:
        raise ValueError("budget must be nonnegative")
    coef = coefficients if coefficients is not None else DependencyCoefficients(net)
    stay_out = (PureProfile(None, None, 0.0, 0.0), coef.s_total)
    if kg == 0 or net.n == 0:
        return stay_out

    n = net.n
    first_gain = 0.5 * coef.theta * (1.0 + coef.c) * coef.s
    if n <= DENSE_MAX_N:
        b_mat = (coef.r * net.w0)[:, None] * delta_matrix(net)
        cb_vec = b_mat @ coef.c
        second_gain = 0.5 * coef.theta * (cb_vec + coef.r)
        coupling = 0.25 * np.outer(coef.theta * (1.0 + coef.c), coef.theta) * b_mat.T
        values = _split_values(
            coef.s_total, kg, first_gain[:, None], second_gain[None, :], coupling
        )
        flat = int(np.argmax(values))
        alpha, beta = flat // n, flat % n
    else:
        # streaming scan: one resolvent application per phase-1 node, nothing
        # dense is materialized
        cb_vec = coef.r * net.w0 * solve_linear(net, coef.c, transpose=False)
        second_gain = 0.5 * coef.theta * (cb_vec + coef.r)
        best_val = -np.inf
        alpha = beta = 0
        for a_node in range(n):
            unit = np.zeros(n)
            unit[a_node] = 1.0
            b_col = coef.r * net.w0 * solve_linear(net, unit, transpose=False)
            coupling = 0.25 * coef.theta[a_node] * (1.0 + coef.c[a_node]) * coef.theta * b_col
            vals = _split_values(coef.s_total, kg, float(first_gain[a_node]), second_gain, coupling)
            b_best = int(np.argmax(vals))
            if vals[b_best] > best_val:
                best_val = float(vals[b_best])
                alpha, beta = a_node, b_best

    u00, qa, _, qaa, _, _ = _quad_coefficients(coef, (alpha, beta), None, kg, 0.0)
    k1 = _best_split(qa, qaa, kg, maximize=True)
    value = u00 + qa * k1 + qaa * k1 * k1
    if value <= coef.s_total:
        return stay_out
    return PureProfile(alpha, beta, k1, kg - k1), value


def game_profiles(n: int) -> tuple[Optional[Pair], ...]:
    """Pure strategy space of one camp: all node pairs plus the stay-out
    sentinel (None), n^2 + 1 strategies in total."""
    return tuple((a, b) for a in range(n) for b in range(n)) + (None,)


def two_camp_equilibrium(
    net: Network,
    kg: float,
    kb: float,
    max_nodes: int = MAX_GAME_NODES,
    coefficients: DependencyCoefficients | None = None,
) -> GameSolution:
    """Assemble the (n^2+1)-strategy zero-sum game over pure profiles and
    solve it by linear programming.

    Every payoff entry is a saddle solve, so the assembly is quadratic in
    n^2; networks above ``max_nodes`` are refused outright rather than left
    to run for hours.
    """
    n = net.n
    if n > max_nodes:
        raise ValueError(
            f"two-camp equilibrium needs ({n}^2+1)^2 = {(n * n + 1) ** 2} saddle solves; "
            f"refusing n={n} > max_nodes={max_nodes}"
        )
    if kg < 0 or kb < 0:
        raise ValueError("budgets must be nonnegative")
    coef = coefficients if coefficients is not None else DependencyCoefficients(net)
    profiles = game_profiles(n)
    m = len(profiles)
    payoff = np.empty((m, m))
    for i, good in enumerate(profiles):
        for j, bad in enumerate(profiles):
            payoff[i, j] = profile_utility(net, good, bad, kg, kb, coefficients=coef)[0]
    row_mix, col_mix, value = solve_zero_sum(MatrixGame(payoff))
    return GameSolution(
        payoff=payoff,
        row_mix=row_mix,
        col_mix=col_mix,
        value=float(value),
        profiles=profiles,
    )
