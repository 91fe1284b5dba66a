"""Per-phase steady states of the opinion process and phase chaining.

Within one phase every node repeatedly mixes its initial bias, its
neighbours' current opinions, and the camps' investments:

    v  <-  w v + (w0 o v_prev + wg o x - wb o y)        (o = elementwise)

Because the network rows are strictly substochastic in absolute value, the
update is a convergent affine map and the phase settles at

    v* = (I - w)^{-1} (w0 o v_prev + wg o x - wb o y).

Two solvers are provided: a dense LU solve (used automatically up to
``DENSE_MAX_N`` nodes and as the test oracle) and the fixed-point recursion
itself (which scales to sparse graphs). Phases chain by feeding each phase's
converged opinions in as the next phase's bias.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from .model import Network

#: above this node count the automatic solver switches to fixed-point iteration
DENSE_MAX_N = 512
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 100_000


class ConvergenceError(RuntimeError):
    """An iterative solve failed to reach tolerance within its iteration cap.

    On a network that passed validation this should not happen; seeing it
    usually means an invalid network slipped through.
    """


def _vec(value, n: int, name: str) -> np.ndarray:
    if value is None:
        return np.zeros(n)
    arr = np.asarray(value, dtype=float)
    if arr.shape != (n,):
        raise ValueError(f"{name} must be a length-{n} vector, got shape {arr.shape}")
    return arr


def _iterate(
    matvec: Callable[[np.ndarray], np.ndarray],
    rhs: np.ndarray,
    start: np.ndarray,
    tol: float,
    max_iter: int,
) -> tuple[np.ndarray, int]:
    """Run v <- matvec(v) + rhs until successive iterates differ by < tol.

    Convergence is measured one step ahead (the distance between the current
    iterate and its successor), so a fixed point reached exactly is detected
    at the iteration that produced it.
    """
    v = np.array(start, dtype=float)
    wv = matvec(v)
    step = np.inf
    for it in range(1, max_iter + 1):
        v = wv + rhs
        wv = matvec(v)
        step = float(np.max(np.abs(wv + rhs - v))) if v.size else 0.0
        if step < tol:
            return v, it
    raise ConvergenceError(
        f"no convergence within {max_iter} iterations (last step {step:.3e}); "
        "check the weight constraints"
    )


def solve_linear(
    net: Network,
    rhs,
    *,
    transpose: bool = False,
    method: str = "auto",
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> np.ndarray:
    """Solve (I - w) z = rhs, or the transposed system, under the shared solver config.

    ``method`` is "auto" (dense below DENSE_MAX_N, iterative above), "direct",
    or "iterate". All linear solves in the package funnel through here so the
    tolerance story stays in one place.
    """
    rhs = _vec(rhs, net.n, "rhs")
    if method == "auto":
        method = "direct" if net.n <= DENSE_MAX_N else "iterate"
    if method == "direct":
        w = net.weights_dense
        a = np.eye(net.n) - (w.T if transpose else w)
        try:
            z = np.linalg.solve(a, rhs)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(f"direct solve failed: {exc}") from exc
        resid = float(np.max(np.abs(a @ z - rhs)))
        scale = max(1.0, float(np.max(np.abs(rhs))))
        if not np.isfinite(resid) or resid > 1e-6 * scale:
            raise ConvergenceError(f"direct solve residual {resid:.3e} too large")
        return z
    if method != "iterate":
        raise ValueError(f"method must be 'auto', 'direct' or 'iterate', got {method!r}")
    mat = net.weights.T.tocsr() if transpose else net.weights
    z, _ = _iterate(lambda v: mat @ v, rhs, rhs, tol, max_iter)
    return z


def steady_state(
    net: Network,
    v_prev,
    x=None,
    y=None,
    wg_eff=None,
    wb_eff=None,
    *,
    method: str = "auto",
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> np.ndarray:
    """Converged opinions for one phase.

    ``wg_eff`` / ``wb_eff`` default to the network's fixed camp weights; pass
    the bias-dependent values when camp influence tracks the entering bias.
    Missing investment vectors mean no investment.
    """
    n = net.n
    v_prev = _vec(v_prev, n, "v_prev")
    x = _vec(x, n, "x")
    y = _vec(y, n, "y")
    wg = net.wg if wg_eff is None else _vec(wg_eff, n, "wg_eff")
    wb = net.wb if wb_eff is None else _vec(wb_eff, n, "wb_eff")
    rhs = net.w0 * v_prev + wg * x - wb * y
    return solve_linear(net, rhs, transpose=False, method=method, tol=tol, max_iter=max_iter)


def fixed_point_iterate(
    net: Network,
    v_prev,
    x=None,
    y=None,
    wg_eff=None,
    wb_eff=None,
    *,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> tuple[np.ndarray, int]:
    """Run the phase recursion from v_prev; returns (opinions, iterations used).

    Stops when the max-norm distance between successive iterates drops below
    ``tol``; the result then agrees with :func:`steady_state` to about
    10 * tol (geometric tail of the contraction).
    """
    n = net.n
    v_prev = _vec(v_prev, n, "v_prev")
    x = _vec(x, n, "x")
    y = _vec(y, n, "y")
    wg = net.wg if wg_eff is None else _vec(wg_eff, n, "wg_eff")
    wb = net.wb if wb_eff is None else _vec(wb_eff, n, "wb_eff")
    rhs = net.w0 * v_prev + wg * x - wb * y
    w = net.weights
    return _iterate(lambda v: w @ v, rhs, v_prev, tol, max_iter)


def dependency_camp_weights(theta, w0, v_prev) -> tuple[np.ndarray, np.ndarray]:
    """Effective camp weights when influence tracks the bias-weighted entering opinion.

    Each node splits its camp total theta between the camps in proportion to
    (1 +- w0 * v_prev) / 2, so the two weights always sum to theta.
    """
    lean = np.asarray(w0, dtype=float) * np.asarray(v_prev, dtype=float)
    theta = np.asarray(theta, dtype=float)
    return theta * (1.0 + lean) / 2.0, theta * (1.0 - lean) / 2.0


@dataclass(frozen=True)
class OpinionState:
    """Converged opinions at the end of a phase (phase numbering starts at 1)."""

    phase: int
    v: np.ndarray


def iter_phases(
    net: Network,
    plans: Sequence[tuple],
    mode: str = "fixed",
    *,
    method: str = "auto",
) -> Iterator[OpinionState]:
    """Yield the OpinionState after each phase of a multi-phase schedule.

    ``plans`` is a sequence of (x, y) investment pairs, one per phase. In
    "dependency" mode the camp weights are recomputed from theta and the
    entering opinions at every phase boundary; in "fixed" mode the network's
    wg / wb vectors apply throughout.
    """
    if mode not in ("fixed", "dependency"):
        raise ValueError(f"mode must be 'fixed' or 'dependency', got {mode!r}")
    v = net.v0
    for phase, (x, y) in enumerate(plans, start=1):
        if mode == "dependency":
            wg_eff, wb_eff = dependency_camp_weights(net.theta, net.w0, v)
        else:
            wg_eff = wb_eff = None
        v = steady_state(net, v, x, y, wg_eff, wb_eff, method=method)
        yield OpinionState(phase=phase, v=v)


def run_phases(
    net: Network,
    plans: Sequence[tuple] | None = None,
    p: int | None = None,
    mode: str = "fixed",
    *,
    method: str = "auto",
) -> tuple[np.ndarray, list[float]]:
    """Chain phases and return (final opinions, per-phase opinion sums).

    Either pass explicit ``plans`` or a phase count ``p`` for an
    investment-free run.
    """
    if plans is None:
        if p is None:
            raise ValueError("need either plans or a phase count p")
        zero = np.zeros(net.n)
        plans = [(zero, zero)] * p
    elif p is not None and p != len(plans):
        raise ValueError(f"p={p} does not match {len(plans)} plan entries")
    if len(plans) < 1:
        raise ValueError("need at least one phase")
    v = net.v0
    sums: list[float] = []
    for state in iter_phases(net, plans, mode, method=method):
        v = state.v
        sums.append(float(state.v.sum()))
    return v, sums
