"""Finite two-player zero-sum matrix games solved by the minimax linear program.

For a payoff matrix M (row player maximizes) the payoffs are first shifted to
be strictly positive, M' = M - min(M) + 1. The column player's normalized
program

    maximize sum(z)  subject to  M' z <= 1,  z >= 0

has an immediately feasible slack basis, so one primal simplex run settles
it; the optimal column mix is q = z / sum(z) with game value
1 / sum(z) - shift, and the row mix falls out of the same tableau as the
dual prices on the slack columns. Pivoting uses Bland's smallest-index rule
throughout, which cannot cycle; a generous pivot cap guards against numeric
stalls anyway.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class GameSolverError(RuntimeError):
    """Simplex failed to terminate cleanly; the message carries diagnostics."""


@dataclass(frozen=True, eq=False)
class MatrixGame:
    """A zero-sum game: the row player maximizes ``payoff``, the column player
    minimizes it. Labels are optional strategy names for reporting."""

    payoff: np.ndarray
    row_labels: tuple[str, ...] | None = None
    col_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        mat = np.asarray(self.payoff, dtype=float)
        if mat.ndim != 2 or mat.shape[0] < 1 or mat.shape[1] < 1:
            raise ValueError(f"payoff must be a nonempty 2-D matrix, got shape {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise ValueError("payoff matrix has non-finite entries")
        object.__setattr__(self, "payoff", mat)
        if self.row_labels is not None and len(self.row_labels) != mat.shape[0]:
            raise ValueError("row_labels length does not match payoff rows")
        if self.col_labels is not None and len(self.col_labels) != mat.shape[1]:
            raise ValueError("col_labels length does not match payoff columns")


def _pivot(tableau: np.ndarray, row: int, col: int) -> None:
    tableau[row] = tableau[row] / tableau[row, col]
    factors = tableau[:, col].copy()
    factors[row] = 0.0
    tableau -= np.outer(factors, tableau[row])


def _simplex_bland(tableau: np.ndarray, basis: list[int], tol: float, max_pivots: int) -> int:
    """Primal simplex on a maximization tableau, Bland's rule for entering and
    leaving variables. Returns the pivot count."""
    nrows = tableau.shape[0] - 1
    ncols = tableau.shape[1] - 1
    for pivots in range(max_pivots):
        enter = -1
        for j in range(ncols):
            if tableau[0, j] < -tol:
                enter = j
                break
        if enter < 0:
            return pivots
        col = tableau[1:, enter]
        leave = -1
        best_ratio = np.inf
        for i in range(nrows):
            if col[i] > tol:
                ratio = tableau[i + 1, -1] / col[i]
                if ratio < best_ratio or (ratio == best_ratio and basis[i] < basis[leave]):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            raise GameSolverError("unbounded pivot column; payoff matrix is ill-formed")
        _pivot(tableau, leave + 1, enter)
        basis[leave] = enter
    raise GameSolverError(
        f"pivot cap {max_pivots} exceeded on a {nrows}x{ncols - nrows} game "
        f"(payoff range [{tableau.min():.3g}, {tableau.max():.3g}]); "
        "the matrix is likely too ill-conditioned for this solver"
    )


def solve_zero_sum(
    game: MatrixGame | np.ndarray,
    *,
    tol: float = 1e-12,
    max_pivots: int | None = None,
) -> tuple[np.ndarray, np.ndarray, float]:
    """Optimal mixed strategies and value of a zero-sum matrix game.

    Returns (row_mix, col_mix, value): row_mix maximizes the minimum column
    expectation, col_mix minimizes the maximum row expectation, and both
    guarantee ``value``. Ties among optimal bases are resolved by pivot
    order, so only the value is contract-stable.
    """
    if not isinstance(game, MatrixGame):
        game = MatrixGame(np.asarray(game, dtype=float))
    payoff = game.payoff
    nrows, ncols = payoff.shape
    shift = 1.0 - float(payoff.min())
    shifted = payoff + shift

    # max sum(z) s.t. shifted @ z + slack = 1; basis starts on the slacks
    tableau = np.zeros((nrows + 1, ncols + nrows + 1))
    tableau[0, :ncols] = -1.0
    tableau[1:, :ncols] = shifted
    tableau[1:, ncols:ncols + nrows] = np.eye(nrows)
    tableau[1:, -1] = 1.0
    basis = list(range(ncols, ncols + nrows))
    cap = max_pivots if max_pivots is not None else 1000 + 50 * (nrows + ncols)
    _simplex_bland(tableau, basis, tol, cap)

    total = float(tableau[0, -1])
    if not np.isfinite(total) or total <= tol:
        raise GameSolverError(f"degenerate optimum (objective {total:.3e}) on shifted payoffs")

    z = np.zeros(ncols + nrows)
    for k, var in enumerate(basis):
        z[var] = tableau[k + 1, -1]
    col_mix = np.maximum(z[:ncols], 0.0)
    col_mix /= col_mix.sum()
    duals = np.maximum(tableau[0, ncols:ncols + nrows], 0.0)
    row_mix = duals / duals.sum()
    value = 1.0 / total - shift
    return row_mix, col_mix, float(value)
