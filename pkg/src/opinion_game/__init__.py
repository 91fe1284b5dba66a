"""Two-phase opinion-investment games on social networks.

Library layout:

* :mod:`opinion_game.model` holds the network, per-node parameters and the
  weight-constraint checks;
* :mod:`opinion_game.dynamics` computes per-phase steady-state opinions and
  chains phases;
* :mod:`opinion_game.centrality` computes the one-phase and look-ahead Katz
  influence vectors and resolvent rows;
* :mod:`opinion_game.strategy_fixed` derives camp strategies when camp
  weights are fixed (unbounded, per-node-capped, myopic, multiple-elections);
* :mod:`opinion_game.strategy_dependent` handles the setting where camp
  influence depends on a node's bias, including the two-camp zero-sum game;
* :mod:`opinion_game.game` is a generic zero-sum matrix-game solver;
* :mod:`opinion_game.harness` generates weights and sweeps the bias-weight
  grid, mirroring the desk-scale experiment protocol.
"""

from .model import (
    BAD,
    GOOD,
    Budgets,
    InvestmentPlan,
    Network,
    Topology,
    Violation,
    load_edge_list,
    save_edge_list,
    validate,
)
from .dynamics import (
    ConvergenceError,
    OpinionState,
    dependency_camp_weights,
    fixed_point_iterate,
    iter_phases,
    run_phases,
    steady_state,
)
from .centrality import (
    CentralityProfile,
    apply_delta,
    compute_profile,
    delta_matrix,
    delta_row,
    katz_multiphase,
    katz_r,
    katz_s,
)
from .strategy_fixed import (
    PureInvestment,
    ScoredSlot,
    bounded_greedy,
    evaluate_two_phase,
    farsighted_unbounded,
    multi_election_scores,
    myopic_loss,
    myopic_strategy,
    scored_slots,
)
from .strategy_dependent import (
    DependencyCoefficients,
    GameSolution,
    PureProfile,
    camp_weights,
    game_profiles,
    profile_utility,
    single_camp_optimal,
    two_camp_equilibrium,
)
from .game import GameSolverError, MatrixGame, solve_zero_sum
from .harness import (
    DEFAULT_W0_GRID,
    SWEEP_COLUMNS,
    SWEEP_MODES,
    WeightScheme,
    ba_graph,
    generate_weights,
    sweep_point,
    sweep_w0,
)

__version__ = "0.1.0"

__all__ = [
    "BAD",
    "GOOD",
    "Budgets",
    "CentralityProfile",
    "ConvergenceError",
    "DEFAULT_W0_GRID",
    "DependencyCoefficients",
    "GameSolution",
    "GameSolverError",
    "InvestmentPlan",
    "MatrixGame",
    "Network",
    "OpinionState",
    "PureInvestment",
    "PureProfile",
    "SWEEP_COLUMNS",
    "SWEEP_MODES",
    "ScoredSlot",
    "Topology",
    "Violation",
    "WeightScheme",
    "apply_delta",
    "ba_graph",
    "bounded_greedy",
    "camp_weights",
    "compute_profile",
    "delta_matrix",
    "delta_row",
    "dependency_camp_weights",
    "evaluate_two_phase",
    "farsighted_unbounded",
    "fixed_point_iterate",
    "game_profiles",
    "generate_weights",
    "iter_phases",
    "katz_multiphase",
    "katz_r",
    "katz_s",
    "load_edge_list",
    "multi_election_scores",
    "myopic_loss",
    "myopic_strategy",
    "profile_utility",
    "run_phases",
    "save_edge_list",
    "scored_slots",
    "single_camp_optimal",
    "solve_zero_sum",
    "steady_state",
    "sweep_point",
    "sweep_w0",
    "two_camp_equilibrium",
    "validate",
]
