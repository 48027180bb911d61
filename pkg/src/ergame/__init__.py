"""Solvers for two-player ergodic and entropy-penalized games on full shifts.

Strategies are shift-invariant measures represented as stationary Markov
chains on words.  The package computes exact best responses (LP over
stationary edge frequencies, or Gibbs measures of transfer operators),
searches for Nash equilibria with verified epsilon-certificates, brackets
Wasserstein-1 distances between measures, and solves cooperative
ergodic-transport plans.
"""

__version__ = "0.1.0"

from .errors import (
    CapExceededError,
    ConvergenceError,
    ErgameError,
    InvariantError,
    SchemaError,
    SolverError,
    SpecMismatchError,
)
from .symbolic import (
    DEFAULT_METRIC,
    CylinderFunction,
    JointCylinderFunction,
    MetricParams,
    ShiftSpec,
    enumerate_words,
    lipschitz_constant,
    mixed_constant,
    refine,
    refine_joint,
    word_metric,
)
from .measures import (
    MarkovMeasure,
    W1Interval,
    WordDistribution,
    bernoulli,
    dirac_fixed_point,
    entropy,
    induced_potential_x,
    induced_potential_y,
    integrate,
    integrate_product,
    marginal,
    markov_from_word_distribution,
    random_markov,
    uniform_bernoulli,
    wasserstein1,
    wasserstein1_words,
)
from .ergodic import (
    BestResponseResult,
    EdgeFrequencyVector,
    StationaryEdgePolytope,
    br_ergodic,
    build_stationary_polytope,
    edge_vector_of_measure,
    max_mean_cycle,
    simple_cycle_measures,
)
from .thermo import GibbsResult, TransferMatrix, br_thermo, gibbs_measure, perron, transfer_matrix
from .games import (
    GameSpec,
    NashReport,
    StrategyProfile,
    br_iteration,
    best_responses,
    common_payoff_maximize,
    dirac_profile,
    fictitious_play,
    payoff,
    two_fixed_point_game,
    uniform_profile,
    verify_epsilon_nash,
    zero_sum_solve,
)
from .transport import TransportPlan, TransportResult, solve_cooperative, solve_player1

__all__ = [name for name in dir() if not name.startswith("_")]
