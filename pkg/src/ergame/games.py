"""Two-player games over invariant measures: payoffs, certificates, search.

A game fixes two shift spaces, two joint potentials and a mode.  In
ergodic mode the payoff of a profile is the product-measure integral of
the player's potential; in thermodynamic mode the player's own entropy is
added.  A profile is an epsilon-Nash point when neither player can gain
more than epsilon by a unilateral change; both deficits are computed
against exact best-response values (LP optimum, or pressure), so every
certificate is verified rather than assumed.

Search strategies:

* ``br_iteration``: alternate exact best responses.  With entropy the best
  response is unique and the map is continuous, so fixed points are
  equilibria; convergence is an empirical, per-instance outcome and is
  measured by certified Wasserstein-1 upper bounds between consecutive
  iterates.
* ``fictitious_play``: best responses against the running average of the
  opponent's past edge frequencies (a convex combination, hence again a
  valid strategy).  No convergence guarantee is claimed; the final profile
  carries its certificate.
* ``zero_sum_solve`` and ``common_payoff_maximize``: exact LP / enumeration
  for the two classical special cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import LP_TOL, word_cap
from .errors import (
    CapExceededError,
    InvariantError,
    SolverError,
    SpecMismatchError,
)
from .ergodic import (
    BestResponseResult,
    EdgeFrequencyVector,
    br_ergodic,
    build_stationary_polytope,
    edge_vector_of_measure,
    simple_cycle_measures,
)
from .measures import (
    MarkovMeasure,
    W1Interval,
    bernoulli,
    dirac_fixed_point,
    entropy,
    induced_potential_x,
    induced_potential_y,
    integrate_product,
    marginal,
    random_markov,
    uniform_bernoulli,
    wasserstein1,
)
from .symbolic import (
    CylinderFunction,
    JointCylinderFunction,
    ShiftSpec,
    _check_spec_match,
    refine_joint,
)
from .thermo import GibbsResult, br_thermo, gibbs_measure

ERGODIC = "ergodic"
THERMODYNAMIC = "thermodynamic"

# Default epsilon at which a certificate counts as passed, per method.
EPS_TOL_EXACT = 1e-8
EPS_TOL_ITERATION = 1e-6
EPS_TOL_FICTITIOUS = 1e-2
# Default Wasserstein step tolerance for best-response iteration.
STEP_TOL_DEFAULT = 5e-4


@dataclass(frozen=True, eq=False)
class GameSpec:
    """Game definition: spaces, the two payoff potentials, and the mode."""

    spec_x: ShiftSpec
    spec_y: ShiftSpec
    A1: JointCylinderFunction
    A2: JointCylinderFunction
    mode: str

    def __post_init__(self) -> None:
        if self.mode not in (ERGODIC, THERMODYNAMIC):
            raise InvariantError(f"mode must be '{ERGODIC}' or '{THERMODYNAMIC}'")
        for name, A in (("A1", self.A1), ("A2", self.A2)):
            _check_spec_match(A.spec_x, self.spec_x, f"{name} (x side)")
            _check_spec_match(A.spec_y, self.spec_y, f"{name} (y side)")


@dataclass(frozen=True, eq=False)
class StrategyProfile:
    """A pair of invariant measures, one per player."""

    mu: MarkovMeasure
    nu: MarkovMeasure

    def params(self) -> np.ndarray:
        return np.concatenate([self.mu.pi, self.mu.P.ravel(), self.nu.pi, self.nu.P.ravel()])


@dataclass(frozen=True)
class IterationStep:
    index: int
    step_mu: float
    step_nu: float
    payoff1: float
    payoff2: float


@dataclass(frozen=True, eq=False)
class NashReport:
    """Search outcome: profile, verified deficits and the iteration trace."""

    profile: StrategyProfile
    eps1: float
    eps2: float
    iterations: list[IterationStep]
    converged: bool
    method: str
    mode: str
    eps_tol: float
    value: float | None = None
    extras: dict = field(default_factory=dict)

    @property
    def eps(self) -> float:
        return max(self.eps1, self.eps2)


def payoff(game: GameSpec, profile: StrategyProfile, player: int) -> float:
    """Expected payoff of one player; entropy of their own measure is added
    in thermodynamic mode."""
    if player == 1:
        base = integrate_product(game.A1, profile.mu, profile.nu)
        if game.mode == THERMODYNAMIC:
            base += entropy(profile.mu)
        return base
    if player == 2:
        base = integrate_product(game.A2, profile.mu, profile.nu)
        if game.mode == THERMODYNAMIC:
            base += entropy(profile.nu)
        return base
    raise ValueError("player must be 1 or 2")


def _br_value_1(game: GameSpec, nu: MarkovMeasure, order: int | None = None):
    """Best-response value and responder for player 1 against ``nu``."""
    psi = induced_potential_x(game.A1, nu)
    if game.mode == ERGODIC:
        result = br_ergodic(psi, order=order)
        return result.value, result
    result = gibbs_measure(psi, order=order)
    return result.pressure, result


def _br_value_2(game: GameSpec, mu: MarkovMeasure, order: int | None = None):
    psi = induced_potential_y(game.A2, mu)
    if game.mode == ERGODIC:
        result = br_ergodic(psi, order=order)
        return result.value, result
    result = gibbs_measure(psi, order=order)
    return result.pressure, result


def best_responses(game: GameSpec, profile: StrategyProfile):
    """The two best-response solver results at a profile (for diagnostics)."""
    _, r1 = _br_value_1(game, profile.nu)
    _, r2 = _br_value_2(game, profile.mu)
    return r1, r2


def verify_epsilon_nash(game: GameSpec, profile: StrategyProfile) -> tuple[float, float]:
    """Best-response deficits of both players at a profile.

    ``eps_i`` is the exact best-response value against the opponent minus
    the player's payoff at the profile; both are nonnegative up to solver
    tolerance, and ``max(eps1, eps2) <= tol`` certifies an epsilon-Nash
    point at the working depth.
    """
    v1, _ = _br_value_1(game, profile.nu)
    v2, _ = _br_value_2(game, profile.mu)
    eps1 = v1 - payoff(game, profile, 1)
    eps2 = v2 - payoff(game, profile, 2)
    if eps1 < -1e-9 or eps2 < -1e-9:
        raise SolverError(f"negative best-response deficit ({eps1:.3e}, {eps2:.3e})")
    return float(eps1), float(eps2)


def uniform_profile(game: GameSpec) -> StrategyProfile:
    return StrategyProfile(uniform_bernoulli(game.spec_x), uniform_bernoulli(game.spec_y))


def dirac_profile(game: GameSpec, symbol_x: int, symbol_y: int) -> StrategyProfile:
    return StrategyProfile(
        dirac_fixed_point(game.spec_x, symbol_x), dirac_fixed_point(game.spec_y, symbol_y)
    )


def _w1_depth_for(step_tol: float, spec: ShiftSpec, theta: float = 0.5) -> int:
    """Smallest depth whose cylinder diameter leaves room under ``step_tol``.

    The certified upper bound between depth-k marginals can never drop
    below ``theta**k``, so the step criterion is only attainable when the
    diameter is at most half the tolerance.
    """
    if step_tol <= 0:
        raise InvariantError("step tolerance must be positive")
    depth = max(2, math.ceil(math.log(2.0 / step_tol) / math.log(1.0 / theta)))
    d = spec.alphabet_size
    if d ** depth > word_cap():
        raise CapExceededError(
            f"step tolerance {step_tol} needs depth {depth}, beyond the word cap"
        )
    return depth


def br_iteration(
    game: GameSpec,
    init: StrategyProfile | None = None,
    max_iter: int = 200,
    step_tol: float = STEP_TOL_DEFAULT,
    eps_tol: float | None = None,
    w1_depth: int | None = None,
) -> NashReport:
    """Alternate exact best responses until the profile stops moving.

    Stops when both certified Wasserstein-1 upper bounds between
    consecutive iterates fall below ``step_tol``; a profile repeating an
    earlier iterate (period two or more) is reported as a cycle with
    ``converged=False``.  On step convergence the epsilon certificate is
    computed and ``converged`` additionally requires ``eps <= eps_tol``,
    so a converged report is always a certified one.
    """
    if eps_tol is None:
        eps_tol = EPS_TOL_ITERATION if game.mode == THERMODYNAMIC else EPS_TOL_EXACT
    if init is None:
        init = uniform_profile(game)
    k_mu = w1_depth or _w1_depth_for(step_tol, game.spec_x)
    k_nu = w1_depth or _w1_depth_for(step_tol, game.spec_y)
    profile = init
    history: list[np.ndarray] = [profile.params()]
    trace: list[IterationStep] = []
    converged = False
    cycle_detected = False
    multiplicity: list[tuple[bool, bool]] = []
    for step in range(1, max_iter + 1):
        _, r1 = _br_value_1(game, profile.nu)
        _, r2 = _br_value_2(game, profile.mu)
        if game.mode == ERGODIC:
            mu_next, nu_next = r1.optimizer, r2.optimizer
            multiplicity.append((r1.multiplicity_flag, r2.multiplicity_flag))
        else:
            mu_next, nu_next = r1.gibbs, r2.gibbs
        nxt = StrategyProfile(mu_next, nu_next)
        step_mu = wasserstein1(mu_next, profile.mu, k_mu).hi
        step_nu = wasserstein1(nu_next, profile.nu, k_nu).hi
        trace.append(
            IterationStep(step, step_mu, step_nu, payoff(game, nxt, 1), payoff(game, nxt, 2))
        )
        params = nxt.params()
        if max(step_mu, step_nu) < step_tol:
            profile = nxt
            converged = True
            break
        same_len = [h for h in history if h.shape == params.shape]
        if len(same_len) >= 2:
            for old in same_len[:-1]:
                if np.abs(old - params).max() <= 1e-9:
                    cycle_detected = True
                    break
        profile = nxt
        if cycle_detected:
            break
        history.append(params)
    eps1, eps2 = verify_epsilon_nash(game, profile)
    certified = max(eps1, eps2) <= eps_tol
    extras = {"step_tol": step_tol, "w1_depth": (k_mu, k_nu), "cycle_detected": cycle_detected}
    if multiplicity:
        extras["multiplicity_history"] = multiplicity
    return NashReport(
        profile=profile,
        eps1=eps1,
        eps2=eps2,
        iterations=trace,
        converged=converged and certified,
        method="iteration",
        mode=game.mode,
        eps_tol=eps_tol,
        extras=extras,
    )


class _VertexBestResponder:
    """Exact linear best response over one stationary polytope.

    Precomputes the polytope's extreme points (uniform cycle measures) when
    the de Bruijn graph is small, reducing each response to an argmax over
    a fixed vertex list; falls back to the LP otherwise.
    """

    def __init__(self, spec: ShiftSpec, order: int, cycle_cap: int = 64):
        self.spec = spec
        self.order = order
        self.vertices: np.ndarray | None = None
        if len(spec.words(order)) <= cycle_cap:
            cycles = simple_cycle_measures(spec, order, cap=cycle_cap)
            self.vertices = np.array([vec.f for _, _, vec in cycles])

    def respond(self, weights: np.ndarray) -> np.ndarray:
        """Edge vector maximizing ``weights . f`` over the polytope."""
        if self.vertices is not None:
            return self.vertices[int(np.argmax(self.vertices @ weights))]
        psi = CylinderFunction.from_values(self.spec, self.order + 1, weights)
        return br_ergodic(psi, order=self.order, detect_multiplicity=False).edge_vector.f


def fictitious_play(
    game: GameSpec,
    init: StrategyProfile | None = None,
    max_iter: int = 10_000,
    eps_tol: float = EPS_TOL_FICTITIOUS,
    order_x: int | None = None,
    order_y: int | None = None,
    trace_every: int = 100,
) -> NashReport:
    """Best-respond to the opponent's historical average edge frequencies.

    Averages live in the stationary polytope (it is convex), so every
    intermediate profile is a valid strategy pair.  Updates alternate:
    the second player sees the first player's refreshed average within the
    same round, which empirically converges much faster on zero-sum games
    than simultaneous updates.  The returned profile is the pair of
    averages with its verified certificate; ``converged`` records whether
    the certificate met ``eps_tol``.  No convergence guarantee is claimed.
    """
    if game.mode != ERGODIC:
        raise InvariantError("fictitious play is defined for the ergodic mode")
    m_x = order_x or max(1, game.A1.depth_x - 1)
    m_y = order_y or max(1, game.A2.depth_y - 1)
    if init is None:
        init = uniform_profile(game)
    avg_x = edge_vector_of_measure(init.mu, m_x).f.copy()
    avg_y = edge_vector_of_measure(init.nu, m_y).f.copy()
    B1 = refine_joint(game.A1, m_x + 1, m_y + 1).matrix
    B2 = refine_joint(game.A2, m_x + 1, m_y + 1).matrix
    side_x = _VertexBestResponder(game.spec_x, m_x)
    side_y = _VertexBestResponder(game.spec_y, m_y)
    trace: list[IterationStep] = []

    def snapshot(step: int) -> None:
        prof = StrategyProfile(
            EdgeFrequencyVector(game.spec_x, m_x, avg_x).to_markov(),
            EdgeFrequencyVector(game.spec_y, m_y, avg_y).to_markov(),
        )
        trace.append(
            IterationStep(step, math.nan, math.nan, payoff(game, prof, 1), payoff(game, prof, 2))
        )

    count = 1
    for step in range(1, max_iter + 1):
        best_x = side_x.respond(B1 @ avg_y)
        avg_x = (count * avg_x + best_x) / (count + 1)
        best_y = side_y.respond(B2.T @ avg_x)
        avg_y = (count * avg_y + best_y) / (count + 1)
        count += 1
        if step % trace_every == 0 or step == max_iter:
            snapshot(step)
    profile = StrategyProfile(
        EdgeFrequencyVector(game.spec_x, m_x, avg_x).to_markov(),
        EdgeFrequencyVector(game.spec_y, m_y, avg_y).to_markov(),
    )
    eps1, eps2 = verify_epsilon_nash(game, profile)
    return NashReport(
        profile=profile,
        eps1=eps1,
        eps2=eps2,
        iterations=trace,
        converged=max(eps1, eps2) <= eps_tol,
        method="fictitious-play",
        mode=game.mode,
        eps_tol=eps_tol,
        extras={"order": (m_x, m_y)},
    )


# ---------------------------------------------------------------------------
# Zero-sum games


def _solve_lp(c, A_eq=None, b_eq=None, A_ub=None, b_ub=None, bounds=(0, None)):
    from scipy.optimize import linprog

    res = linprog(c, A_eq=A_eq, b_eq=b_eq, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if not res.success:
        raise SolverError(f"LP failed: {res.message}")
    return res


def _maximin_edge_lp(B: np.ndarray, pol_f, pol_g):
    """max over f in F of min over g in G of f' B g, via the dual of the inner LP.

    Variables are (f, y) with y the multipliers of G's equalities; the inner
    minimum equals ``b_G . y`` under ``A_G' y <= B' f``.  Returns the value
    and the optimal f.
    """
    nE_f = len(pol_f.edge_words)
    n_y = pol_g.A_eq.shape[0]
    n_var = nE_f + n_y
    c = np.zeros(n_var)
    c[nE_f:] = -pol_g.b_eq  # maximize b_G . y
    A_eq = np.zeros((pol_f.A_eq.shape[0], n_var))
    A_eq[:, :nE_f] = pol_f.A_eq
    b_eq = pol_f.b_eq
    A_ub = np.zeros((B.shape[1], n_var))
    A_ub[:, :nE_f] = -B.T
    A_ub[:, nE_f:] = pol_g.A_eq.T
    b_ub = np.zeros(B.shape[1])
    bounds = [(0, None)] * nE_f + [(None, None)] * n_y
    res = _solve_lp(c, A_eq=A_eq, b_eq=b_eq, A_ub=A_ub, b_ub=b_ub, bounds=bounds)
    value = float(-res.fun)
    return value, res.x[:nE_f]


def _canonicalize_optimal_edge(B: np.ndarray, pol_f, pol_g, value: float) -> np.ndarray:
    """Among maximin-optimal edge vectors, pick the L1-closest to uniform.

    The optimal set is a face; a deterministic LP selects the most mixed
    point of it, which makes reported strategies canonical (for instance
    the uniform Bernoulli measure in symmetric games).
    """
    nE_f = len(pol_f.edge_words)
    n_y = pol_g.A_eq.shape[0]
    target = np.full(nE_f, 1.0 / nE_f)
    # variables: f, y, t (L1 slack)
    n_var = nE_f + n_y + nE_f
    c = np.zeros(n_var)
    c[nE_f + n_y:] = 1.0
    A_eq = np.zeros((pol_f.A_eq.shape[0], n_var))
    A_eq[:, :nE_f] = pol_f.A_eq
    b_eq = pol_f.b_eq
    rows = []
    rhs = []
    # A_G' y <= B' f
    block = np.zeros((B.shape[1], n_var))
    block[:, :nE_f] = -B.T
    block[:, nE_f:nE_f + n_y] = pol_g.A_eq.T
    rows.append(block)
    rhs.append(np.zeros(B.shape[1]))
    # b_G . y >= value - slack
    row = np.zeros((1, n_var))
    row[0, nE_f:nE_f + n_y] = -pol_g.b_eq
    rows.append(row)
    rhs.append(np.array([-(value - 1e-10)]))
    # |f - target| <= t
    eye = np.eye(nE_f)
    up = np.zeros((nE_f, n_var))
    up[:, :nE_f] = eye
    up[:, nE_f + n_y:] = -eye
    rows.append(up)
    rhs.append(target)
    down = np.zeros((nE_f, n_var))
    down[:, :nE_f] = -eye
    down[:, nE_f + n_y:] = -eye
    rows.append(down)
    rhs.append(-target)
    bounds = [(0, None)] * nE_f + [(None, None)] * n_y + [(0, None)] * nE_f
    res = _solve_lp(
        c, A_eq=A_eq, b_eq=b_eq, A_ub=np.vstack(rows), b_ub=np.concatenate(rhs), bounds=bounds
    )
    f = np.clip(res.x[:nE_f], 0.0, None)
    return f / f.sum()


def zero_sum_solve(
    game: GameSpec, order_x: int | None = None, order_y: int | None = None
) -> NashReport:
    """Exact minimax solution of an ergodic zero-sum game.

    Solves the maximin and minimax LPs over the two stationary polytopes,
    asserts strong duality, and canonicalizes both optimal strategies to
    the most mixed points of their optimal faces.
    """
    if game.mode != ERGODIC:
        raise InvariantError("zero_sum_solve is defined for the ergodic mode")
    if np.max(np.abs(game.A1.matrix + game.A2.matrix)) > 1e-12:
        raise InvariantError("zero-sum requires A2 = -A1 entrywise")
    m_x = order_x or max(1, game.A1.depth_x - 1)
    m_y = order_y or max(1, game.A1.depth_y - 1)
    A1e = refine_joint(game.A1, m_x + 1, m_y + 1)
    B = A1e.matrix
    pol_x = build_stationary_polytope(game.spec_x, m_x)
    pol_y = build_stationary_polytope(game.spec_y, m_y)
    v_maximin, _ = _maximin_edge_lp(B, pol_x, pol_y)
    v_minimax_neg, _ = _maximin_edge_lp(-B.T, pol_y, pol_x)
    v_minimax = -v_minimax_neg
    if abs(v_maximin - v_minimax) > 1e-8:
        raise SolverError(
            f"strong duality violated: maximin {v_maximin!r} vs minimax {v_minimax!r}"
        )
    f_canon = _canonicalize_optimal_edge(B, pol_x, pol_y, v_maximin)
    g_canon = _canonicalize_optimal_edge(-B.T, pol_y, pol_x, v_minimax_neg)
    profile = StrategyProfile(
        EdgeFrequencyVector(game.spec_x, m_x, f_canon).to_markov(),
        EdgeFrequencyVector(game.spec_y, m_y, g_canon).to_markov(),
    )
    eps1, eps2 = verify_epsilon_nash(game, profile)
    return NashReport(
        profile=profile,
        eps1=eps1,
        eps2=eps2,
        iterations=[],
        converged=max(eps1, eps2) <= EPS_TOL_EXACT,
        method="direct",
        mode=game.mode,
        eps_tol=EPS_TOL_EXACT,
        value=v_maximin,
        extras={"maximin": v_maximin, "minimax": v_minimax},
    )


# ---------------------------------------------------------------------------
# Common-payoff games


def common_payoff_maximize(
    game: GameSpec,
    order_x: int | None = None,
    order_y: int | None = None,
    n_starts: int = 5,
    seed: int = 0,
    cycle_cap: int = 64,
) -> NashReport:
    """Globally maximize the shared payoff over product profiles.

    The bilinear maximum over two polytopes is attained at a vertex pair,
    so when both de Bruijn graphs are small the simple-cycle enumeration is
    exhaustive and exact.  Alternating maximization from seeded starts runs
    as well (it is the fallback when enumeration is capped) and a global
    product maximum of a common-payoff game is always a Nash point, which
    the returned certificate re-verifies.
    """
    if np.max(np.abs(game.A1.matrix - game.A2.matrix)) > 1e-12:
        raise InvariantError("common_payoff_maximize requires A1 = A2 entrywise")
    if game.mode != ERGODIC:
        raise InvariantError("common_payoff_maximize is defined for the ergodic mode")
    m_x = order_x or max(1, game.A1.depth_x - 1)
    m_y = order_y or max(1, game.A1.depth_y - 1)
    A1e = refine_joint(game.A1, m_x + 1, m_y + 1)
    B = A1e.matrix

    candidates: list[tuple[float, MarkovMeasure, MarkovMeasure]] = []
    enumerated = False
    ties = 0
    try:
        cycles_x = simple_cycle_measures(game.spec_x, m_x, cap=cycle_cap)
        cycles_y = simple_cycle_measures(game.spec_y, m_y, cap=cycle_cap)
        enumerated = True
        best_val = -math.inf
        best_pair = None
        for _, mu_c, fx in cycles_x:
            for _, nu_c, fy in cycles_y:
                val = float(fx.f @ B @ fy.f)
                if val > best_val + 1e-12:
                    best_val, best_pair, ties = val, (mu_c, nu_c), 1
                elif abs(val - best_val) <= 1e-9:
                    ties += 1
        assert best_pair is not None
        candidates.append((best_val, best_pair[0], best_pair[1]))
    except CapExceededError:
        pass

    rng = np.random.default_rng(seed)
    starts: list[MarkovMeasure] = [uniform_bernoulli(game.spec_y) if game.spec_y.is_full_shift
                                   else random_markov(game.spec_y, m_y, rng)]
    for _ in range(max(0, n_starts - 1)):
        starts.append(random_markov(game.spec_y, m_y, rng))
    for nu0 in starts:
        nu_c = nu0
        best = None
        val_prev = -math.inf
        for _ in range(100):
            r1 = br_ergodic(induced_potential_x(game.A1, nu_c), order=m_x, detect_multiplicity=False)
            mu_c = r1.optimizer
            r2 = br_ergodic(induced_potential_y(game.A2, mu_c), order=m_y, detect_multiplicity=False)
            nu_c = r2.optimizer
            val = integrate_product(game.A1, mu_c, nu_c)
            best = (val, mu_c, nu_c)
            if val <= val_prev + 1e-12:
                break
            val_prev = val
        candidates.append(best)

    value, mu_best, nu_best = max(candidates, key=lambda t: t[0])
    profile = StrategyProfile(mu_best, nu_best)
    eps1, eps2 = verify_epsilon_nash(game, profile)
    return NashReport(
        profile=profile,
        eps1=eps1,
        eps2=eps2,
        iterations=[],
        converged=max(eps1, eps2) <= EPS_TOL_EXACT,
        method="direct",
        mode=game.mode,
        eps_tol=EPS_TOL_EXACT,
        value=value,
        extras={"exhaustive": enumerated, "optimal_vertex_pairs": ties if enumerated else None},
    )


# ---------------------------------------------------------------------------
# Built-in example with two pure equilibria


def two_fixed_point_game(mode: str = ERGODIC) -> GameSpec:
    """Binary-alphabet game whose two Dirac fixed-point profiles are both Nash.

    Depth-1 tables (rows indexed by the first symbol of x, columns by the
    first symbol of y):

        A1 = [[2, 1], [1, 3]]      A2 = [[3, 1], [1, 2]]

    Against the all-zeros opponent each player strictly prefers all-zeros,
    and against the all-ones opponent strictly prefers all-ones, so both
    matched Dirac profiles verify with zero deficit while neither is the
    unique equilibrium.  The off-diagonal fill values only need to keep the
    strict preferences; 1 is an implementation choice.
    """
    spec = ShiftSpec(2)
    A1 = JointCylinderFunction.from_matrix(spec, spec, 1, 1, [[2.0, 1.0], [1.0, 3.0]])
    A2 = JointCylinderFunction.from_matrix(spec, spec, 1, 1, [[3.0, 1.0], [1.0, 2.0]])
    return GameSpec(spec, spec, A1, A2, mode)
