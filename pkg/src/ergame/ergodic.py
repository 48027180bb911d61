"""Best response without entropy: linear optimization over invariant measures.

At a fixed order m the invariant measures project exactly onto the polytope
of nonnegative de Bruijn edge frequencies with flow balance and unit mass.
Maximizing a depth-(m+1) potential over invariant measures is therefore a
finite LP, and its optimum equals the maximum mean cycle of the edge graph,
which this module also computes independently (Karp's recurrence and, for
small graphs, explicit cycle enumeration).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import LP_TOL, LP_ZERO_TOL, word_cap
from .errors import CapExceededError, InvariantError, SolverError
from .measures import MarkovMeasure, _uniform_rows
from .symbolic import CylinderFunction, ShiftSpec, Word, refine


@dataclass(frozen=True, eq=False)
class StationaryEdgePolytope:
    """Equality system cutting out stationary edge frequencies at one order.

    Rows: one flow-balance equation per length-m word (mass in minus mass
    out) and one normalization row; variables are indexed by the allowed
    length-(m+1) edge words in lexicographic order.
    """

    spec: ShiftSpec
    order: int
    edge_words: list[Word]
    node_words: list[Word]
    A_eq: np.ndarray
    b_eq: np.ndarray

    def feasible(self, f: np.ndarray, tol: float = 1e-10) -> bool:
        f = np.asarray(f, dtype=float)
        return (
            f.min() >= -tol
            and float(np.abs(self.A_eq @ f - self.b_eq).max()) <= tol
        )


def build_stationary_polytope(spec: ShiftSpec, order: int) -> StationaryEdgePolytope:
    if order < 1:
        raise InvariantError("polytope order must be at least 1")
    nodes = spec.words(order)
    edges = spec.words(order + 1)
    if len(edges) > word_cap():
        raise CapExceededError("edge count exceeds the word cap")
    index_nodes = spec.word_index(order)
    A = np.zeros((len(nodes) + 1, len(edges)))
    for e, w in enumerate(edges):
        src = index_nodes[w[:-1]]
        tgt = index_nodes[w[1:]]
        A[tgt, e] += 1.0  # mass flowing into the target word
        A[src, e] -= 1.0  # mass flowing out of the source word
        A[len(nodes), e] = 1.0
    b = np.zeros(len(nodes) + 1)
    b[len(nodes)] = 1.0
    return StationaryEdgePolytope(spec, order, edges, nodes, A, b)


@dataclass(frozen=True, eq=False)
class EdgeFrequencyVector:
    """Occupation measure on de Bruijn edges; the LP variable."""

    spec: ShiftSpec
    order: int
    f: np.ndarray

    def __post_init__(self) -> None:
        polytope = build_stationary_polytope(self.spec, self.order)
        f = np.asarray(self.f, dtype=float)
        if f.shape != (len(polytope.edge_words),):
            raise InvariantError("edge vector length does not match the edge count")
        if f.min() < -1e-10:
            raise InvariantError("edge vector has a negative weight")
        if abs(f.sum() - 1.0) > 1e-10:
            raise InvariantError("edge vector does not sum to 1")
        balance = polytope.A_eq[:-1] @ f
        if np.abs(balance).max() > 1e-10:
            raise InvariantError("edge vector violates flow balance")
        f = np.clip(f, 0.0, None)
        f.setflags(write=False)
        object.__setattr__(self, "f", f)

    @property
    def edge_words(self) -> list[Word]:
        return self.spec.words(self.order + 1)

    def to_markov(self) -> MarkovMeasure:
        """Collapse edge frequencies to a stationary chain.

        Words carrying no mass receive the uniform allowed row; they do not
        affect any integral.
        """
        spec, m = self.spec, self.order
        nodes = spec.words(m)
        index = spec.word_index(m)
        pi = np.zeros(len(nodes))
        P = _uniform_rows(spec, m)
        rows: dict[int, np.ndarray] = {}
        for w, weight in zip(self.edge_words, self.f):
            src = index[w[:-1]]
            pi[src] += weight
            rows.setdefault(src, np.zeros(spec.alphabet_size))[w[-1]] += weight
        total = pi.sum()
        pi = pi / total
        for src, row in rows.items():
            if row.sum() > 0.0:
                P[src] = row / row.sum()
        return MarkovMeasure(spec, m, pi, P)


def edge_vector_of_measure(mu: MarkovMeasure, order: int | None = None) -> EdgeFrequencyVector:
    """Depth-(m+1) marginal of an invariant measure, read as edge frequencies."""
    from .measures import marginal

    m = mu.order if order is None else order
    dist = marginal(mu, m + 1)
    return EdgeFrequencyVector(mu.spec, m, dist.weights.copy())


@dataclass(frozen=True, eq=False)
class BestResponseResult:
    """Vertex optimizer of a linear functional over invariant measures."""

    optimizer: MarkovMeasure
    value: float
    multiplicity_flag: bool
    dual_bound: float
    edge_vector: EdgeFrequencyVector


def _solve_lp(c, A_eq, b_eq, A_ub=None, b_ub=None):
    from scipy.optimize import linprog

    res = linprog(
        c,
        A_eq=A_eq,
        b_eq=b_eq,
        A_ub=A_ub,
        b_ub=b_ub,
        bounds=(0, None),
        method="highs",
    )
    if not res.success:
        raise SolverError(f"LP failed: {res.message}")
    return res


def br_ergodic(
    psi: CylinderFunction,
    order: int | None = None,
    detect_multiplicity: bool = True,
) -> BestResponseResult:
    """Maximize the integral of ``psi`` over invariant measures by LP.

    Returns one optimal vertex (deterministic solver), the optimal value, a
    dual bound certifying optimality, and a flag raised when the optimal
    face provably contains a second point (probed with one extra LP that
    pushes mass onto the coordinates the vertex left at zero).
    """
    m = max(1, psi.depth - 1) if order is None else order
    if m + 1 < psi.depth:
        raise InvariantError("order too small for the potential depth")
    psi_e = refine(psi, m + 1)
    polytope = build_stationary_polytope(psi.spec, m)
    c = psi_e.values
    res = _solve_lp(-c, polytope.A_eq, polytope.b_eq)
    value = float(-res.fun)
    dual_bound = float(-(polytope.b_eq @ res.eqlin.marginals))
    f = np.clip(res.x, 0.0, None)
    f = f / f.sum()
    edge_vec = EdgeFrequencyVector(psi.spec, m, f)
    flag = False
    if detect_multiplicity:
        zeros = res.x < LP_ZERO_TOL
        if not np.any(zeros):
            flag = True
        else:
            probe_c = np.where(zeros, -1.0, 0.0)
            slack = LP_TOL * max(1.0, abs(value))
            probe = _solve_lp(
                probe_c,
                polytope.A_eq,
                polytope.b_eq,
                A_ub=(-c)[None, :],
                b_ub=np.array([-(value - slack)]),
            )
            flag = float(-probe.fun) > 1e-7
    return BestResponseResult(
        optimizer=edge_vec.to_markov(),
        value=value,
        multiplicity_flag=flag,
        dual_bound=dual_bound,
        edge_vector=edge_vec,
    )


def max_mean_cycle(psi: CylinderFunction, order: int | None = None) -> float:
    """Maximum cycle mean of the edge graph weighted by ``psi`` (Karp).

    Independent of the LP route; the two must agree because the extreme
    points of the stationary polytope are uniform measures on simple cycles.
    """
    m = max(1, psi.depth - 1) if order is None else order
    psi_e = refine(psi, m + 1)
    spec = psi.spec
    nodes = spec.words(m)
    index = spec.word_index(m)
    n = len(nodes)
    edges = []  # (src, tgt, weight)
    for w, weight in zip(spec.words(m + 1), psi_e.values):
        edges.append((index[w[:-1]], index[w[1:]], float(weight)))
    neg_inf = float("-inf")
    F = np.full((n + 1, n), neg_inf)
    F[0, :] = 0.0
    for k in range(1, n + 1):
        for src, tgt, weight in edges:
            cand = F[k - 1, src] + weight
            if cand > F[k, tgt]:
                F[k, tgt] = cand
    best = neg_inf
    for v in range(n):
        if F[n, v] == neg_inf:
            continue
        worst = float("inf")
        for k in range(n):
            if F[k, v] == neg_inf:
                continue
            worst = min(worst, (F[n, v] - F[k, v]) / (n - k))
        best = max(best, worst)
    if best == neg_inf:
        raise SolverError("graph has no cycles; shift spec validation should have caught this")
    return float(best)


def simple_cycle_measures(
    spec: ShiftSpec, order: int, cap: int = 64
) -> list[tuple[list[Word], MarkovMeasure, EdgeFrequencyVector]]:
    """All vertex measures of the stationary polytope, via simple cycles.

    Each simple cycle of the de Bruijn graph carries the uniform edge vector
    on its edges; these are exactly the polytope's extreme points.  Guarded
    by a node cap because the cycle count can grow super-exponentially.
    """
    import networkx as nx

    nodes = spec.words(order)
    if len(nodes) > cap:
        raise CapExceededError(f"cycle enumeration limited to {cap} nodes, got {len(nodes)}")
    index = spec.word_index(order)
    edge_index = spec.word_index(order + 1)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(nodes)))
    for w in spec.words(order + 1):
        graph.add_edge(index[w[:-1]], index[w[1:]], word=w)
    out = []
    n_edges = len(spec.words(order + 1))
    for cycle in sorted(nx.simple_cycles(graph)):
        cycle_words = []
        f = np.zeros(n_edges)
        L = len(cycle)
        for pos in range(L):
            u = nodes[cycle[pos]]
            v = nodes[cycle[(pos + 1) % L]]
            w = u + (v[-1],)
            cycle_words.append(w)
            f[edge_index[w]] = 1.0 / L
        vec = EdgeFrequencyVector(spec, order, f)
        out.append((cycle_words, vec.to_markov(), vec))
    return out
