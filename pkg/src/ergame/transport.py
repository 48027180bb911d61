"""Cooperative play as a transport LP with dynamical marginal constraints.

When the first player's payoff ignores the second player, the first player
solves a plain linear optimization over invariant measures and commits to
the resulting measure.  The players may then coordinate on a joint plan
whose x-marginal reproduces that measure exactly (so the first player's
payoff is untouched) and whose y-marginal is the depth-k shadow of an
invariant measure, i.e. its prefix and suffix marginals agree.  Maximizing
the second payoff over such plans is a single LP at the working depth, and
every product coupling is feasible for it, so cooperation can only help.

The plan itself is constrained only through its two projections.  Optional
flag: additionally require the plan-level prefix and suffix pair-marginals
to agree (a jointly stationary variant, off by default).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import word_cap
from .errors import CapExceededError, InvariantError, SpecMismatchError
from .ergodic import BestResponseResult, br_ergodic
from .measures import (
    MarkovMeasure,
    WordDistribution,
    induced_potential_y,
    marginal,
)
from .symbolic import CylinderFunction, JointCylinderFunction, ShiftSpec, Word, refine_joint


@dataclass(frozen=True, eq=False)
class TransportPlan:
    """Joint weights over (x-word, y-word) pairs at one depth."""

    spec_x: ShiftSpec
    spec_y: ShiftSpec
    depth: int
    q: np.ndarray  # shape (x words, y words)

    def __post_init__(self) -> None:
        nx = len(self.spec_x.words(self.depth))
        ny = len(self.spec_y.words(self.depth))
        q = np.asarray(self.q, dtype=float)
        if q.shape != (nx, ny):
            raise InvariantError("plan shape does not match the word counts")
        if q.min() < -1e-10:
            raise InvariantError("plan has a negative weight")
        if abs(q.sum() - 1.0) > 1e-10:
            raise InvariantError("plan mass does not sum to 1")
        q = np.clip(q, 0.0, None)
        q.setflags(write=False)
        object.__setattr__(self, "q", q)

    def x_marginal(self) -> WordDistribution:
        return WordDistribution(self.spec_x, self.depth, self.q.sum(axis=1))

    def y_marginal(self) -> WordDistribution:
        return WordDistribution(self.spec_y, self.depth, self.q.sum(axis=0))

    def validate_against(self, mu: MarkovMeasure, tol: float = 1e-10) -> None:
        """Check the x-marginal reproduces ``mu`` and the y-marginal is
        shift-consistent; raises naming the violated constraint."""
        mx = marginal(mu, self.depth).weights
        if np.abs(self.q.sum(axis=1) - mx).max() > tol:
            raise InvariantError("plan x-marginal does not match the given measure")
        ym = self.y_marginal()
        if self.depth > 1:
            pre = ym.prefix_marginal().weights
            suf = ym.suffix_marginal().weights
            if np.abs(pre - suf).max() > tol:
                raise InvariantError("plan y-marginal is not shift-consistent")


@dataclass(frozen=True, eq=False)
class TransportResult:
    plan: TransportPlan
    value: float
    y_marginal: WordDistribution
    benchmark: float
    gain: float


def solve_player1(A1: CylinderFunction, order: int | None = None) -> BestResponseResult:
    """First player's own problem when A1 depends on x only."""
    if not isinstance(A1, CylinderFunction):
        raise InvariantError("solve_player1 expects a one-variable potential")
    return br_ergodic(A1, order=order)


def solve_cooperative(
    A2: JointCylinderFunction,
    mu: MarkovMeasure,
    depth: int,
    jointly_stationary: bool = False,
) -> TransportResult:
    """Maximize the second payoff over plans pinned to ``mu`` on the x side.

    The LP constrains the plan's x-marginal to equal ``mu``'s depth-k law
    and its y-marginal to be shift-consistent.  The reported benchmark is
    the best product-measure payoff given ``mu`` (an ergodic best response
    to the induced y-potential); the optimal value always dominates it
    because product couplings are feasible.
    """
    from scipy.optimize import linprog
    from scipy import sparse

    if A2.spec_x is not mu.spec and (
        A2.spec_x.alphabet_size != mu.spec.alphabet_size or A2.spec_x.allowed is not mu.spec.allowed
    ):
        raise SpecMismatchError("A2 and mu live on different x-spaces")
    if depth < max(A2.depth_x, A2.depth_y):
        raise InvariantError("working depth must cover the potential depths")
    spec_x, spec_y = A2.spec_x, A2.spec_y
    words_x = spec_x.words(depth)
    words_y = spec_y.words(depth)
    nx, ny = len(words_x), len(words_y)
    if nx * ny > word_cap():
        raise CapExceededError("transport plan size exceeds the word cap")
    A2e = refine_joint(A2, depth, depth)
    cost = A2e.matrix.ravel()

    mx = marginal(mu, depth).weights

    def var(i: int, j: int) -> int:
        return i * ny + j

    rows, cols, data = [], [], []
    b_eq = []
    r = 0
    # x-marginal rows
    for i in range(nx):
        for j in range(ny):
            rows.append(r)
            cols.append(var(i, j))
            data.append(1.0)
        b_eq.append(mx[i])
        r += 1
    # y shift-consistency rows: prefix mass equals suffix mass per short word
    if depth > 1:
        shorter = spec_y.words(depth - 1)
        index_s = spec_y.word_index(depth - 1)
        for j, wy in enumerate(words_y):
            pre = index_s[wy[:-1]]
            suf = index_s[wy[1:]]
            if pre == suf:
                continue
            for i in range(nx):
                rows.append(r + pre)
                cols.append(var(i, j))
                data.append(1.0)
                rows.append(r + suf)
                cols.append(var(i, j))
                data.append(-1.0)
        b_eq.extend([0.0] * len(shorter))
        r += len(shorter)
    # optional joint stationarity: pair prefix marginal equals pair suffix marginal
    if jointly_stationary and depth > 1:
        sx = spec_x.words(depth - 1)
        index_sx = spec_x.word_index(depth - 1)
        index_sy = spec_y.word_index(depth - 1)
        n_sy = len(spec_y.words(depth - 1))
        for i, wx in enumerate(words_x):
            for j, wy in enumerate(words_y):
                pre = index_sx[wx[:-1]] * n_sy + index_sy[wy[:-1]]
                suf = index_sx[wx[1:]] * n_sy + index_sy[wy[1:]]
                if pre == suf:
                    continue
                rows.append(r + pre)
                cols.append(var(i, j))
                data.append(1.0)
                rows.append(r + suf)
                cols.append(var(i, j))
                data.append(-1.0)
        b_eq.extend([0.0] * (len(sx) * n_sy))
        r += len(sx) * n_sy

    A_eq = sparse.coo_matrix((data, (rows, cols)), shape=(r, nx * ny)).tocsr()
    res = linprog(-cost, A_eq=A_eq, b_eq=np.array(b_eq), bounds=(0, None), method="highs")
    if not res.success:
        from .errors import SolverError

        raise SolverError(f"transport LP failed: {res.message}")
    q = np.clip(res.x.reshape(nx, ny), 0.0, None)
    q = q / q.sum()
    plan = TransportPlan(spec_x, spec_y, depth, q)
    plan.validate_against(mu, tol=1e-8)
    value = float(-res.fun)

    bench = br_ergodic(induced_potential_y(A2, mu), detect_multiplicity=False).value
    return TransportResult(
        plan=plan,
        value=value,
        y_marginal=plan.y_marginal(),
        benchmark=bench,
        gain=value - bench,
    )
