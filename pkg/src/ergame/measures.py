"""Shift-invariant measures as stationary Markov chains on words.

A measure of Markov order ``m`` is a stationary distribution over length-m
words together with a row-stochastic transition matrix over de Bruijn
edges.  At depth ``m + 1`` these are exactly the word distributions whose
prefix and suffix marginals agree, i.e. the finite-depth projections of
invariant measures on the full shift.

Wasserstein-1 distances between depth-k marginals are reported as a
certified interval ``[lo, hi]``: a depth-k table cannot distinguish tail
behavior, so the ground cost on equal words is 0 for the lower bound and
the cylinder diameter for the upper bound.  Always ``hi - lo <= base**k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .config import LP_WORD_CAP, MASS_TOL, STATIONARITY_TOL, word_cap
from .errors import (
    CapExceededError,
    InvariantError,
    SolverError,
    SpecMismatchError,
)
from .symbolic import (
    DEFAULT_METRIC,
    CylinderFunction,
    JointCylinderFunction,
    MetricParams,
    ShiftSpec,
    Word,
    _check_spec_match,
    word_metric,
    word_to_str,
    str_to_word,
)


@dataclass(frozen=True, eq=False)
class WordDistribution:
    """Probability distribution over allowed depth-k words."""

    spec: ShiftSpec
    depth: int
    weights: np.ndarray

    def __post_init__(self) -> None:
        words = self.spec.words(self.depth)
        weights = np.asarray(self.weights, dtype=float)
        if weights.shape != (len(words),):
            raise InvariantError("weight vector length does not match the word count")
        if weights.min() < -MASS_TOL:
            raise InvariantError("word distribution has a negative weight")
        if abs(weights.sum() - 1.0) > 1e-10:
            raise InvariantError("word distribution does not sum to 1")
        weights = np.clip(weights, 0.0, None)
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)

    @property
    def words(self) -> list[Word]:
        return self.spec.words(self.depth)

    def as_dict(self) -> dict[Word, float]:
        return dict(zip(self.words, self.weights.tolist()))

    def prefix_marginal(self) -> "WordDistribution":
        return _word_marginal(self, keep="prefix")

    def suffix_marginal(self) -> "WordDistribution":
        return _word_marginal(self, keep="suffix")


def _word_marginal(dist: WordDistribution, keep: str) -> WordDistribution:
    if dist.depth < 2:
        raise InvariantError("cannot marginalize a depth-1 distribution further")
    spec = dist.spec
    if spec.is_full_shift:
        d = spec.alphabet_size
        if keep == "prefix":
            out = dist.weights.reshape(-1, d).sum(axis=1)
        else:
            out = dist.weights.reshape(d, -1).sum(axis=0)
        return WordDistribution(spec, dist.depth - 1, out)
    shorter = spec.words(dist.depth - 1)
    index = spec.word_index(dist.depth - 1)
    out = np.zeros(len(shorter))
    for w, weight in zip(dist.words, dist.weights):
        key = w[:-1] if keep == "prefix" else w[1:]
        out[index[key]] += weight
    return WordDistribution(spec, dist.depth - 1, out)


@dataclass(frozen=True, eq=False)
class MarkovMeasure:
    """Stationary Markov chain on length-``order`` words; the strategy object.

    ``pi`` is indexed by ``spec.words(order)``; ``P[i, b]`` is the
    probability of appending symbol ``b`` to word ``i`` (moving along the
    de Bruijn edge to ``w[1:] + (b,)``).
    """

    spec: ShiftSpec
    order: int
    pi: np.ndarray
    P: np.ndarray

    def __post_init__(self) -> None:
        words = self.spec.words(self.order)
        n, d = len(words), self.spec.alphabet_size
        pi = np.asarray(self.pi, dtype=float)
        P = np.asarray(self.P, dtype=float)
        if pi.shape != (n,):
            raise InvariantError("pi length does not match the word count")
        if P.shape != (n, d):
            raise InvariantError("P shape does not match (words, alphabet)")
        if pi.min() < -MASS_TOL:
            raise InvariantError("pi has a negative entry")
        if abs(pi.sum() - 1.0) > MASS_TOL * max(1, n):
            raise InvariantError("pi does not sum to 1")
        if P.min() < -MASS_TOL:
            raise InvariantError("P has a negative entry")
        succ = self.spec.successors(self.order)
        if np.any((succ < 0) & (P > MASS_TOL)):
            raise InvariantError("P puts mass on a disallowed transition")
        row_sums = P.sum(axis=1)
        if np.max(np.abs(row_sums - 1.0)) > 1e-10:
            raise InvariantError("a row of P does not sum to 1")
        pi = np.clip(pi, 0.0, None)
        P = np.clip(P, 0.0, None)
        flow = _push_forward(pi, P, succ)
        if np.abs(flow - pi).sum() > STATIONARITY_TOL:
            raise InvariantError("pi is not stationary for P")
        if self.order > 1:
            pre, suf = _end_marginals(self.spec, self.order, pi)
            if np.abs(pre - suf).max() > STATIONARITY_TOL:
                raise InvariantError("prefix and suffix marginals of pi disagree")
        pi.setflags(write=False)
        P.setflags(write=False)
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "P", P)

    @property
    def words(self) -> list[Word]:
        return self.spec.words(self.order)


def _push_forward(pi: np.ndarray, P: np.ndarray, succ: np.ndarray) -> np.ndarray:
    out = np.zeros_like(pi)
    mass = pi[:, None] * P
    valid = succ >= 0
    np.add.at(out, succ[valid], mass[valid])
    return out


def _end_marginals(spec: ShiftSpec, order: int, pi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    shorter = spec.words(order - 1)
    index = spec.word_index(order - 1)
    pre = np.zeros(len(shorter))
    suf = np.zeros(len(shorter))
    for w, weight in zip(spec.words(order), pi):
        pre[index[w[:-1]]] += weight
        suf[index[w[1:]]] += weight
    return pre, suf


# ---------------------------------------------------------------------------
# Constructors


def dirac_fixed_point(spec: ShiftSpec, symbol: int, order: int = 1) -> MarkovMeasure:
    """Point mass on the constant sequence ``symbol, symbol, ...``."""
    words = spec.words(order)
    index = spec.word_index(order)
    fixed = (symbol,) * order
    if fixed not in index or not spec.allows(fixed, symbol):
        raise InvariantError(f"symbol {symbol} does not support a fixed point in this shift")
    pi = np.zeros(len(words))
    pi[index[fixed]] = 1.0
    P = _uniform_rows(spec, order)
    row = np.zeros(spec.alphabet_size)
    row[symbol] = 1.0
    P[index[fixed]] = row
    return MarkovMeasure(spec, order, pi, P)


def bernoulli(spec: ShiftSpec, probs) -> MarkovMeasure:
    """i.i.d. symbol measure (full shift only)."""
    if not spec.is_full_shift:
        raise InvariantError("Bernoulli measures require the full shift")
    p = np.asarray(probs, dtype=float)
    if p.shape != (spec.alphabet_size,):
        raise InvariantError("probability vector length must equal the alphabet size")
    P = np.tile(p, (spec.alphabet_size, 1))
    return MarkovMeasure(spec, 1, p.copy(), P)


def uniform_bernoulli(spec: ShiftSpec) -> MarkovMeasure:
    d = spec.alphabet_size
    return bernoulli(spec, np.full(d, 1.0 / d))


def _uniform_rows(spec: ShiftSpec, order: int) -> np.ndarray:
    words = spec.words(order)
    succ = spec.successors(order)
    P = np.zeros((len(words), spec.alphabet_size))
    for i in range(len(words)):
        allowed = succ[i] >= 0
        P[i, allowed] = 1.0 / allowed.sum()
    return P


def stationary_distribution(spec: ShiftSpec, order: int, P: np.ndarray) -> np.ndarray:
    """Stationary law of a word chain, by direct linear solve."""
    succ = spec.successors(order)
    n = len(spec.words(order))
    T = np.zeros((n, n))
    for i in range(n):
        for b in range(spec.alphabet_size):
            j = succ[i, b]
            if j >= 0:
                T[j, i] += P[i, b]
    A = T - np.eye(n)
    A[-1, :] = 1.0
    rhs = np.zeros(n)
    rhs[-1] = 1.0
    pi = np.linalg.solve(A, rhs)
    pi = np.clip(pi, 0.0, None)
    return pi / pi.sum()


def random_markov(
    spec: ShiftSpec, order: int, rng: np.random.Generator, concentration: float = 1.0
) -> MarkovMeasure:
    """Random irreducible chain with Dirichlet rows; useful as a challenger."""
    words = spec.words(order)
    succ = spec.successors(order)
    P = np.zeros((len(words), spec.alphabet_size))
    for i in range(len(words)):
        allowed = np.flatnonzero(succ[i] >= 0)
        P[i, allowed] = rng.dirichlet(np.full(len(allowed), concentration))
    pi = stationary_distribution(spec, order, P)
    return MarkovMeasure(spec, order, pi, P)


# ---------------------------------------------------------------------------
# Marginals and integrals


def marginal(mu: MarkovMeasure, depth: int) -> WordDistribution:
    """Exact law of the first ``depth`` symbols under ``mu``."""
    if depth < 1:
        raise InvariantError("marginal depth must be at least 1")
    spec, m = mu.spec, mu.order
    if depth == m:
        return WordDistribution(spec, depth, mu.pi.copy())
    if depth < m:
        if spec.is_full_shift:
            block = spec.alphabet_size ** (m - depth)
            return WordDistribution(spec, depth, mu.pi.reshape(-1, block).sum(axis=1))
        out = np.zeros(len(spec.words(depth)))
        index = spec.word_index(depth)
        for w, weight in zip(mu.words, mu.pi):
            out[index[w[:depth]]] += weight
        return WordDistribution(spec, depth, out)
    cap = word_cap()
    d = spec.alphabet_size
    if spec.is_full_shift:
        # Lexicographic indexing makes the chain state of a depth-k word its
        # index mod d**m, so each unrolling level is one vectorized outer step.
        if d ** depth > cap:
            raise CapExceededError(f"marginal depth {depth} exceeds the word cap")
        n_states = d ** m
        weights = mu.pi
        for k in range(m, depth):
            states = np.arange(d ** k, dtype=np.int64) % n_states
            weights = (weights[:, None] * mu.P[states]).ravel()
        return WordDistribution(spec, depth, weights)
    weights = mu.pi
    words = mu.words
    index_m = mu.spec.word_index(m)
    for k in range(m, depth):
        longer = spec.words(k + 1)
        if len(longer) > cap:
            raise CapExceededError(f"marginal depth {depth} exceeds the word cap")
        index = spec.word_index(k + 1)
        out = np.zeros(len(longer))
        for w, weight in zip(words, weights):
            if weight == 0.0:
                continue
            state = index_m[w[-m:]]
            for b in range(spec.alphabet_size):
                p = mu.P[state, b]
                if p > 0.0:
                    out[index[w + (b,)]] += weight * p
        words, weights = longer, out
    return WordDistribution(spec, depth, weights)


def entropy(mu: MarkovMeasure) -> float:
    """Entropy rate in nats: -sum_w pi(w) sum_b P(w,b) log P(w,b)."""
    P = mu.P
    logs = np.where(P > 0.0, np.log(np.where(P > 0.0, P, 1.0)), 0.0)
    return float(-(mu.pi @ (P * logs).sum(axis=1)))


def integrate(psi: CylinderFunction, mu: MarkovMeasure) -> float:
    _check_spec_match(psi.spec, mu.spec, "integrate")
    return float(marginal(mu, psi.depth).weights @ psi.values)


def integrate_word_distribution(psi: CylinderFunction, dist: WordDistribution) -> float:
    _check_spec_match(psi.spec, dist.spec, "integrate")
    if dist.depth < psi.depth:
        raise InvariantError("distribution depth is smaller than the table depth")
    if dist.depth == psi.depth:
        return float(dist.weights @ psi.values)
    values = np.array([psi.table[w[: psi.depth]] for w in dist.words])
    return float(dist.weights @ values)


def integrate_product(
    A: JointCylinderFunction, mu: MarkovMeasure, nu: MarkovMeasure
) -> float:
    """Exact value of the product-measure integral of a joint table."""
    _check_spec_match(A.spec_x, mu.spec, "integrate_product (x side)")
    _check_spec_match(A.spec_y, nu.spec, "integrate_product (y side)")
    px = marginal(mu, A.depth_x).weights
    py = marginal(nu, A.depth_y).weights
    return float(px @ A.matrix @ py)


def induced_potential_x(A1: JointCylinderFunction, nu: MarkovMeasure) -> CylinderFunction:
    """One-variable potential on x obtained by integrating out y against ``nu``."""
    _check_spec_match(A1.spec_y, nu.spec, "induced_potential_x")
    py = marginal(nu, A1.depth_y).weights
    return CylinderFunction.from_values(A1.spec_x, A1.depth_x, A1.matrix @ py)


def induced_potential_y(A2: JointCylinderFunction, mu: MarkovMeasure) -> CylinderFunction:
    """One-variable potential on y obtained by integrating out x against ``mu``."""
    _check_spec_match(A2.spec_x, mu.spec, "induced_potential_y")
    px = marginal(mu, A2.depth_x).weights
    return CylinderFunction.from_values(A2.spec_y, A2.depth_y, A2.matrix.T @ px)


# ---------------------------------------------------------------------------
# Wasserstein-1


@dataclass(frozen=True)
class W1Interval:
    """Certified bracket for the Wasserstein-1 distance at a finite depth."""

    lo: float
    hi: float

    def __iter__(self):
        return iter((self.lo, self.hi))


def _prefix_tv_profile(p: WordDistribution, q: WordDistribution) -> list[float]:
    """Total variation between prefix marginals at each depth 1..k."""
    spec, depth = p.spec, p.depth
    diffs = []
    delta = np.asarray(p.weights, dtype=float) - np.asarray(q.weights, dtype=float)
    words = p.words
    for j in range(depth, 0, -1):
        diffs.append(float(np.abs(delta).sum()))
        if j > 1:
            if spec.is_full_shift:
                delta = delta.reshape(-1, spec.alphabet_size).sum(axis=1)
            else:
                shorter = spec.words(j - 1)
                index = spec.word_index(j - 1)
                out = np.zeros(len(shorter))
                for w, a in zip(words, delta):
                    out[index[w[:-1]]] += a
                delta, words = out, shorter
    diffs.reverse()
    return diffs  # diffs[j-1] = TV between depth-j prefix marginals


def _w1_tree(
    p: WordDistribution, q: WordDistribution, params: MetricParams
) -> W1Interval:
    """Closed-form optimal transport on the ultrametric prefix tree.

    For a tree metric the optimal cost is the sum over internal nodes of
    edge length times the absolute mass imbalance below the node.  Both
    cost variants (0 or the cylinder diameter on equal words) are of this
    form, which gives exact values for the certified interval.
    """
    k = p.depth
    theta = params.base
    tv = _prefix_tv_profile(p, q)
    level = [(theta ** (j - 1) - theta ** j) / 2.0 for j in range(1, k + 1)]
    hi = theta ** k + sum(c * d for c, d in zip(level, tv))
    lo_level = level[:-1] + [theta ** (k - 1) / 2.0]
    lo = sum(c * d for c, d in zip(lo_level, tv))
    return W1Interval(lo=lo, hi=hi)


def _w1_lp_value(
    p: WordDistribution, q: WordDistribution, params: MetricParams, diagonal: float
) -> float:
    from scipy.optimize import linprog
    from scipy import sparse

    words = p.words
    n = len(words)
    if n > LP_WORD_CAP:
        raise CapExceededError(
            f"dense Kantorovich LP limited to {LP_WORD_CAP} words, got {n}"
        )
    cost = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            cost[i, j] = diagonal if i == j else word_metric(words[i], words[j], params)
    row_idx, col_idx, data = [], [], []
    for i in range(n):
        for j in range(n):
            var = i * n + j
            row_idx.append(i)
            col_idx.append(var)
            data.append(1.0)
            row_idx.append(n + j)
            col_idx.append(var)
            data.append(1.0)
    A_eq = sparse.coo_matrix((data, (row_idx, col_idx)), shape=(2 * n, n * n))
    b_eq = np.concatenate([p.weights, q.weights])
    res = linprog(cost.ravel(), A_eq=A_eq.tocsr(), b_eq=b_eq, bounds=(0, None), method="highs")
    if not res.success:
        raise SolverError(f"Kantorovich LP failed: {res.message}")
    return float(res.fun)


def wasserstein1_words(
    p: WordDistribution,
    q: WordDistribution,
    params: MetricParams = DEFAULT_METRIC,
    method: str = "tree",
) -> W1Interval:
    """Certified W1 interval between two word distributions of equal depth.

    No invariance is assumed of either input.  ``method='tree'`` evaluates
    the exact closed form on the prefix tree; ``method='lp'`` solves the
    primal Kantorovich LP twice (lower and upper ground costs) and exists
    as an independent route for verification at small depths.
    """
    _check_spec_match(p.spec, q.spec, "wasserstein1")
    if p.depth != q.depth:
        raise InvariantError("word distributions must share a depth")
    if method == "tree":
        return _w1_tree(p, q, params)
    if method == "lp":
        lo = _w1_lp_value(p, q, params, diagonal=0.0)
        hi = _w1_lp_value(p, q, params, diagonal=params.cylinder_diameter(p.depth))
        return W1Interval(lo=lo, hi=hi)
    raise ValueError(f"unknown wasserstein method {method!r}")


def wasserstein1(
    mu: MarkovMeasure,
    nu: MarkovMeasure,
    depth: int,
    params: MetricParams = DEFAULT_METRIC,
    method: str = "tree",
) -> W1Interval:
    """W1 interval between the depth-k marginals of two invariant measures."""
    _check_spec_match(mu.spec, nu.spec, "wasserstein1")
    return wasserstein1_words(marginal(mu, depth), marginal(nu, depth), params, method)


# ---------------------------------------------------------------------------
# Serialization


def measure_to_dict(mu: MarkovMeasure) -> dict:
    succ = mu.spec.successors(mu.order)
    P_doc: dict[str, dict[str, float]] = {}
    for i, w in enumerate(mu.words):
        P_doc[word_to_str(w)] = {
            str(b): float(mu.P[i, b])
            for b in range(mu.spec.alphabet_size)
            if succ[i, b] >= 0
        }
    return {
        "d": mu.spec.alphabet_size,
        "order": mu.order,
        "pi": {word_to_str(w): float(x) for w, x in zip(mu.words, mu.pi)},
        "P": P_doc,
    }


def measure_from_dict(doc: Mapping, spec: ShiftSpec | None = None) -> MarkovMeasure:
    from .errors import SchemaError

    for key in ("d", "order", "pi", "P"):
        if key not in doc:
            raise SchemaError(f"measure document missing key {key!r}")
    d = int(doc["d"])
    order = int(doc["order"])
    if spec is None:
        spec = ShiftSpec(d, order)
    elif spec.alphabet_size != d:
        raise SchemaError("measure document alphabet size does not match the target spec")
    words = spec.words(order)
    index = spec.word_index(order)
    pi = np.zeros(len(words))
    seen = set()
    for text, value in doc["pi"].items():
        w = str_to_word(text, d)
        if w not in index:
            raise SchemaError(f"pi names a disallowed word {text!r}")
        pi[index[w]] = float(value)
        seen.add(w)
    if seen != set(words):
        raise SchemaError("pi must name every allowed word exactly once")
    P = np.zeros((len(words), d))
    for text, row in doc["P"].items():
        w = str_to_word(text, d)
        if w not in index:
            raise SchemaError(f"P names a disallowed word {text!r}")
        for sym_text, value in row.items():
            b = int(sym_text)
            if b < 0 or b >= d:
                raise SchemaError(f"P row {text!r} names an out-of-range symbol {sym_text!r}")
            P[index[w], b] = float(value)
    return MarkovMeasure(spec, order, pi, P)


def markov_from_word_distribution(dist: WordDistribution) -> MarkovMeasure:
    """Canonical Markov extension of a shift-consistent word distribution.

    Depth-1 distributions extend to Bernoulli; deeper ones become order
    ``depth - 1`` chains with the conditional next-symbol transitions.
    Raises when the distribution is not shift-consistent (prefix and suffix
    marginals must agree, which characterizes invariant projections).
    """
    spec, k = dist.spec, dist.depth
    if k == 1:
        if not spec.is_full_shift:
            raise InvariantError("depth-1 extension requires the full shift")
        return bernoulli(spec, dist.weights)
    pre = dist.prefix_marginal()
    suf = dist.suffix_marginal()
    if np.abs(pre.weights - suf.weights).sum() > STATIONARITY_TOL:
        raise InvariantError("distribution is not shift-consistent; no invariant extension")
    order = k - 1
    words = spec.words(order)
    index = spec.word_index(order)
    index_k = spec.word_index(k)
    pi = pre.weights.copy()
    P = _uniform_rows(spec, order)
    for i, w in enumerate(words):
        if pi[i] <= 0.0:
            continue
        row = np.zeros(spec.alphabet_size)
        for b in range(spec.alphabet_size):
            full = w + (b,)
            if full in index_k:
                row[b] = dist.weights[index_k[full]]
        P[i] = row / row.sum()
    return MarkovMeasure(spec, order, pi, P)
