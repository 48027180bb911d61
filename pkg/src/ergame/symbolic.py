"""Finite symbolic dynamics substrate.

Words over a finite alphabet, the shift metric, locally constant potentials
stored as finite tables, and their Lipschitz / mixed-difference constants.

Conventions fixed here and relied on everywhere else:

* Symbols are integers ``0..d-1``; a word is a tuple of symbols.
* ``enumerate_words`` returns words in lexicographic order and every
  matrix, vector and LP in the package indexes by that order.
* The metric between one-sided sequences is ``theta**(N-1)`` where ``N``
  is the 1-based position of the first differing symbol and ``theta``
  defaults to 1/2.  Two sequences sharing a length-k prefix are at
  distance at most ``theta**k`` (the cylinder diameter).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .config import word_cap
from .errors import CapExceededError, InvariantError, SpecMismatchError

Word = tuple[int, ...]
Symbol = int
TransitionPredicate = Callable[[Word, Symbol], bool]

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def word_to_str(word: Word) -> str:
    """Render a word as a digit string (base-36 symbols, so d <= 36)."""
    return "".join(_DIGITS[s] for s in word)


def str_to_word(text: str, alphabet_size: int) -> Word:
    word = tuple(_DIGITS.index(ch) for ch in text.lower())
    if any(s >= alphabet_size for s in word):
        raise InvariantError(f"word {text!r} uses symbols outside alphabet of size {alphabet_size}")
    return word


@dataclass(frozen=True)
class MetricParams:
    """Shift-metric convention: d(x, x') = base**(N-1), N = first disagreement.

    The diameter of the space is 1 and the diameter of a depth-k cylinder
    is ``base**k``.
    """

    base: float = 0.5

    def __post_init__(self) -> None:
        if not (0.0 < self.base < 1.0):
            raise InvariantError("metric base must lie in (0, 1)")

    def cylinder_diameter(self, depth: int) -> float:
        return self.base ** depth


DEFAULT_METRIC = MetricParams()


@dataclass(frozen=True, eq=False)
class ShiftSpec:
    """A full shift on ``alphabet_size`` symbols, or a transition-restricted one.

    ``allowed(context, symbol)`` decides whether ``symbol`` may follow the
    (possibly shorter than ``order``) context word; ``None`` means the full
    shift.  On construction the de Bruijn graph on length-``order`` words is
    required to be strongly connected with no dead ends, which guarantees
    irreducible stationary chains and unique Perron data downstream.
    """

    alphabet_size: int
    order: int = 1
    allowed: TransitionPredicate | None = None

    def __post_init__(self) -> None:
        if self.alphabet_size < 2:
            raise InvariantError("alphabet_size must be at least 2")
        if self.order < 1:
            raise InvariantError("order must be at least 1")
        object.__setattr__(self, "_word_cache", {})
        object.__setattr__(self, "_succ_cache", {})
        self._validate_connectivity()

    @property
    def is_full_shift(self) -> bool:
        return self.allowed is None

    def allows(self, context: Word, symbol: Symbol) -> bool:
        if self.allowed is None:
            return True
        return bool(self.allowed(context, symbol))

    def words(self, depth: int) -> list[Word]:
        """Allowed words of the given depth, lexicographically ordered."""
        if depth < 1:
            raise InvariantError("word depth must be at least 1")
        cache: dict[int, list[Word]] = self._word_cache  # type: ignore[attr-defined]
        if depth in cache:
            return cache[depth]
        cap = word_cap()
        if self.is_full_shift:
            if self.alphabet_size ** depth > cap:
                raise CapExceededError(
                    f"{self.alphabet_size}^{depth} words exceed the cap of {cap}"
                )
            words = [tuple(w) for w in itertools.product(range(self.alphabet_size), repeat=depth)]
        else:
            words = [()]
            for _ in range(depth):
                words = [
                    w + (b,)
                    for w in words
                    for b in range(self.alphabet_size)
                    if self.allows(w, b)
                ]
                if len(words) > cap:
                    raise CapExceededError(f"allowed word count exceeds the cap of {cap}")
        cache[depth] = words
        return words

    def word_index(self, depth: int) -> dict[Word, int]:
        key = -depth
        cache: dict[int, dict[Word, int]] = self._word_cache  # type: ignore[attr-defined]
        if key not in cache:
            cache[key] = {w: i for i, w in enumerate(self.words(depth))}
        return cache[key]

    def successors(self, depth: int) -> np.ndarray:
        """Index map of de Bruijn successors at the given depth.

        Entry ``[i, b]`` is the index of ``w[1:] + (b,)`` among depth words,
        or -1 when the transition is disallowed.
        """
        cache: dict[int, np.ndarray] = self._succ_cache  # type: ignore[attr-defined]
        if depth in cache:
            return cache[depth]
        words = self.words(depth)
        index = self.word_index(depth)
        succ = np.full((len(words), self.alphabet_size), -1, dtype=np.int64)
        for i, w in enumerate(words):
            for b in range(self.alphabet_size):
                if not self.allows(w, b):
                    continue
                target = w[1:] + (b,)
                j = index.get(target)
                if j is not None:
                    succ[i, b] = j
        succ.setflags(write=False)
        cache[depth] = succ
        return cache[depth]

    def _validate_connectivity(self) -> None:
        import networkx as nx

        words = self.words(self.order)
        if not words:
            raise InvariantError("transition predicate admits no words at the working order")
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(words)))
        succ = self.successors(self.order)
        for i in range(len(words)):
            for j in succ[i]:
                if j >= 0:
                    graph.add_edge(i, int(j))
        if any(graph.out_degree(i) == 0 for i in graph.nodes):
            raise InvariantError("de Bruijn graph has a dead-end word; shift space is empty there")
        if not nx.is_strongly_connected(graph):
            raise InvariantError("de Bruijn graph on working-order words is not strongly connected")


def enumerate_words(spec: ShiftSpec, depth: int) -> list[Word]:
    """Complete, lexicographically ordered list of allowed length-``depth`` words."""
    return spec.words(depth)


def word_metric(w: Word, w2: Word, params: MetricParams = DEFAULT_METRIC) -> float:
    """Distance between the cylinders of two equal-length words.

    Exact when the words differ.  For equal words the true distance between
    infinite extensions is anywhere in ``[0, base**k]``; the upper bound is
    returned, and exact zero is only the caller's to assert when tails are
    known identical.
    """
    if len(w) != len(w2):
        raise InvariantError(f"word length mismatch: {len(w)} vs {len(w2)}")
    for i, (a, b) in enumerate(zip(w, w2)):
        if a != b:
            return params.base ** i
    return params.base ** len(w)


def _check_spec_match(a: "ShiftSpec", b: "ShiftSpec", what: str) -> None:
    if a is not b and (a.alphabet_size != b.alphabet_size or a.allowed is not b.allowed):
        raise SpecMismatchError(f"{what}: shift specs do not match")


@dataclass(frozen=True, eq=False)
class CylinderFunction:
    """Locally constant potential: one real value per allowed depth-k word."""

    spec: ShiftSpec
    depth: int
    table: Mapping[Word, float]

    def __post_init__(self) -> None:
        words = self.spec.words(self.depth)
        table = {tuple(w): float(v) for w, v in self.table.items()}
        expected = set(words)
        got = set(table)
        if got != expected:
            missing = sorted(expected - got)[:3]
            extra = sorted(got - expected)[:3]
            raise InvariantError(
                "cylinder table must cover exactly the allowed words"
                + (f"; missing {missing}" if missing else "")
                + (f"; unexpected {extra}" if extra else "")
            )
        values = np.array([table[w] for w in words], dtype=float)
        if not np.all(np.isfinite(values)):
            raise InvariantError("cylinder table contains non-finite entries")
        values.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_values", values)

    @classmethod
    def from_values(cls, spec: ShiftSpec, depth: int, values: Sequence[float]) -> "CylinderFunction":
        words = spec.words(depth)
        if len(values) != len(words):
            raise InvariantError("value vector length does not match the word count")
        return cls(spec, depth, dict(zip(words, map(float, values))))

    @classmethod
    def constant(cls, spec: ShiftSpec, depth: int, value: float) -> "CylinderFunction":
        return cls(spec, depth, {w: value for w in spec.words(depth)})

    @property
    def values(self) -> np.ndarray:
        return self._values  # type: ignore[attr-defined]

    @property
    def words(self) -> list[Word]:
        return self.spec.words(self.depth)

    def __call__(self, word: Word) -> float:
        """Value on the cylinder of ``word`` (longer words read their prefix)."""
        if len(word) < self.depth:
            raise InvariantError("word shorter than the table depth")
        return self.table[tuple(word[: self.depth])]

    def shifted(self, constant: float) -> "CylinderFunction":
        return CylinderFunction.from_values(self.spec, self.depth, self.values + constant)

    def scaled(self, factor: float) -> "CylinderFunction":
        return CylinderFunction.from_values(self.spec, self.depth, self.values * factor)


@dataclass(frozen=True, eq=False)
class JointCylinderFunction:
    """Two-variable locally constant potential, a table over word pairs."""

    spec_x: ShiftSpec
    spec_y: ShiftSpec
    depth_x: int
    depth_y: int
    table: Mapping[tuple[Word, Word], float]

    def __post_init__(self) -> None:
        words_x = self.spec_x.words(self.depth_x)
        words_y = self.spec_y.words(self.depth_y)
        table = {(tuple(wx), tuple(wy)): float(v) for (wx, wy), v in self.table.items()}
        expected = {(wx, wy) for wx in words_x for wy in words_y}
        if set(table) != expected:
            raise InvariantError("joint table must cover exactly the allowed word pairs")
        matrix = np.array(
            [[table[(wx, wy)] for wy in words_y] for wx in words_x], dtype=float
        )
        if not np.all(np.isfinite(matrix)):
            raise InvariantError("joint table contains non-finite entries")
        matrix.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_matrix", matrix)

    @classmethod
    def from_matrix(
        cls,
        spec_x: ShiftSpec,
        spec_y: ShiftSpec,
        depth_x: int,
        depth_y: int,
        matrix: Sequence[Sequence[float]],
    ) -> "JointCylinderFunction":
        words_x = spec_x.words(depth_x)
        words_y = spec_y.words(depth_y)
        arr = np.asarray(matrix, dtype=float)
        if arr.shape != (len(words_x), len(words_y)):
            raise InvariantError("matrix shape does not match the word counts")
        table = {
            (wx, wy): float(arr[i, j])
            for i, wx in enumerate(words_x)
            for j, wy in enumerate(words_y)
        }
        return cls(spec_x, spec_y, depth_x, depth_y, table)

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix  # type: ignore[attr-defined]

    @property
    def words_x(self) -> list[Word]:
        return self.spec_x.words(self.depth_x)

    @property
    def words_y(self) -> list[Word]:
        return self.spec_y.words(self.depth_y)

    def __call__(self, wx: Word, wy: Word) -> float:
        return self.table[(tuple(wx[: self.depth_x]), tuple(wy[: self.depth_y]))]

    def transpose(self) -> "JointCylinderFunction":
        return JointCylinderFunction.from_matrix(
            self.spec_y, self.spec_x, self.depth_y, self.depth_x, self.matrix.T
        )

    def scaled(self, factor: float) -> "JointCylinderFunction":
        return JointCylinderFunction.from_matrix(
            self.spec_x, self.spec_y, self.depth_x, self.depth_y, self.matrix * factor
        )

    def shifted(self, constant: float) -> "JointCylinderFunction":
        return JointCylinderFunction.from_matrix(
            self.spec_x, self.spec_y, self.depth_x, self.depth_y, self.matrix + constant
        )

    def x_slices_lipschitz_bound(self, params: MetricParams = DEFAULT_METRIC) -> float:
        """max over x-words of the Lipschitz constant of y -> A(x, y)."""
        return max(
            _lipschitz_of_values(self.spec_y, self.depth_y, row, params)
            for row in self.matrix
        )

    def y_slices_lipschitz_bound(self, params: MetricParams = DEFAULT_METRIC) -> float:
        """max over y-words of the Lipschitz constant of x -> A(x, y)."""
        return max(
            _lipschitz_of_values(self.spec_x, self.depth_x, col, params)
            for col in self.matrix.T
        )


def _lipschitz_of_values(
    spec: ShiftSpec, depth: int, values: np.ndarray, params: MetricParams
) -> float:
    """Lipschitz constant of a locally constant table on sequence space.

    Equals ``max`` over prefix groups ``u`` of ``(max - min under u) / base**|u|``:
    a pair attaining the sup first disagrees right after its longest common
    prefix, and the word metric is exact there.
    """
    words = spec.words(depth)
    values = np.asarray(values, dtype=float)
    best = 0.0
    for j in range(depth):
        scale = params.base ** j
        start = 0
        n = len(words)
        while start < n:
            stop = start + 1
            prefix = words[start][:j]
            while stop < n and words[stop][:j] == prefix:
                stop += 1
            block = values[start:stop]
            # Any pair first disagreeing at position j+1 is bounded by this
            # block's range; conversely the extremal pair of the block shares
            # a prefix of length >= j, so its own ratio is at least range/base**j.
            if stop - start > 1:
                spread = float(block.max() - block.min())
                if spread > 0.0:
                    best = max(best, spread / scale)
            start = stop
    return best


def lipschitz_constant(psi: CylinderFunction, params: MetricParams = DEFAULT_METRIC) -> float:
    """Lipschitz constant of ``psi`` as a function on sequence space.

    The supremum over pairs of sequences is attained on cylinder
    representatives, so a finite maximization over word pairs is exact.
    """
    return _lipschitz_of_values(psi.spec, psi.depth, psi.values, params)


def pairwise_word_distances(
    spec: ShiftSpec, depth: int, params: MetricParams = DEFAULT_METRIC
) -> np.ndarray:
    """Dense matrix of exact distances between distinct depth-k words (0 on the diagonal)."""
    words = spec.words(depth)
    n = len(words)
    out = np.zeros((n, n), dtype=float)
    for i in range(n):
        for j in range(i + 1, n):
            d = word_metric(words[i], words[j], params)
            out[i, j] = d
            out[j, i] = d
    return out


def mixed_constant(A: JointCylinderFunction, params: MetricParams = DEFAULT_METRIC) -> float:
    """Smallest C with |A(x,y) - A(x',y) - A(x,y') + A(x',y')| <= C d(x,x') d(y,y').

    Brute force over word pairs; for each x-pair the inner maximization over
    y-pairs is the Lipschitz constant of the difference row.
    """
    words_x = A.words_x
    matrix = A.matrix
    best = 0.0
    for i in range(len(words_x)):
        for j in range(i + 1, len(words_x)):
            dx = word_metric(words_x[i], words_x[j], params)
            row = matrix[i] - matrix[j]
            inner = _lipschitz_of_values(A.spec_y, A.depth_y, row, params)
            if inner > 0.0:
                best = max(best, inner / dx)
    return best


def refine(psi: CylinderFunction, depth: int) -> CylinderFunction:
    """Re-express ``psi`` at a greater depth; integration against any measure is unchanged."""
    if depth < psi.depth:
        raise InvariantError(f"cannot refine from depth {psi.depth} down to {depth}")
    if depth == psi.depth:
        return psi
    table = {w: psi.table[w[: psi.depth]] for w in psi.spec.words(depth)}
    return CylinderFunction(psi.spec, depth, table)


def refine_joint(A: JointCylinderFunction, depth_x: int, depth_y: int) -> JointCylinderFunction:
    """Joint-table analogue of :func:`refine`, acting on both coordinates."""
    if depth_x < A.depth_x or depth_y < A.depth_y:
        raise InvariantError("cannot refine a joint table to a smaller depth")
    if depth_x == A.depth_x and depth_y == A.depth_y:
        return A
    table = {
        (wx, wy): A.table[(wx[: A.depth_x], wy[: A.depth_y])]
        for wx in A.spec_x.words(depth_x)
        for wy in A.spec_y.words(depth_y)
    }
    return JointCylinderFunction(A.spec_x, A.spec_y, depth_x, depth_y, table)
