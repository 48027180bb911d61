"""Best response with entropy: transfer matrix, Perron data, Gibbs chain.

For a locally constant potential of depth m+1 the weighted transfer
operator acts on depth-m tables as a finite nonnegative matrix.  Its
Perron data yields the pressure (log of the leading eigenvalue), a
normalized potential whose exponential sums to one over preimages, and the
unique invariant measure attaining ``integral + entropy = pressure``.

Matrix orientation: ``M[target, source] = exp(psi(source_word + new_symbol))``,
i.e. the operator acts on column vectors of word values.  With this
orientation the stochasticized chain uses the left Perron vector:
``P(w -> w') = M[w', w] * l(w') / (lambda * l(w))``, which is the unique
row-stochastic rescaling; the stationary law is the normalized entrywise
product of left and right Perron vectors.  The variational identity and
Gibbs maximality checks pin the construction regardless of orientation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import (
    EIGEN_RESIDUAL_TOL,
    RAYLEIGH_TOL,
    VARIATIONAL_TOL,
    word_cap,
)
from .errors import CapExceededError, ConvergenceError, InvariantError
from .measures import MarkovMeasure, entropy, integrate, induced_potential_x, induced_potential_y
from .symbolic import CylinderFunction, JointCylinderFunction, ShiftSpec, Word, refine


@dataclass(frozen=True, eq=False)
class TransferMatrix:
    """Nonnegative irreducible matrix of a depth-(m+1) potential."""

    spec: ShiftSpec
    order: int
    matrix: np.ndarray  # indexed [target word, source word]

    @property
    def words(self) -> list[Word]:
        return self.spec.words(self.order)


def transfer_matrix(psi: CylinderFunction, order: int | None = None) -> TransferMatrix:
    """Entry [w', w] holds exp(psi(w + b)) when w' follows w by appending b."""
    m = max(1, psi.depth - 1) if order is None else order
    if m + 1 < psi.depth:
        raise InvariantError("order too small for the potential depth")
    spec = psi.spec
    nodes = spec.words(m)
    if len(spec.words(m + 1)) > word_cap():
        raise CapExceededError("transfer matrix edge count exceeds the word cap")
    index = spec.word_index(m)
    psi_e = refine(psi, m + 1)
    M = np.zeros((len(nodes), len(nodes)))
    for w, value in zip(spec.words(m + 1), psi_e.values):
        M[index[w[1:]], index[w[:-1]]] = math.exp(value)
    M.setflags(write=False)
    return TransferMatrix(spec, m, M)


def perron(
    M: TransferMatrix | np.ndarray,
    rayleigh_tol: float = RAYLEIGH_TOL,
    max_iter: int = 100_000,
) -> tuple[float, np.ndarray, np.ndarray]:
    """Leading eigenvalue with positive right and left eigenvectors.

    Power iteration from the all-ones vector on ``M + I`` (same
    eigenvectors, eigenvalue shifted by one), which is primitive whenever
    ``M`` is irreducible, so periodic de Bruijn graphs cannot stall it.
    Stops once successive Rayleigh quotients agree to ``rayleigh_tol`` and
    the eigen-residual is small relative to each component; componentwise
    accuracy is what the downstream stochasticization divides by, so an
    absolute residual alone would let small entries drift.
    """
    A = M.matrix if isinstance(M, TransferMatrix) else np.asarray(M, dtype=float)
    n = A.shape[0]
    shifted = A + np.eye(n)

    def iterate(mat: np.ndarray) -> np.ndarray:
        v = np.ones(n)
        lam_prev = 0.0
        for _ in range(max_iter):
            w = mat @ v
            total = w.sum()
            if total <= 0.0 or not np.isfinite(total):
                raise ConvergenceError("power iteration collapsed or overflowed")
            w = w / total
            lam = float(w @ (mat @ w)) / float(w @ w)
            residual = float(np.max(np.abs(mat @ w - lam * w) / (lam * np.abs(w) + 1e-300)))
            v = w
            if abs(lam - lam_prev) <= rayleigh_tol * max(1.0, abs(lam)) and residual <= 1e-12:
                return v
            lam_prev = lam
        raise ConvergenceError("power iteration did not converge within the budget")

    h = iterate(shifted)
    l = iterate(shifted.T)
    lam = float(h @ (A @ h)) / float(h @ h)
    h = h / h.max()
    l = l / l.sum()
    if h.min() <= 0.0 or l.min() <= 0.0:
        raise ConvergenceError("Perron vectors are not strictly positive")
    return lam, h, l


@dataclass(frozen=True, eq=False)
class GibbsResult:
    """Perron data, pressure, normalized potential and the Gibbs chain."""

    lam: float
    pressure: float
    h_eig: np.ndarray
    l_eig: np.ndarray
    gibbs: MarkovMeasure
    normalized_potential: CylinderFunction
    variational_residual: float

    @property
    def order(self) -> int:
        return self.gibbs.order


def gibbs_measure(psi: CylinderFunction, order: int | None = None) -> GibbsResult:
    """Equilibrium measure, pressure and normalized potential of ``psi``.

    The potential is shifted by its maximum before exponentiation for
    numerical range; the shift is added back to the pressure.  Built-in
    self-checks: the normalized potential exponentials sum to one over
    preimages, the chain entropy agrees with pressure minus the integral,
    and the variational identity holds to ``VARIATIONAL_TOL``.
    """
    m = max(1, psi.depth - 1) if order is None else order
    psi_e = refine(psi, m + 1)
    shift = float(psi_e.values.max())
    psi_shift = psi_e.shifted(-shift)
    T = transfer_matrix(psi_shift, m)
    lam_s, h, l = perron(T)
    pressure = math.log(lam_s) + shift
    lam = math.exp(pressure)

    spec = psi.spec
    nodes = spec.words(m)
    index = spec.word_index(m)
    succ = spec.successors(m)
    n, d = len(nodes), spec.alphabet_size
    P = np.zeros((n, d))
    log_h = np.log(h)
    log_lam_s = math.log(lam_s)
    normalized_table: dict[Word, float] = {}
    for w, value in zip(spec.words(m + 1), psi_shift.values):
        src = index[w[:-1]]
        tgt = index[w[1:]]
        P[src, w[-1]] = T.matrix[tgt, src] * l[tgt] / (lam_s * l[src])
        normalized_table[w] = float(value + log_h[src] - log_h[tgt] - log_lam_s)
    row_sums = P.sum(axis=1)
    if np.max(np.abs(row_sums - 1.0)) > 1e-9:
        raise ConvergenceError("stochasticized transfer rows do not sum to 1")
    P = P / row_sums[:, None]

    pi = h * l
    pi = pi / pi.sum()
    gibbs = MarkovMeasure(spec, m, pi, P)

    normalized = CylinderFunction(spec, m + 1, normalized_table)
    # exp-sum normalization: sum over preimages of exp(psi_bar) is 1 per word
    pre_sums = np.zeros(n)
    for w, value in normalized.table.items():
        pre_sums[index[w[1:]]] += math.exp(value)
    if np.max(np.abs(pre_sums - 1.0)) > 1e-9:
        raise ConvergenceError("normalized potential fails exp-sum normalization")

    h_mu = entropy(gibbs)
    integral = integrate(psi_e, gibbs)
    residual = abs(integral + h_mu - pressure)
    if residual > VARIATIONAL_TOL:
        raise ConvergenceError(
            f"variational identity residual {residual:.3e} exceeds {VARIATIONAL_TOL}"
        )
    cross = abs(h_mu - (-integrate(normalized, gibbs)))
    if cross > VARIATIONAL_TOL:
        raise ConvergenceError(
            f"entropy cross-check residual {cross:.3e} exceeds {VARIATIONAL_TOL}"
        )

    return GibbsResult(
        lam=lam,
        pressure=pressure,
        h_eig=h,
        l_eig=l,
        gibbs=gibbs,
        normalized_potential=normalized,
        variational_residual=residual,
    )


def br_thermo(
    A: JointCylinderFunction, other: MarkovMeasure, side: str, order: int | None = None
) -> GibbsResult:
    """Entropy-penalized best response: the Gibbs measure of the induced potential.

    ``side='x'`` responds to the y-player's measure, ``side='y'`` to the
    x-player's.  Single-valued by uniqueness of equilibrium measures, so no
    multiplicity flag exists in this mode.
    """
    if side == "x":
        psi = induced_potential_x(A, other)
    elif side == "y":
        psi = induced_potential_y(A, other)
    else:
        raise ValueError("side must be 'x' or 'y'")
    return gibbs_measure(psi, order)


def gibbs_result_to_dict(result: GibbsResult) -> dict:
    from .measures import measure_to_dict

    return {
        "lambda": result.lam,
        "pressure": result.pressure,
        "variational_residual": result.variational_residual,
        "measure": measure_to_dict(result.gibbs),
    }
