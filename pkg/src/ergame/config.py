"""Caps and numeric tolerances.

All tolerances are module-level defaults; operations that validate data
take keyword overrides where finer control is useful.  The word-count cap
guards every enumeration of cylinder words against exponential blowup and
can be raised through the ERGAME_WORD_CAP environment variable.
"""

import os

WORD_CAP_ENV = "ERGAME_WORD_CAP"
DEFAULT_WORD_CAP = 1 << 16

# Probability mass / row-stochasticity checks.
MASS_TOL = 1e-12
# Stationarity and marginal-consistency checks.
STATIONARITY_TOL = 1e-10
# LP feasibility/optimality slack used when reading solver output.
LP_TOL = 1e-9
# Threshold below which an LP variable counts as zero for support probes.
LP_ZERO_TOL = 1e-9
# Power iteration: successive Rayleigh quotient agreement.
RAYLEIGH_TOL = 1e-13
# Relative eigen-residual required of returned Perron data.
EIGEN_RESIDUAL_TOL = 1e-10
# |integral + entropy - pressure| allowed on a Gibbs measure.
VARIATIONAL_TOL = 1e-8
# Dense-cost Kantorovich LP is only attempted up to this many words.
LP_WORD_CAP = 256


def word_cap() -> int:
    """Active word-count cap (environment override wins)."""
    raw = os.environ.get(WORD_CAP_ENV)
    if raw is None:
        return DEFAULT_WORD_CAP
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{WORD_CAP_ENV} must be an integer, got {raw!r}") from exc
    if value < 2:
        raise ValueError(f"{WORD_CAP_ENV} must be at least 2, got {value}")
    return value
