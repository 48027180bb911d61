import itertools

import numpy as np
import pytest

from ergame import (
    CylinderFunction,
    ShiftSpec,
    bernoulli,
    dirac_fixed_point,
    integrate,
    integrate_product,
    lipschitz_constant,
    marginal,
    random_markov,
    uniform_bernoulli,
    wasserstein1,
    wasserstein1_words,
    word_metric,
)
from ergame.measures import WordDistribution

from conftest import golden_mean_spec, random_cylinder, random_joint


def dual_lp_lower(p: WordDistribution, q: WordDistribution) -> float:
    """Kantorovich dual: maximize sum phi (p - q) over 1-Lipschitz phi.

    Independent of the primal and of the tree closed form.
    """
    from scipy.optimize import linprog

    words = p.words
    n = len(words)
    delta = p.weights - q.weights
    rows = []
    rhs = []
    for i, j in itertools.permutations(range(n), 2):
        row = np.zeros(n)
        row[i] = 1.0
        row[j] = -1.0
        rows.append(row)
        rhs.append(word_metric(words[i], words[j]))
    res = linprog(
        -delta, A_ub=np.array(rows), b_ub=np.array(rhs), bounds=(None, None), method="highs"
    )
    assert res.success
    return float(-res.fun)


# --- pinned examples ---------------------------------------------------------


def test_identical_measures(spec2, rng):
    mu = random_markov(spec2, 1, rng)
    res = wasserstein1(mu, mu, 3)
    assert res.lo == 0.0
    assert res.hi == pytest.approx(2.0 ** -3, abs=1e-15)


def test_dirac_vs_dirac_distance_one(spec2):
    d0 = dirac_fixed_point(spec2, 0)
    d1 = dirac_fixed_point(spec2, 1)
    res = wasserstein1(d0, d1, 1)
    assert res.lo == 1.0 and res.hi == 1.0
    lp = wasserstein1(d0, d1, 1, method="lp")
    assert lp.lo == pytest.approx(1.0, abs=1e-12)
    assert lp.hi == pytest.approx(1.0, abs=1e-12)


def test_bernoulli_half_vs_three_quarters_depth3(spec2):
    # frozen from the prefix-tree oracle; cross-checked against the primal
    # LP and the Kantorovich dual below
    mu = bernoulli(spec2, [0.5, 0.5])
    nu = bernoulli(spec2, [0.25, 0.75])
    tree = wasserstein1(mu, nu, 3)
    assert tree.lo == pytest.approx(37 / 128, abs=1e-15)
    assert tree.hi == pytest.approx(95 / 256, abs=1e-15)
    lp = wasserstein1(mu, nu, 3, method="lp")
    assert lp.lo == pytest.approx(tree.lo, abs=1e-9)
    assert lp.hi == pytest.approx(tree.hi, abs=1e-9)
    dual = dual_lp_lower(marginal(mu, 3), marginal(nu, 3))
    assert dual == pytest.approx(tree.lo, abs=1e-9)


# --- interval and metric properties -----------------------------------------


def test_interval_ordering_and_gap(spec2, rng):
    for _ in range(20):
        mu = random_markov(spec2, 1, rng)
        nu = random_markov(spec2, 1, rng)
        k = int(rng.integers(1, 5))
        res = wasserstein1(mu, nu, k)
        assert res.lo <= res.hi + 1e-15
        assert res.hi - res.lo <= 2.0 ** -k + 1e-15


def test_tree_equals_lp_on_random_instances(spec2, spec3, rng):
    for spec in (spec2, spec3):
        for _ in range(10):
            mu = random_markov(spec, 1, rng)
            nu = random_markov(spec, 1, rng)
            k = int(rng.integers(1, 4))
            tree = wasserstein1(mu, nu, k)
            lp = wasserstein1(mu, nu, k, method="lp")
            assert tree.lo == pytest.approx(lp.lo, abs=1e-9)
            assert tree.hi == pytest.approx(lp.hi, abs=1e-9)


def test_tree_equals_lp_on_restricted_shift(rng):
    spec = golden_mean_spec()
    for _ in range(5):
        mu = random_markov(spec, 1, rng)
        nu = random_markov(spec, 1, rng)
        tree = wasserstein1(mu, nu, 3)
        lp = wasserstein1(mu, nu, 3, method="lp")
        assert tree.lo == pytest.approx(lp.lo, abs=1e-9)
        assert tree.hi == pytest.approx(lp.hi, abs=1e-9)


def test_dual_matches_primal_randomly(spec2, rng):
    for _ in range(5):
        mu = random_markov(spec2, 1, rng)
        nu = random_markov(spec2, 1, rng)
        res = wasserstein1(mu, nu, 2)
        dual = dual_lp_lower(marginal(mu, 2), marginal(nu, 2))
        assert dual == pytest.approx(res.lo, abs=1e-9)


def test_symmetry_and_triangle_on_hi(spec2, rng):
    for _ in range(10):
        mu, nu, eta = (random_markov(spec2, 1, rng) for _ in range(3))
        k = 3
        ab = wasserstein1(mu, nu, k)
        ba = wasserstein1(nu, mu, k)
        assert ab.lo == pytest.approx(ba.lo, abs=1e-12)
        assert ab.hi == pytest.approx(ba.hi, abs=1e-12)
        ac = wasserstein1(mu, eta, k).hi
        cb = wasserstein1(eta, nu, k).hi
        assert ab.hi <= ac + cb + 1e-12


def test_word_distribution_inputs_without_invariance(spec2):
    # non shift-consistent inputs are fine for the distance itself
    p = WordDistribution(spec2, 2, np.array([0.7, 0.3, 0.0, 0.0]))
    q = WordDistribution(spec2, 2, np.array([0.0, 0.0, 0.2, 0.8]))
    res = wasserstein1_words(p, q)
    assert res.lo == pytest.approx(1.0, abs=1e-15)  # first symbols always differ
    lp = wasserstein1_words(p, q, method="lp")
    assert lp.lo == pytest.approx(res.lo, abs=1e-9)


# --- integral comparison inequalities ----------------------------------------


def test_lipschitz_times_w1_bounds_integral_gap(spec2, rng):
    for _ in range(30):
        k = int(rng.integers(1, 4))
        psi = random_cylinder(spec2, k, rng)
        mu = random_markov(spec2, 1, rng)
        nu = random_markov(spec2, 1, rng)
        gap = abs(integrate(psi, mu) - integrate(psi, nu))
        bound = lipschitz_constant(psi) * wasserstein1(mu, nu, k).hi
        assert gap <= bound + 1e-10


def test_product_integral_continuity(spec2, rng):
    # perturbation sequences: the product integral moves by at most the
    # slice-Lipschitz bounds times the certified distances
    A = random_joint(spec2, spec2, 2, 2, rng)
    lip_x = A.y_slices_lipschitz_bound()
    lip_y = A.x_slices_lipschitz_bound()
    mu = random_markov(spec2, 1, rng)
    nu = random_markov(spec2, 1, rng)
    for t in [0.5, 0.1, 0.02]:
        mu_t = _perturb(mu, t)
        nu_t = _perturb(nu, t)
        gap = abs(integrate_product(A, mu_t, nu_t) - integrate_product(A, mu, nu))
        bound = (
            lip_x * wasserstein1(mu_t, mu, 2).hi + lip_y * wasserstein1(nu_t, nu, 2).hi
        )
        assert gap <= bound + 1e-10


def _perturb(mu, t):
    from ergame.measures import MarkovMeasure, stationary_distribution

    P = (1 - t) * mu.P + t * np.full_like(mu.P, 1.0 / mu.P.shape[1])
    pi = stationary_distribution(mu.spec, mu.order, P)
    return MarkovMeasure(mu.spec, mu.order, pi, P)
