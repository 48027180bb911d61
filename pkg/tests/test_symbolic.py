import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ergame import (
    CylinderFunction,
    InvariantError,
    JointCylinderFunction,
    MetricParams,
    ShiftSpec,
    bernoulli,
    enumerate_words,
    integrate,
    lipschitz_constant,
    mixed_constant,
    random_markov,
    refine,
    word_metric,
)
from ergame.errors import CapExceededError

from conftest import golden_mean_spec, random_cylinder, random_joint


# --- enumerate_words -------------------------------------------------------


def test_enumerate_base_case(spec2):
    assert enumerate_words(spec2, 1) == [(0,), (1,)]


def test_enumerate_depth2(spec2):
    assert enumerate_words(spec2, 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_enumerate_d3_count_and_order(spec3):
    words = enumerate_words(spec3, 2)
    assert len(words) == 9
    assert words == sorted(words)


def test_enumerate_deterministic(spec2):
    a = enumerate_words(spec2, 3)
    b = enumerate_words(ShiftSpec(2), 3)
    assert a == b


def test_enumerate_cap(monkeypatch):
    monkeypatch.setenv("ERGAME_WORD_CAP", "8")
    spec = ShiftSpec(2)
    with pytest.raises(CapExceededError):
        spec.words(4)


def test_golden_mean_enumeration():
    spec = golden_mean_spec()
    assert enumerate_words(spec, 2) == [(0, 0), (0, 1), (1, 0)]
    assert all((1, 1) != w[i : i + 2] for w in enumerate_words(spec, 4) for i in range(3))


def test_dead_end_spec_rejected():
    # only 0 -> 0 allowed: word 1 has no continuation
    with pytest.raises(InvariantError):
        ShiftSpec(2, allowed=lambda ctx, b: (not ctx) or (ctx[-1] == 0 and b == 0))


# --- word_metric ------------------------------------------------------------


def test_metric_first_symbol():
    assert word_metric((0, 1, 1, 1), (1, 0, 0, 0)) == 1.0


def test_metric_third_symbol():
    assert word_metric((0, 0, 1, 1), (0, 0, 0, 1)) == 0.25


def test_metric_equal_words_upper_bound():
    assert word_metric((0, 1), (0, 1)) == 0.25  # cylinder diameter, not exact zero


def test_metric_length_mismatch():
    with pytest.raises(InvariantError):
        word_metric((0,), (0, 1))


@given(st.lists(st.integers(0, 1), min_size=1, max_size=8), st.data())
@settings(max_examples=60, deadline=None)
def test_metric_symmetry_and_ultrametric(w, data):
    k = len(w)
    u = tuple(w)
    v = tuple(data.draw(st.lists(st.integers(0, 1), min_size=k, max_size=k)))
    z = tuple(data.draw(st.lists(st.integers(0, 1), min_size=k, max_size=k)))
    assert word_metric(u, v) == word_metric(v, u)
    if u != v and v != z and u != z:
        assert word_metric(u, z) <= max(word_metric(u, v), word_metric(v, z)) + 1e-15


# --- lipschitz_constant -----------------------------------------------------


def test_lipschitz_constant_function(spec2):
    assert lipschitz_constant(CylinderFunction.constant(spec2, 2, 4.2)) == 0.0


def test_lipschitz_depth1(spec2):
    psi = CylinderFunction(spec2, 1, {(0,): 0.0, (1,): 1.0})
    assert lipschitz_constant(psi) == 1.0


def brute_force_lipschitz(psi):
    words = psi.words
    best = 0.0
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            best = max(
                best,
                abs(psi.values[i] - psi.values[j]) / word_metric(words[i], words[j]),
            )
    return best


def test_lipschitz_depth2_against_pair_oracle(spec2):
    psi = CylinderFunction(spec2, 2, {(0, 0): 0.0, (0, 1): 1.0, (1, 0): 0.0, (1, 1): 0.0})
    assert brute_force_lipschitz(psi) == 2.0
    assert lipschitz_constant(psi) == 2.0


def test_lipschitz_random_against_pair_oracle(spec2, spec3, rng):
    for spec, depth in [(spec2, 3), (spec3, 2)]:
        for _ in range(20):
            psi = random_cylinder(spec, depth, rng)
            assert lipschitz_constant(psi) == pytest.approx(brute_force_lipschitz(psi), abs=1e-12)


def test_lipschitz_invariant_under_refine(spec2, rng):
    for _ in range(10):
        psi = random_cylinder(spec2, 2, rng)
        assert lipschitz_constant(refine(psi, 4)) == pytest.approx(
            lipschitz_constant(psi), abs=1e-12
        )


# --- mixed_constant ---------------------------------------------------------


def quadruple_oracle(A):
    """Direct maximization over all word 4-tuples."""
    wx, wy = A.words_x, A.words_y
    M = A.matrix
    best = 0.0
    for i, j in itertools.combinations(range(len(wx)), 2):
        dx = word_metric(wx[i], wx[j])
        for k, l in itertools.combinations(range(len(wy)), 2):
            dy = word_metric(wy[k], wy[l])
            delta = abs(M[i, k] - M[j, k] - M[i, l] + M[j, l])
            best = max(best, delta / (dx * dy))
    return best


def test_mixed_separable_is_zero(spec2, rng):
    f = rng.normal(size=2)
    g = rng.normal(size=2)
    A = JointCylinderFunction.from_matrix(spec2, spec2, 1, 1, f[:, None] + g[None, :])
    assert mixed_constant(A) <= 1e-12


def test_mixed_product_matches_enumeration(spec2):
    # A(x, y) = f(x1) g(y1) with unit-Lipschitz factors
    f = np.array([0.0, 1.0])
    g = np.array([0.0, 1.0])
    A = JointCylinderFunction.from_matrix(spec2, spec2, 1, 1, np.outer(f, g))
    assert mixed_constant(A) == pytest.approx(quadruple_oracle(A), abs=1e-12)
    assert mixed_constant(A) == 1.0


def test_mixed_indicator_against_quadruple_oracle(spec2):
    # With the metric convention d = base**(N-1) the corner indicator's
    # mixed difference is 1 at distance product 1, so the constant is 1.
    A = JointCylinderFunction.from_matrix(spec2, spec2, 1, 1, [[1.0, 0.0], [0.0, 0.0]])
    oracle = quadruple_oracle(A)
    assert oracle == 1.0
    assert mixed_constant(A) == pytest.approx(oracle, abs=1e-12)


def test_mixed_random_against_quadruple_oracle(spec2, spec3, rng):
    for spec_x, spec_y, dx, dy in [(spec2, spec2, 2, 1), (spec2, spec3, 1, 2), (spec3, spec2, 2, 2)]:
        for _ in range(5):
            A = random_joint(spec_x, spec_y, dx, dy, rng)
            assert mixed_constant(A) == pytest.approx(quadruple_oracle(A), rel=1e-12)


def test_mixed_symmetric_under_transpose(spec2, spec3, rng):
    A = random_joint(spec2, spec3, 2, 1, rng)
    assert mixed_constant(A) == pytest.approx(mixed_constant(A.transpose()), rel=1e-12)


# --- refine -----------------------------------------------------------------


def test_refine_identity(spec2, rng):
    psi = random_cylinder(spec2, 2, rng)
    assert refine(psi, 2) is psi


def test_refine_prefix_lift(spec2):
    psi = CylinderFunction(spec2, 1, {(0,): 1.5, (1,): -2.0})
    lifted = refine(psi, 2)
    assert lifted.table == {(0, 0): 1.5, (0, 1): 1.5, (1, 0): -2.0, (1, 1): -2.0}


def test_refine_rejects_shallower(spec2, rng):
    psi = random_cylinder(spec2, 2, rng)
    with pytest.raises(InvariantError):
        refine(psi, 1)


def test_refine_preserves_integrals(spec2, rng):
    for _ in range(10):
        psi = random_cylinder(spec2, 2, rng)
        mu = random_markov(spec2, 2, rng)
        assert integrate(refine(psi, 4), mu) == pytest.approx(integrate(psi, mu), abs=1e-12)


# --- table validation and ingestion ----------------------------------------


def test_cylinder_table_must_be_complete(spec2):
    with pytest.raises(InvariantError):
        CylinderFunction(spec2, 1, {(0,): 1.0})


def test_cylinder_table_rejects_nonfinite(spec2):
    with pytest.raises(InvariantError):
        CylinderFunction(spec2, 1, {(0,): float("nan"), (1,): 0.0})


def test_potential_json_roundtrip(spec2, rng):
    from ergame.io import potential_from_dict, potential_to_dict

    psi = random_cylinder(spec2, 2, rng)
    doc = potential_to_dict(psi)
    back = potential_from_dict(doc)
    assert np.allclose(back.values, psi.values)


def test_potential_json_missing_entry_is_error():
    from ergame.errors import SchemaError
    from ergame.io import potential_from_dict

    with pytest.raises(SchemaError):
        potential_from_dict({"d": 2, "depth": 1, "table": {"0": 1.0}})


def test_metric_params_validation():
    with pytest.raises(InvariantError):
        MetricParams(base=1.0)
    assert MetricParams(base=0.5).cylinder_diameter(3) == 0.125
