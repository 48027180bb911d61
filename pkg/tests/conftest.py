import numpy as np
import pytest

from ergame import (
    CylinderFunction,
    JointCylinderFunction,
    MarkovMeasure,
    ShiftSpec,
    bernoulli,
    dirac_fixed_point,
    random_markov,
)


@pytest.fixture(scope="session")
def spec2() -> ShiftSpec:
    return ShiftSpec(2)


@pytest.fixture(scope="session")
def spec3() -> ShiftSpec:
    return ShiftSpec(3)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


def random_cylinder(spec: ShiftSpec, depth: int, rng: np.random.Generator, scale=1.0):
    return CylinderFunction.from_values(spec, depth, rng.normal(size=len(spec.words(depth))) * scale)


def random_joint(spec_x, spec_y, depth_x, depth_y, rng, scale=1.0):
    shape = (len(spec_x.words(depth_x)), len(spec_y.words(depth_y)))
    return JointCylinderFunction.from_matrix(spec_x, spec_y, depth_x, depth_y, rng.normal(size=shape) * scale)


def golden_mean_spec(order: int = 1) -> ShiftSpec:
    """Transition-restricted example: the word 11 never occurs."""

    def allowed(context, symbol):
        if context and context[-1] == 1 and symbol == 1:
            return False
        return True

    return ShiftSpec(2, order=order, allowed=allowed)
