"""Shared fixtures: the worked binary example and helpers for random inputs."""

from fractions import Fraction

import numpy as np
import pytest

from ipd import load_prior, solve_binary


@pytest.fixture
def fixture_prior():
    """Uniform binary prior with q = (3/4, 1/4), in floats."""
    return load_prior([(0.5, 0.75), (0.5, 0.25)])


@pytest.fixture
def fixture_prior_exact():
    """The same prior in Fractions so solves stay rational end to end."""
    half = Fraction(1, 2)
    return load_prior([(half, Fraction(3, 4)), (half, Fraction(1, 4))])


@pytest.fixture
def fixture_solution(fixture_prior_exact):
    """Exact four-signal optimum of the fixture prior at budget ln 2."""
    return solve_binary(fixture_prior_exact, exp_eps=Fraction(2))


def random_binary_prior(rng: np.random.Generator, gap: float = 0.05):
    """Interior binary prior with q0 - q1 >= gap, away from 0 and 1."""
    p0 = rng.uniform(0.1, 0.9)
    q1 = rng.uniform(0.02, 0.9 - gap)
    q0 = rng.uniform(q1 + gap, 0.98)
    return load_prior([(p0, q0), (1.0 - p0, q1)])
