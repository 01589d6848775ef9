"""
Тесты обращения фазовой функции
"""
import math

import numpy as np
import pytest

from conftest import constant_problem
from numerics import (
    InversionFailureError,
    OutOfDomainError,
    PhaseFunction,
    inv_eval,
    invert_phase,
    pw_antiderivative,
    pw_eval,
    pw_from_function,
)
from numerics.chebkit import piece_nodes


def test_linear_phase(cosine_solution):
    inverse = cosine_solution.inverse
    assert inv_eval(inverse, 50.0) == pytest.approx(0.5, abs=1e-14)
    assert inv_eval(inverse, math.pi) == pytest.approx(math.pi / 100, abs=1e-15)


def test_right_end_is_exact(cosine_solution):
    phase, inverse = cosine_solution.phase, cosine_solution.inverse
    assert inv_eval(inverse, phase.alpha_b) == phase.b
    assert inv_eval(inverse, 0.0) == phase.a


def test_outside_image(cosine_solution):
    with pytest.raises(OutOfDomainError):
        inv_eval(cosine_solution.inverse, cosine_solution.phase.alpha_b + 1.0)


def test_round_trip_on_artificial(artificial_solution, rng):
    phase, inverse = artificial_solution.phase, artificial_solution.inverse
    x = rng.uniform(0.0, phase.alpha_b, 10_000)
    t = inv_eval(inverse, x)
    error = np.abs(pw_eval(phase.alpha, t) - x)
    assert np.all(error <= 1e-11 * np.maximum(1.0, np.abs(x)))


def test_stored_nodes_round_trip(artificial_solution):
    phase, inverse = artificial_solution.phase, artificial_solution.inverse
    images = inverse.values.ravel()
    targets = piece_nodes(inverse.breakpoints, inverse.table.order).ravel()
    recovered = pw_eval(phase.alpha, images)
    assert np.max(np.abs(recovered - targets) / np.maximum(1.0, np.abs(targets))) <= 1e-12


def test_monotone(artificial_solution):
    phase, inverse = artificial_solution.phase, artificial_solution.inverse
    x = np.linspace(0.0, phase.alpha_b, 10_000)
    assert np.all(np.diff(inv_eval(inverse, x)) >= 0)


def test_rejects_nonpositive_slope():
    breakpoints = [0.0, 0.5, 1.0]
    alpha1 = pw_from_function(lambda t: np.cos(4.0 * t), breakpoints, 16)
    alpha2 = pw_from_function(lambda t: -4.0 * np.sin(4.0 * t), breakpoints, 16)
    phase = PhaseFunction(
        alpha=pw_antiderivative(alpha1, 0.0), alpha1=alpha1, alpha2=alpha2, problem=constant_problem(1.0)
    )
    with pytest.raises(InversionFailureError):
        invert_phase(phase)


def test_slope_is_reciprocal_of_phase_derivative(artificial_solution):
    phase, inverse = artificial_solution.phase, artificial_solution.inverse
    x = np.linspace(10.0, phase.alpha_b - 10.0, 97)
    h = 0.5
    slope = (inv_eval(inverse, x + h) - inv_eval(inverse, x - h)) / (2.0 * h)
    expected = 1.0 / pw_eval(phase.alpha1, inv_eval(inverse, x))
    np.testing.assert_allclose(slope, expected, rtol=1e-6)
