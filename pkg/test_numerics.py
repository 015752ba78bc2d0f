import math

import numpy as np
import pytest

from src.exceptions import ConvergenceError, InvalidArgumentError
from src.numerics import (
    RadialGrid,
    TridiagonalSymmetric,
    eigenvalues_lowest,
    find_root_2d,
    first_derivative,
    integrate_semi_infinite,
    second_derivative,
)


def laplacian(n):
    return TridiagonalSymmetric(diagonal=np.full(n, 2.0), off_diagonal=np.full(n - 1, -1.0))


def test_eigenvalues_lowest_matches_discrete_laplacian():
    n = 200
    values = eigenvalues_lowest(laplacian(n), 5)
    expected = [2.0 - 2.0 * math.cos(k * math.pi / (n + 1)) for k in range(1, 6)]
    assert values == pytest.approx(expected, abs=1e-12)
    assert np.all(np.diff(values) > 0)


def test_eigenvalues_lowest_rejects_bad_k():
    with pytest.raises(InvalidArgumentError):
        eigenvalues_lowest(laplacian(10), 0)
    with pytest.raises(InvalidArgumentError):
        eigenvalues_lowest(laplacian(10), 11)


def test_eigenvalues_lowest_single_element():
    matrix = TridiagonalSymmetric(diagonal=[3.5], off_diagonal=[])
    assert eigenvalues_lowest(matrix, 1).tolist() == [3.5]


def test_eigenvalues_lowest_ignores_steep_wall():
    n = 200
    matrix = laplacian(n)
    diagonal = matrix.diagonal.copy()
    diagonal[-1] = 1e16
    walled = TridiagonalSymmetric(diagonal=diagonal, off_diagonal=matrix.off_diagonal)
    expected = [2.0 - 2.0 * math.cos(k * math.pi / n) for k in range(1, 4)]
    assert eigenvalues_lowest(walled, 3) == pytest.approx(expected, abs=1e-10)


def test_eigenvalues_lowest_rejects_bad_tolerance():
    with pytest.raises(InvalidArgumentError):
        eigenvalues_lowest(laplacian(10), 1, abs_tol=0.0)


def test_tridiagonal_validates_shapes_and_is_read_only():
    with pytest.raises(InvalidArgumentError):
        TridiagonalSymmetric(diagonal=[1.0, 2.0], off_diagonal=[1.0, 2.0])
    matrix = laplacian(4)
    with pytest.raises(ValueError):
        matrix.diagonal[0] = 1.0
    assert matrix.dimension == 4


def test_radial_grid_for_box():
    grid = RadialGrid.for_box(10.0, 999)
    assert grid.spacing == pytest.approx(0.01)
    assert grid.r_min == pytest.approx(0.01)
    assert grid.box_radius == pytest.approx(10.0)
    points = grid.points()
    assert points.size == 999
    assert points[-1] == pytest.approx(9.99)


@pytest.mark.parametrize("kwargs", [
    {'r_min': 0.0, 'r_max': 1.0, 'n_points': 100},
    {'r_min': 2.0, 'r_max': 1.0, 'n_points': 100},
    {'r_min': 0.1, 'r_max': 1.0, 'n_points': 3},
])
def test_radial_grid_rejects_invalid(kwargs):
    with pytest.raises(InvalidArgumentError):
        RadialGrid(**kwargs)


def test_integrate_semi_infinite_exponential():
    assert integrate_semi_infinite(lambda x: math.exp(-x), 1.0) == pytest.approx(1.0, rel=1e-10)


def test_integrate_semi_infinite_gaussian_moment():
    value = integrate_semi_infinite(lambda x: x * x * math.exp(-x * x), 0.5)
    assert value == pytest.approx(math.sqrt(math.pi) / 4.0, rel=1e-10)


@pytest.mark.parametrize("f, scale, expected", [
    (lambda x: x * x * math.exp(-2.0 * x), 0.5, 0.25),
    (lambda x: math.exp(-x * x), 1.0, math.sqrt(math.pi) / 2.0),
])
def test_integrate_semi_infinite_reference_values(f, scale, expected):
    assert integrate_semi_infinite(f, scale) == pytest.approx(expected, rel=1e-10)


def _damped_polynomial(rng):
    coefficients = rng.uniform(0.1, 1.0, size=int(rng.integers(1, 5)))
    rate = float(rng.uniform(0.5, 3.0))

    def f(x):
        return sum(c * x ** k for k, c in enumerate(coefficients)) * math.exp(-rate * x)

    exact = sum(c * math.factorial(k) / rate ** (k + 1) for k, c in enumerate(coefficients))
    return f, rate, exact


def test_integrate_semi_infinite_damped_polynomials():
    rng = np.random.default_rng(7)
    for _ in range(20):
        f, rate, exact = _damped_polynomial(rng)
        assert integrate_semi_infinite(f, 1.0 / rate) == pytest.approx(exact, rel=1e-10)


def test_integrate_semi_infinite_is_linear():
    rng = np.random.default_rng(11)
    for _ in range(20):
        f, rate_f, _ = _damped_polynomial(rng)
        g, rate_g, _ = _damped_polynomial(rng)
        a, b = rng.uniform(0.5, 2.0, size=2)
        scale = 1.0 / min(rate_f, rate_g)
        combined = integrate_semi_infinite(lambda x: a * f(x) + b * g(x), scale)
        separate = a * integrate_semi_infinite(f, 1.0 / rate_f) + b * integrate_semi_infinite(g, 1.0 / rate_g)
        assert combined == pytest.approx(separate, rel=1e-9)


def test_integrate_semi_infinite_slow_tail_gives_up():
    with pytest.raises(ConvergenceError) as info:
        integrate_semi_infinite(lambda x: 1.0 / (1.0 + x * x), 1.0, max_panels=10)
    assert info.value.best_estimate is not None


def test_integrate_semi_infinite_rejects_scale():
    with pytest.raises(InvalidArgumentError):
        integrate_semi_infinite(math.exp, 0.0)


def test_finite_difference_derivatives():
    x = np.linspace(0.5, 3.0, 11)
    assert second_derivative(np.sin, x) == pytest.approx(-np.sin(x), abs=1e-9)
    assert first_derivative(np.exp, x) == pytest.approx(np.exp(x), rel=1e-11)


def test_find_root_2d_circle_and_line():
    result = find_root_2d(lambda x, y: (x * x + y * y - 4.0, x - y), (1.0, 0.5), 1e-12)
    assert result.x == pytest.approx(math.sqrt(2.0), abs=1e-10)
    assert result.y == pytest.approx(math.sqrt(2.0), abs=1e-10)
    assert max(abs(r) for r in result.residual) < 1e-12
    assert result.iterations > 0


def test_find_root_2d_without_root():
    with pytest.raises(ConvergenceError) as info:
        find_root_2d(lambda x, y: (x * x + 1.0, y), (0.3, 0.3), 1e-10)
    assert info.value.best_estimate is not None


def test_find_root_2d_rejects_tolerance():
    with pytest.raises(InvalidArgumentError):
        find_root_2d(lambda x, y: (x, y), (0.0, 0.0), 0.0)
