import math

import numpy as np
import pytest

import config
from src.exceptions import ConvergenceError, InvalidArgumentError, PotentialEvaluationError
from src.numerics import RadialGrid
from src.potentials import OscillatorPotential, PowerSeriesPotential, screened_coulomb
from src.spectra import RadialProblem, default_box_radius, discretize, max_box_radius, solve_problem, solve_radial
from src.transform import map_system

COULOMB = PowerSeriesPotential(A1=-1.0)


@pytest.mark.parametrize("ell", [0, 1, 2])
def test_coulomb_levels(ell):
    M = 3 + 2 * ell
    result = solve_radial(3, ell, COULOMB, 4)
    expected = [-2.0 / (2 * n + M - 1) ** 2 for n in range(4)]
    assert result.energies == pytest.approx(expected, abs=5e-7)
    assert all(result.bound)
    assert not result.partial


def test_hydrogen_two_levels():
    result = solve_radial(3, 0, screened_coulomb(0.0), 2)
    assert result.energies == pytest.approx([-0.5, -0.125], abs=5e-7)


def test_harmonic_oscillator_ground_state_in_four_dimensions():
    result = solve_radial(4, 0, OscillatorPotential(c2=1.0), 1)
    assert result.energies[0] == pytest.approx(2.0 * math.sqrt(2.0), abs=5e-7)


@pytest.mark.parametrize("c, N_prime, L", [(1.0, 4, 1), (0.5, 4, 2), (2.0, 6, 0)])
def test_harmonic_oscillator_levels(c, N_prime, L):
    result = solve_radial(N_prime, L, OscillatorPotential(c2=c), 3)
    expected = [math.sqrt(2.0 * c) * (2 * n + L + N_prime / 2.0) for n in range(3)]
    assert result.energies == pytest.approx(expected, abs=5e-7)


def test_particle_in_a_box():
    problem = RadialProblem(M_index=3, potential=lambda r: np.zeros_like(r), k_states=3, target_tol=1e-8)
    result = solve_problem(problem, box_radius=10.0)
    expected = [(math.pi * (n + 1)) ** 2 / 200.0 for n in range(3)]
    assert result.energies == pytest.approx(expected, abs=1e-8)
    # Nothing confines these states except the wall
    assert result.partial


def test_m_degeneracy_is_exact():
    p = screened_coulomb(0.01)
    five = solve_radial(5, 0, p, 4)
    three = solve_radial(3, 1, p, 4)
    assert np.array_equal(five.energies, three.energies)


def test_reports_and_ordering():
    result = solve_radial(3, 0, screened_coulomb(0.005), 4, tol=1e-6)
    assert np.all(np.diff(result.energies) > 0)
    assert len(result.reports) == 4
    for energy, report in zip(result.energies, result.reports):
        assert report.value == energy
        assert report.estimated_error < 1e-6
        assert report.refinement_steps >= config.MIN_REFINEMENTS


def test_discretize_structure():
    problem = RadialProblem(M_index=5, potential=COULOMB, k_states=1)
    grid = RadialGrid.for_box(20.0, 199)
    matrix = discretize(problem, grid)
    h = grid.spacing
    r = grid.points()
    assert np.allclose(matrix.off_diagonal, -1.0 / h ** 2)
    assert matrix.diagonal == pytest.approx(2.0 / h ** 2 + 2.0 / r ** 2 - 2.0 / r)


def test_discretize_zero_potential_is_laplacian():
    problem = RadialProblem(M_index=3, potential=lambda r: 0.0 * r, k_states=1)
    grid = RadialGrid.for_box(1.0, 99)
    matrix = discretize(problem, grid)
    assert np.allclose(matrix.diagonal, 2.0 / grid.spacing ** 2)


def test_discretize_scalar_only_potential():
    problem = RadialProblem(M_index=3, potential=lambda r: -1.0 / float(r), k_states=1)
    grid = RadialGrid.for_box(10.0, 99)
    expected = discretize(RadialProblem(M_index=3, potential=COULOMB, k_states=1), grid)
    assert discretize(problem, grid).diagonal == pytest.approx(expected.diagonal)


def test_discretize_reports_failing_radius():
    def potential(r):
        r = np.asarray(r)
        if np.any(r > 5.05):
            raise ValueError("outside table")
        return -1.0 / r

    grid = RadialGrid.for_box(10.0, 99)
    with pytest.raises(PotentialEvaluationError) as info:
        discretize(RadialProblem(M_index=3, potential=potential, k_states=1), grid)
    assert info.value.radius > 5.05
    assert info.value.radius == pytest.approx(5.1)


def test_discretize_reports_non_finite_values():
    grid = RadialGrid.for_box(10.0, 99)
    problem = RadialProblem(M_index=3, potential=lambda r: np.where(r > 2.05, np.nan, -1.0 / r), k_states=1)
    with pytest.raises(PotentialEvaluationError) as info:
        discretize(problem, grid)
    assert info.value.radius == pytest.approx(2.1)


def test_default_box_radius():
    coulomb_box = default_box_radius(RadialProblem(M_index=7, potential=COULOMB, k_states=4))
    assert coulomb_box == pytest.approx(8.0 * 36.0)
    assert default_box_radius(RadialProblem(M_index=3, potential=COULOMB, k_states=1)) == config.COULOMB_BOX_MIN
    oscillator_box = default_box_radius(RadialProblem(M_index=4, potential=OscillatorPotential(c2=1.0), k_states=1))
    assert config.OSCILLATOR_BOX_MIN <= oscillator_box <= config.OSCILLATOR_BOX_MAX


@pytest.mark.parametrize("kwargs", [
    {'M_index': 1, 'potential': COULOMB, 'k_states': 1},
    {'M_index': 3, 'potential': COULOMB, 'k_states': 0},
    {'M_index': 3, 'potential': COULOMB, 'k_states': 1, 'target_tol': 0.0},
])
def test_radial_problem_validation(kwargs):
    with pytest.raises(InvalidArgumentError):
        RadialProblem(**kwargs)


def test_solve_radial_validation():
    with pytest.raises(InvalidArgumentError):
        solve_radial(1, 0, COULOMB, 1)
    with pytest.raises(InvalidArgumentError):
        solve_radial(3, -1, COULOMB, 1)
    with pytest.raises(InvalidArgumentError):
        solve_radial(3, 0, COULOMB, config.MAX_STATES + 1)


def test_unreachable_tolerance_raises(monkeypatch):
    monkeypatch.setattr(config, 'MAX_GRID_POINTS', 20000)
    with pytest.raises(ConvergenceError) as info:
        solve_radial(3, 0, COULOMB, 1, tol=1e-15)
    assert info.value.best_estimate[0] == pytest.approx(-0.5, abs=1e-4)
    assert info.value.diagnostics['target_tol'] == 1e-15


def test_max_box_radius():
    assert max_box_radius(RadialProblem(M_index=4, potential=OscillatorPotential(c2=1.0), k_states=1)) \
        == config.OSCILLATOR_BOX_MAX
    assert max_box_radius(RadialProblem(M_index=3, potential=COULOMB, k_states=1)) == math.inf


@pytest.mark.parametrize("delta, E0", [(0.020, -0.037515), (0.025, -0.033573)])
def test_steep_mapped_oscillator_keeps_capped_box(delta, E0):
    system = map_system(screened_coulomb(delta), E0)
    result = solve_radial(4, 4, system.oscillator, 1)
    assert result.grid_used.box_radius <= config.OSCILLATOR_BOX_MAX + 1e-9
    assert result.energies[0] == pytest.approx(system.E_hat_exact, abs=1e-4)


@pytest.mark.parametrize("M", [3, 5])
def test_tighter_tolerance_refines_within_reported_errors(M):
    coarse = solve_radial(M, 0, COULOMB, 3, tol=1e-5)
    fine = solve_radial(M, 0, COULOMB, 3)
    exact = np.array([-2.0 / (2 * n + M - 1) ** 2 for n in range(3)])
    assert fine.reports[0].refinement_steps >= coarse.reports[0].refinement_steps
    for i in range(3):
        a, b = coarse.reports[i], fine.reports[i]
        assert 0.0 <= a.estimated_error < 1e-5
        assert 0.0 <= b.estimated_error < config.DEFAULT_TOL
        assert abs(a.value - exact[i]) < 1e-5
        assert abs(b.value - exact[i]) < config.DEFAULT_TOL
        assert abs(b.value - a.value) <= 1e-5 + config.DEFAULT_TOL
