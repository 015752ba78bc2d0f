"""
Bound-state spectra of the reduced radial equation

    -Psi'' + [(M-1)(M-3)/(4 r^2) + 2 V(r)] Psi = 2 E Psi

on a uniform finite-difference grid with Dirichlet walls at r = 0 and
r = box_radius. Eigenvalues of successive grid halvings are combined by
Richardson extrapolation until two extrapolated spectra agree to the
requested tolerance.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

import config
from src.exceptions import ConvergenceError, InvalidArgumentError, PotentialEvaluationError
from src.logger import logger
from src.numerics import ConvergenceReport, RadialGrid, TridiagonalSymmetric, eigenvalues_lowest
from src.potentials import OscillatorPotential, PowerSeriesPotential, YukawaPotential


@dataclass(frozen=True)
class RadialProblem:
    M_index: int
    potential: Callable
    k_states: int
    target_tol: float = config.DEFAULT_TOL

    def __post_init__(self):
        if self.M_index < 2:
            raise InvalidArgumentError(f"M must be >= 2, got {self.M_index}")
        if self.k_states < 1:
            raise InvalidArgumentError(f"k_states must be >= 1, got {self.k_states}")
        if not self.target_tol > 0.0:
            raise InvalidArgumentError(f"target_tol must be positive, got {self.target_tol}")

    @property
    def centrifugal(self) -> float:
        return (self.M_index - 1) * (self.M_index - 3) / 4.0


@dataclass(frozen=True)
class SpectrumResult:
    """
    Converged energies E_n (not 2E_n), ascending.

    bound[i] is False when state i lies above the potential at the wall,
    i.e. it is a box state rather than a bound state; partial is set when
    any state is unbound.
    """

    energies: NDArray[np.float64]
    reports: Tuple[ConvergenceReport, ...]
    grid_used: RadialGrid
    bound: Tuple[bool, ...]
    partial: bool


def _evaluate_potential(potential: Callable, r: NDArray[np.float64]) -> NDArray[np.float64]:
    try:
        values = np.asarray(potential(r), dtype=np.float64)
        if values.shape != r.shape:
            raise ValueError(f"shape {values.shape} instead of {r.shape}")
    except PotentialEvaluationError:
        raise
    except Exception:
        # Point by point; also pins down the first radius the potential rejects
        values = np.empty_like(r)
        for i, x in enumerate(r):
            try:
                values[i] = float(potential(float(x)))
            except Exception as e:
                logger.error(f"❌ Потенциал не вычисляется в r = {x!r}: {e}")
                raise PotentialEvaluationError(f"potential evaluation failed: {e}", float(x)) from e

    bad = ~np.isfinite(values)
    if np.any(bad):
        radius = float(r[np.argmax(bad)])
        logger.error(f"❌ Потенциал не конечен в r = {radius!r}")
        raise PotentialEvaluationError("potential is not finite", radius)
    return values


def discretize(problem: RadialProblem, grid: RadialGrid) -> TridiagonalSymmetric:
    """
    Second-difference matrix of the reduced radial operator.

    Args:
        problem: Radial problem (M index and potential)
        grid: Interior grid points; Psi vanishes one spacing outside each end

    Returns:
        Symmetric tridiagonal matrix whose eigenvalues approximate 2E
    """
    r = grid.points()
    h = grid.spacing
    potential = _evaluate_potential(problem.potential, r)
    diagonal = 2.0 / (h * h) + problem.centrifugal / (r * r) + 2.0 * potential
    off_diagonal = np.full(grid.n_points - 1, -1.0 / (h * h))
    return TridiagonalSymmetric(diagonal=diagonal, off_diagonal=off_diagonal)


def default_box_radius(problem: RadialProblem) -> float:
    """
    Starting box radius for a potential family.

    Coulomb-like potentials get room for the hydrogenic tail of the highest
    requested state; oscillators are sized by their leading coefficient.
    """
    potential = problem.potential
    if isinstance(potential, OscillatorPotential):
        for power, c in zip((10, 8, 6, 4, 2), reversed(potential.coefficients)):
            if c > 0.0:
                radius = 12.0 / c ** (1.0 / power)
                return min(max(radius, config.OSCILLATOR_BOX_MIN), config.OSCILLATOR_BOX_MAX)
        return config.OSCILLATOR_BOX_MAX

    if isinstance(potential, PowerSeriesPotential):
        e2 = potential.coupling
    elif isinstance(potential, YukawaPotential):
        e2 = potential.e2
    else:
        e2 = 1.0
    e2 = e2 if e2 > 0.0 else 1.0

    principal = (problem.k_states - 1) + (problem.M_index - 1) / 2.0
    return max(config.COULOMB_BOX_MIN, 8.0 * principal * principal / e2)


def _initial_points(box_radius: float) -> int:
    return max(config.MIN_GRID_POINTS, int(math.ceil(box_radius / config.INITIAL_SPACING)) - 1)


def _energies(problem: RadialProblem, grid: RadialGrid) -> NDArray[np.float64]:
    if problem.k_states > grid.n_points:
        raise InvalidArgumentError(f"k_states = {problem.k_states} exceeds grid size {grid.n_points}")
    return 0.5 * eigenvalues_lowest(discretize(problem, grid), problem.k_states)


def max_box_radius(problem: RadialProblem) -> float:
    """Largest wall position the box search may reach."""
    if isinstance(problem.potential, OscillatorPotential):
        return config.OSCILLATOR_BOX_MAX
    return math.inf


def _settle_box(problem: RadialProblem, box_radius: float) -> float:
    """Double the box at the coarse spacing until the spectrum stops moving."""
    limit = max_box_radius(problem)
    spacing = box_radius / (_initial_points(box_radius) + 1)
    current = _energies(problem, RadialGrid.for_box(box_radius, _initial_points(box_radius)))

    for doubling in range(config.MAX_BOX_DOUBLINGS):
        wider = min(2.0 * box_radius, limit)
        if wider <= box_radius:
            # Oscillator boxes stop at OSCILLATOR_BOX_MAX
            logger.debug(f"Бокс {box_radius:g} на пределе {limit:g}")
            return box_radius
        n_points = int(round(wider / spacing)) - 1
        candidate = _energies(problem, RadialGrid.for_box(wider, n_points))
        change = float(np.max(np.abs(candidate - current)))
        if change < problem.target_tol / 4.0:
            return box_radius
        logger.debug(f"Бокс {box_radius:g} -> {wider:g}: сдвиг спектра {change:.3e}")
        box_radius, current = wider, candidate

    logger.warning(f"⚠️ Бокс расширен до {box_radius:g} без стабилизации спектра")
    return box_radius


def solve_problem(problem: RadialProblem, box_radius: Optional[float] = None) -> SpectrumResult:
    """
    Converged lowest k_states energies of a radial problem.

    Args:
        problem: Radial problem
        box_radius: Fixed wall position; chosen and checked automatically when None

    Returns:
        SpectrumResult
    """
    if box_radius is None:
        box_radius = _settle_box(problem, default_box_radius(problem))
    elif box_radius <= 0.0:
        raise InvalidArgumentError(f"box_radius must be positive, got {box_radius}")

    n_points = _initial_points(box_radius)
    grid = RadialGrid.for_box(box_radius, n_points)
    previous = _energies(problem, grid)
    previous_extrapolated: Optional[NDArray[np.float64]] = None
    step = 0

    while True:
        step += 1
        n_points = 2 * (n_points + 1) - 1
        if n_points > config.MAX_GRID_POINTS:
            best = previous_extrapolated if previous_extrapolated is not None else previous
            logger.error(f"❌ Спектр не сошелся до {config.MAX_GRID_POINTS} точек сетки")
            raise ConvergenceError(
                "grid refinement limit reached",
                best_estimate=best.tolist(),
                diagnostics={'box_radius': box_radius, 'n_points': (n_points + 1) // 2 - 1,
                             'target_tol': problem.target_tol, 'refinement_steps': step - 1},
            )

        grid = RadialGrid.for_box(box_radius, n_points)
        current = _energies(problem, grid)
        extrapolated = (4.0 * current - previous) / 3.0

        if previous_extrapolated is not None:
            errors = np.abs(extrapolated - previous_extrapolated)
            logger.debug(f"Шаг {step}: n = {n_points}, max изменение {float(np.max(errors)):.3e}")
            if step >= config.MIN_REFINEMENTS and float(np.max(errors)) < problem.target_tol:
                break

        previous, previous_extrapolated = current, extrapolated

    wall = float(np.asarray(problem.potential(box_radius)))
    bound = tuple(bool(e < wall) for e in extrapolated)
    reports = tuple(
        ConvergenceReport(value=float(e), estimated_error=float(err), refinement_steps=step)
        for e, err in zip(extrapolated, errors)
    )
    if not all(bound):
        logger.warning(f"⚠️ Не все состояния связаны: V(стенка) = {wall:.6f}")

    return SpectrumResult(
        energies=np.asarray(extrapolated, dtype=np.float64),
        reports=reports,
        grid_used=grid,
        bound=bound,
        partial=not all(bound),
    )


def solve_radial(
    N: int,
    ell: int,
    potential: Callable,
    k: int,
    tol: float = config.DEFAULT_TOL,
    box_radius: Optional[float] = None,
) -> SpectrumResult:
    """
    k lowest energies for dimension N and angular momentum ell.

    Only M = N + 2 ell enters, so equal-M pairs give identical spectra.

    Args:
        N: Space dimension (>= 2)
        ell: Angular momentum (>= 0)
        potential: V(r), callable on numpy arrays
        k: Number of states
        tol: Target accuracy in hartree
        box_radius: Optional fixed wall position

    Returns:
        SpectrumResult
    """
    if N < 2:
        raise InvalidArgumentError(f"dimension N must be >= 2, got {N}")
    if ell < 0:
        raise InvalidArgumentError(f"ell must be >= 0, got {ell}")
    if k < 1 or k > config.MAX_STATES:
        raise InvalidArgumentError(f"k must lie in [1, {config.MAX_STATES}], got {k}")

    logger.info(f"🔢 Решение радиальной задачи: N = {N}, ell = {ell}, состояний {k}")
    result = solve_problem(RadialProblem(M_index=N + 2 * ell, potential=potential,
                                         k_states=k, target_tol=tol), box_radius)
    logger.info(f"✅ Готово: E0 = {result.energies[0]:.6f}, сетка {result.grid_used.n_points} точек")
    return result
