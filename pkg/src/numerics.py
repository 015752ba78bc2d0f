"""
Numerical kernels shared by the solver modules.

Radial grids, the symmetric tridiagonal eigensolver, quadrature on the
half line, a high-order second derivative and the 2D root finder.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import IntegrationWarning, quad
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import fsolve, root

import config
from src.exceptions import ConvergenceError, InvalidArgumentError
from src.logger import logger

MIN_GRID_POINTS = 16
TAIL_MIN_SCALES = 8.0

# Sixth-order central stencils (offsets -3..3)
_FIRST_DERIVATIVE_STENCIL = np.array([-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]) / 60.0
_SECOND_DERIVATIVE_STENCIL = np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0


@dataclass(frozen=True)
class RadialGrid:
    """Uniform interior grid; Dirichlet walls sit one spacing outside both ends."""

    r_min: float
    r_max: float
    n_points: int

    def __post_init__(self):
        if self.n_points < MIN_GRID_POINTS:
            raise InvalidArgumentError(f"n_points must be >= {MIN_GRID_POINTS}, got {self.n_points}")
        if not 0.0 < self.r_min < self.r_max:
            raise InvalidArgumentError(f"need 0 < r_min < r_max, got ({self.r_min}, {self.r_max})")

    @classmethod
    def for_box(cls, box_radius: float, n_points: int) -> "RadialGrid":
        """Grid with walls at r = 0 and r = box_radius."""
        if box_radius <= 0.0:
            raise InvalidArgumentError(f"box_radius must be positive, got {box_radius}")
        h = box_radius / (n_points + 1)
        return cls(r_min=h, r_max=n_points * h, n_points=n_points)

    @property
    def spacing(self) -> float:
        return (self.r_max - self.r_min) / (self.n_points - 1)

    @property
    def box_radius(self) -> float:
        return self.r_max + self.spacing

    def points(self) -> NDArray[np.float64]:
        return np.linspace(self.r_min, self.r_max, self.n_points)


@dataclass(frozen=True)
class TridiagonalSymmetric:
    diagonal: NDArray[np.float64]
    off_diagonal: NDArray[np.float64]

    def __post_init__(self):
        diagonal = np.array(self.diagonal, dtype=np.float64)
        off_diagonal = np.array(self.off_diagonal, dtype=np.float64)
        if diagonal.ndim != 1 or diagonal.size == 0:
            raise InvalidArgumentError("diagonal must be a non-empty vector")
        if off_diagonal.shape != (diagonal.size - 1,):
            raise InvalidArgumentError(
                f"off_diagonal must have length {diagonal.size - 1}, got {off_diagonal.size}"
            )
        diagonal.setflags(write=False)
        off_diagonal.setflags(write=False)
        object.__setattr__(self, 'diagonal', diagonal)
        object.__setattr__(self, 'off_diagonal', off_diagonal)

    @property
    def dimension(self) -> int:
        return self.diagonal.size


@dataclass(frozen=True)
class ConvergenceReport:
    value: float
    estimated_error: float
    refinement_steps: int


@dataclass(frozen=True)
class RootResult:
    x: float
    y: float
    iterations: int
    residual: Tuple[float, float]
    method: str


def eigenvalues_lowest(
    matrix: TridiagonalSymmetric, k: int, abs_tol: float = config.EIGEN_ABS_TOL
) -> NDArray[np.float64]:
    """
    Return the k smallest eigenvalues in ascending order.

    Uses LAPACK's bisection with Sturm counts (stebz), so only the requested
    part of the spectrum is computed. Bisection stops at abs_tol, not at
    machine precision times the matrix norm.

    Args:
        matrix: Symmetric tridiagonal matrix
        k: Number of eigenvalues wanted
        abs_tol: Absolute bisection tolerance, > 0

    Returns:
        Array of length k, sorted ascending
    """
    if k < 1 or k > matrix.dimension:
        raise InvalidArgumentError(f"k must lie in [1, {matrix.dimension}], got {k}")
    if not abs_tol > 0.0:
        raise InvalidArgumentError(f"abs_tol must be positive, got {abs_tol}")

    if matrix.dimension == 1:
        return matrix.diagonal.copy()

    values = eigh_tridiagonal(
        matrix.diagonal,
        matrix.off_diagonal,
        eigvals_only=True,
        select='i',
        select_range=(0, k - 1),
        tol=abs_tol,
        lapack_driver='stebz',
    )
    return np.sort(np.asarray(values, dtype=np.float64))


def integrate_semi_infinite(
    f: Callable[[float], float],
    decay_scale: float,
    rel_tol: float = config.QUAD_REL_TOL,
    abs_tol: float = config.QUAD_ABS_TOL,
    max_panels: int = config.QUAD_MAX_PANELS,
) -> float:
    """
    Integrate f over (0, inf) with adaptive Gauss-Kronrod panels.

    Panels are [0, s], [s, 2s], [2s, 4s], ... with s = decay_scale. The tail is
    dropped once a whole panel stays below QUAD_TAIL_RATIO times the largest
    |f| seen so far.

    Args:
        f: Integrand, finite on (0, inf)
        decay_scale: Length over which f decays appreciably
        rel_tol: Target relative error
        abs_tol: Target absolute error
        max_panels: Number of panel doublings before giving up

    Returns:
        The integral
    """
    if decay_scale <= 0.0:
        raise InvalidArgumentError(f"decay_scale must be positive, got {decay_scale}")

    total = 0.0
    error = 0.0
    peak = 0.0
    left, right = 0.0, decay_scale

    for panel in range(max_panels):
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', IntegrationWarning)
            value, panel_error = quad(f, left, right, epsabs=0.1 * abs_tol,
                                      epsrel=0.01 * rel_tol, limit=200)
        total += value
        error += panel_error

        samples = np.linspace(left, right, 17)[1:]
        panel_peak = max(abs(float(f(x))) for x in samples)
        peak = max(peak, panel_peak, abs(value) / (right - left))

        if right >= TAIL_MIN_SCALES * decay_scale and panel_peak < config.QUAD_TAIL_RATIO * peak:
            if error <= rel_tol * abs(total) + abs_tol:
                logger.debug(f"Квадратура сошлась за {panel + 1} панелей: {total!r}")
                return total
            logger.error(f"❌ Квадратура не достигла точности: ошибка {error:.3e}")
            raise ConvergenceError(
                "quadrature error estimate above tolerance",
                best_estimate=total,
                diagnostics={'estimated_error': error, 'panels': panel + 1},
            )

        left, right = right, 2.0 * right

    logger.error(f"❌ Хвост интеграла не затух за {max_panels} панелей")
    raise ConvergenceError(
        "integrand tail did not decay",
        best_estimate=total,
        diagnostics={'estimated_error': error, 'panels': max_panels, 'last_point': left},
    )


def _apply_stencil(f: Callable, x, h: float, stencil: NDArray[np.float64]):
    x = np.asarray(x, dtype=np.float64)
    total = np.zeros_like(x)
    for offset, weight in zip(range(-3, 4), stencil):
        if weight != 0.0:
            total = total + weight * np.asarray(f(x + offset * h), dtype=np.float64)
    return total


def first_derivative(f: Callable, x, h: float = 1e-3):
    """Sixth-order central difference f'(x); vectorised over x."""
    return _apply_stencil(f, x, h, _FIRST_DERIVATIVE_STENCIL) / h


def second_derivative(f: Callable, x, h: float = 5e-3):
    """Sixth-order central difference f''(x); vectorised over x."""
    return _apply_stencil(f, x, h, _SECOND_DERIVATIVE_STENCIL) / (h * h)


def _residual_norm(values: NDArray[np.float64]) -> float:
    if not np.all(np.isfinite(values)):
        return math.inf
    return float(np.max(np.abs(values)))


def find_root_2d(
    residual: Callable[[float, float], Tuple[float, float]],
    initial: Tuple[float, float],
    tol: float,
    max_iterations: int = config.ROOT_MAX_ITERATIONS,
) -> RootResult:
    """
    Solve residual(x, y) = (0, 0).

    MINPACK's hybrid Powell step (a damped Newton iteration with a
    forward-difference Jacobian) goes first; Levenberg-Marquardt is the
    fallback when the Jacobian turns singular or the first attempt stalls.

    Args:
        residual: Map (x, y) -> (r1, r2)
        initial: Starting point
        tol: Required max(|r1|, |r2|)
        max_iterations: Cap on residual evaluations per attempt

    Returns:
        RootResult with the root, evaluation count and final residuals
    """
    if tol <= 0.0:
        raise InvalidArgumentError(f"tol must be positive, got {tol}")

    def vector_residual(z):
        return np.asarray(residual(float(z[0]), float(z[1])), dtype=np.float64)

    epsfcn = config.ROOT_JACOBIAN_STEP ** 2
    start = np.asarray(initial, dtype=np.float64)
    best: Optional[Tuple[NDArray[np.float64], float, int]] = None

    for method in ('hybr', 'lm'):
        try:
            with warnings.catch_warnings():
                warnings.simplefilter('ignore', RuntimeWarning)
                if method == 'hybr':
                    solution, info, _, _ = fsolve(vector_residual, start, full_output=True,
                                                  xtol=1e-14, maxfev=max_iterations, epsfcn=epsfcn)
                    iterations = int(info['nfev'])
                else:
                    outcome = root(vector_residual, start, method='lm',
                                   options={'xtol': 1e-14, 'ftol': 1e-15,
                                            'maxiter': max_iterations, 'eps': epsfcn})
                    solution, iterations = outcome.x, int(outcome.nfev)
        except (ValueError, FloatingPointError) as e:
            logger.warning(f"⚠️ Метод {method} не сработал: {e}")
            continue

        values = vector_residual(solution)
        norm = _residual_norm(values)
        if best is None or norm < best[1]:
            best = (solution, norm, iterations)

        if norm < tol:
            logger.debug(f"Корень найден методом {method} за {iterations} вычислений")
            return RootResult(
                x=float(solution[0]),
                y=float(solution[1]),
                iterations=iterations,
                residual=(float(values[0]), float(values[1])),
                method=method,
            )
        logger.warning(f"⚠️ Метод {method}: невязка {norm:.3e} выше допуска {tol:.1e}")

    logger.error("❌ Поиск корня не сошелся")
    raise ConvergenceError(
        "2D root finder did not converge",
        best_estimate=None if best is None else (float(best[0][0]), float(best[0][1])),
        diagnostics={'residual': None if best is None else best[1],
                     'iterations': None if best is None else best[2]},
    )
