"""
Closed-form ground states from supersymmetric quantum mechanics.

A superpotential W is matched term by term so that W^2 + W' equals the
effective potential of the reduced radial equation shifted by -2 E0. The
match fixes the ansatz parameters and the energy, and leaves two extra
conditions on the potential coefficients; only potentials meeting them are
exactly solved. Both the truncated screened Coulomb potential (W with
powers 1/r, 1, r, r^2) and the even-power oscillator (W with powers
1/rho, rho, rho^3, rho^5) are covered.

Each exact solution holds for a single state and a single choice of the
coupling constants, so the solutions found for different constraints
belong to different potentials and are not mutually orthogonal.
"""

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence, Tuple

import numpy as np

import config
from src.exceptions import (
    InvalidArgumentError,
    NonNormalizableError,
    NoValidAnsatzError,
    PhysicsDomainError,
)
from src.logger import logger
from src.numerics import find_root_2d, first_derivative, integrate_semi_infinite, second_derivative
from src.potentials import (
    OscillatorPotential,
    PowerSeriesPotential,
    YukawaPotential,
    truncate_yukawa,
)


@dataclass(frozen=True)
class SusyCoulombAnsatz:
    """W(r) = a1/r + a2 + a3 r + a4 r^2"""

    a1: float
    a2: float
    a3: float
    a4: float

    @property
    def M(self) -> float:
        return 2.0 * self.a1 + 1.0


@dataclass(frozen=True)
class SusyOscillatorAnsatz:
    """W(rho) = a rho^5 + b rho^3 + c/rho + d rho"""

    a: float
    b: float
    c: float
    d: float

    @property
    def M_prime(self) -> float:
        return 2.0 * self.c + 1.0


@dataclass(frozen=True)
class ExactSolution:
    energy: float
    wavefunction: Callable
    normalization: float
    constraint_residuals: Tuple[float, float]

    def normalized(self, r):
        return self.normalization * self.wavefunction(r)


@dataclass(frozen=True)
class SusyPoint:
    M: float
    delta: float
    e2: float
    residuals: Tuple[float, float]
    iterations: int
    energy: float


class PartnerCoefficients(NamedTuple):
    """Coefficients of W^2 + W' by power of r."""

    inverse_r: float
    constant: float
    linear: float
    quadratic: float
    cubic: float
    quartic: float
    inverse_r2: float


def _require_positive_r(r):
    values = np.asarray(r, dtype=np.float64)
    if np.any(values <= 0.0):
        raise PhysicsDomainError("r must be positive")
    return values


def _sqrt_two_a6(p: PowerSeriesPotential) -> float:
    if p.A6 <= 0.0:
        raise PhysicsDomainError(f"A6 must be positive for a confining ansatz, got {p.A6}")
    return math.sqrt(2.0 * p.A6)


# ---------------------------------------------------------------------------
# Screened Coulomb side
# ---------------------------------------------------------------------------

def partner_coefficients(a1: float, a2: float, a3: float, a4: float) -> PartnerCoefficients:
    """Expansion of W^2 + W' for raw superpotential coefficients."""
    return PartnerCoefficients(
        inverse_r=2.0 * a1 * a2,
        constant=a2 * a2 + a3 * (2.0 * a1 + 1.0),
        linear=2.0 * (a1 * a4 + a4 + a2 * a3),
        quadratic=2.0 * a2 * a4 + a3 * a3,
        cubic=2.0 * a3 * a4,
        quartic=a4 * a4,
        inverse_r2=a1 * (a1 - 1.0),
    )


def superpotential(w: SusyCoulombAnsatz, r):
    values = _require_positive_r(r)
    return w.a1 / values + w.a2 + w.a3 * values + w.a4 * values * values


def susy_partner_potential(w: SusyCoulombAnsatz, r):
    """
    V+(r) = W^2 + W' written out term by term.

    Args:
        w: Superpotential parameters
        r: Radius (scalar or array), r > 0

    Returns:
        V+ at r
    """
    values = _require_positive_r(r)
    k = partner_coefficients(w.a1, w.a2, w.a3, w.a4)
    result = (k.inverse_r / values + k.constant + k.linear * values + k.quadratic * values ** 2
              + k.cubic * values ** 3 + k.quartic * values ** 4 + k.inverse_r2 / values ** 2)
    return float(result) if np.ndim(r) == 0 else result


def susy_coulomb_params(p: PowerSeriesPotential, M: float) -> SusyCoulombAnsatz:
    """
    Superpotential matched to the truncated screened Coulomb potential.

    Args:
        p: Power-series potential (A6 > 0)
        M: Index N + 2 ell, M >= 2

    Returns:
        Ansatz with a1 = (M-1)/2, a2 = 2A1/(M-1), a3 = -A5/sqrt(2A6), a4 = -sqrt(2A6)
    """
    if M < 2:
        raise InvalidArgumentError(f"M must be >= 2, got {M}")
    root = _sqrt_two_a6(p)
    # Negative a4 keeps the state bounded at infinity
    return SusyCoulombAnsatz(
        a1=(M - 1.0) / 2.0,
        a2=2.0 * p.A1 / (M - 1.0),
        a3=-p.A5 / root,
        a4=-root,
    )


def susy_coulomb_energy(p: PowerSeriesPotential, M: float) -> float:
    """E0 = A2 - [4 A1^2/(M-1)^2 - A5 M / sqrt(2 A6)] / 2"""
    if M == 1:
        raise PhysicsDomainError("M = 1 makes the SUSY energy undefined")
    root = _sqrt_two_a6(p)
    return p.A2 - 0.5 * (4.0 * p.A1 ** 2 / (M - 1.0) ** 2 - p.A5 * M / root)


def coulomb_constraint_residuals(p: PowerSeriesPotential, M: float) -> Tuple[float, float]:
    """
    Residuals of the two coefficient conditions left over by the match.

    Returns:
        (A1 - required A1, A3 - required A3); both vanish when the
        potential is exactly solved by the ansatz
    """
    if M == 1:
        raise PhysicsDomainError("M = 1 makes the constraints undefined")
    root = _sqrt_two_a6(p)
    required_a1 = -(M - 1.0) * (8.0 * p.A6 * p.A4 - 2.0 * p.A5 ** 2) / (16.0 * p.A6 * root)
    required_a3 = -root * ((M + 1.0) / 2.0 + p.A1 * p.A5 / ((M - 1.0) * p.A6))
    return (p.A1 - required_a1, p.A3 - required_a3)


def susy_coulomb_constraints(e2: float, delta: float, M: float) -> Tuple[float, float]:
    """Constraint residuals for the Yukawa truncation with coupling e2 and screening delta."""
    if delta <= 0.0:
        raise PhysicsDomainError(f"delta must be positive, got {delta}")
    return coulomb_constraint_residuals(truncate_yukawa(YukawaPotential(e2=e2, delta=delta)), M)


def solve_susy_coulomb_point(
    e2: float = 1.0,
    initial: Optional[Tuple[float, float]] = None,
    tol: float = config.SUSY_ROOT_TOL,
) -> SusyPoint:
    """
    Find (M, delta) where the truncated Yukawa potential is exactly solvable.

    The search runs in (M, log delta) so delta stays positive. M is a real
    number here; its distance from an integer is reported, not enforced.

    Args:
        e2: Coupling constant
        initial: (M, delta) starting guess, default (4, 0.2 e2)
        tol: Required size of both residuals

    Returns:
        SusyPoint with the root, residuals and the SUSY ground energy
    """
    if initial is None:
        initial = (config.SUSY_DEFAULT_GUESS[0], config.SUSY_DEFAULT_GUESS[1] * e2)
    m0, delta0 = initial
    if delta0 <= 0.0:
        raise InvalidArgumentError(f"initial delta must be positive, got {delta0}")

    logger.info(f"🔍 Поиск SUSY-точки для e2 = {e2}, старт (M, δ) = ({m0}, {delta0})")

    def residual(m, log_delta):
        return susy_coulomb_constraints(e2, math.exp(log_delta), m)

    result = find_root_2d(residual, (m0, math.log(delta0)), tol)
    M, delta = result.x, math.exp(result.y)
    residuals = susy_coulomb_constraints(e2, delta, M)
    energy = susy_coulomb_energy(truncate_yukawa(YukawaPotential(e2=e2, delta=delta)), M)

    logger.info(f"✅ SUSY-точка: M = {M:.6f}, δ = {delta:.6f}, E0 = {energy:.6f}")
    if abs(M - round(M)) > 1e-6:
        logger.info(f"ℹ️ M = {M:.4f} не целое; ближайшее M = {round(M)}")

    return SusyPoint(M=M, delta=delta, e2=e2, residuals=residuals,
                     iterations=result.iterations, energy=energy)


def susy_coulomb_wavefunction(w: SusyCoulombAnsatz, p: PowerSeriesPotential) -> ExactSolution:
    """
    Ground state r^a1 exp(a2 r + a3 r^2/2 + a4 r^3/3), normalized numerically.

    Args:
        w: Superpotential parameters
        p: Potential the ansatz was matched to; supplies A2 for the energy
           and the constraint residuals

    Returns:
        ExactSolution
    """
    if w.a4 >= 0.0:
        raise NonNormalizableError(f"a4 = {w.a4} >= 0: the state grows at infinity")

    a1, a2, a3, a4 = w.a1, w.a2, w.a3, w.a4

    def wavefunction(r):
        values = np.asarray(r, dtype=np.float64)
        result = values ** a1 * np.exp(a2 * values + 0.5 * a3 * values ** 2 + a4 * values ** 3 / 3.0)
        return float(result) if np.ndim(r) == 0 else result

    scale = abs(a4) ** (-1.0 / 3.0)
    if a2 < 0.0:
        scale = min(scale, 1.0 / abs(a2))
    norm_integral = integrate_semi_infinite(lambda r: wavefunction(r) ** 2, scale)

    return ExactSolution(
        energy=susy_coulomb_energy(p, w.M),
        wavefunction=wavefunction,
        normalization=1.0 / math.sqrt(norm_integral),
        constraint_residuals=coulomb_constraint_residuals(p, w.M),
    )


# ---------------------------------------------------------------------------
# Anharmonic oscillator side
# ---------------------------------------------------------------------------

def susy_oscillator_params(p: PowerSeriesPotential, E0: float, M_prime: float) -> SusyOscillatorAnsatz:
    """
    Superpotential matched to the mapped oscillator built from p and E0.

    Of the two roots for a only the negative one is normalizable; d must
    come out negative as well.

    Args:
        p: Coulomb-side power-series potential (A6 > 0)
        E0: Coulomb-side bound level (< 0)
        M_prime: Index N' + 2L of the oscillator side

    Returns:
        SusyOscillatorAnsatz with a < 0, d < 0
    """
    if E0 >= 0.0:
        raise PhysicsDomainError(f"E0 must be negative, got {E0}")
    if p.A6 <= 0.0:
        raise PhysicsDomainError(f"A6 must be positive, got {p.A6}")

    e = -E0
    magnitude = math.sqrt(p.A6 / 8.0) / e ** 1.5

    def branch(a: float) -> SusyOscillatorAnsatz:
        b = p.A5 / (8.0 * a) / e ** 2.5
        d = (p.A4 / (2.0 * e * e) - b * b) / (2.0 * a)
        return SusyOscillatorAnsatz(a=a, b=b, c=(M_prime - 1.0) / 2.0, d=d)

    rejected = branch(magnitude)
    logger.debug(f"Ветвь a > 0 отброшена (ненормируема): a = {rejected.a!r}, d = {rejected.d!r}")

    ansatz = branch(-magnitude)
    if ansatz.d >= 0.0:
        logger.error(f"❌ d = {ansatz.d} >= 0: нормируемого решения нет")
        raise NoValidAnsatzError(f"d = {ansatz.d} is not negative for a < 0")
    return ansatz


def susy_oscillator_energy(ansatz: SusyOscillatorAnsatz) -> float:
    """E_hat = -d (2c + 1) / 2"""
    return -0.5 * ansatz.d * (2.0 * ansatz.c + 1.0)


def susy_oscillator_energy_closed_form(p: PowerSeriesPotential, E0: float, M_prime: float) -> float:
    """The same energy written through the Coulomb-side coefficients."""
    root = _sqrt_two_a6(p)
    return (8.0 * p.A6 * p.A4 - 2.0 * p.A5 ** 2) / (16.0 * p.A6 * root) * M_prime / math.sqrt(abs(E0))


def qes_oscillator_potential(ansatz: SusyOscillatorAnsatz) -> OscillatorPotential:
    """Oscillator potential whose ground state is exactly the ansatz state."""
    a, b, c, d = ansatz.a, ansatz.b, ansatz.c, ansatz.d
    return OscillatorPotential(
        c2=0.5 * (d * d + 2.0 * b * c + 3.0 * b),
        c4=0.5 * (2.0 * a * c + 2.0 * b * d + 5.0 * a),
        c6=0.5 * (b * b + 2.0 * a * d),
        c8=a * b,
        c10=0.5 * a * a,
    )


def oscillator_constraint_residuals(
    ansatz: SusyOscillatorAnsatz, potential: OscillatorPotential
) -> Tuple[float, float]:
    """Mismatch of the rho^4 and rho^2 coefficients between potential and ansatz."""
    exact = qes_oscillator_potential(ansatz)
    return (potential.c4 - exact.c4, potential.c2 - exact.c2)


def susy_oscillator_wavefunction(
    ansatz: SusyOscillatorAnsatz, potential: Optional[OscillatorPotential] = None
) -> ExactSolution:
    """
    Ground state rho^c exp(a rho^6/6 + b rho^4/4 + d rho^2/2), normalized numerically.

    The reduced function relates to F(rho) of the N'-dimensional radial
    equation by Psi(rho) = rho^((N'-1)/2) F(rho).

    Args:
        ansatz: Superpotential parameters
        potential: Oscillator to report constraint residuals against;
                   defaults to the ansatz's own exactly solved potential

    Returns:
        ExactSolution
    """
    if ansatz.a >= 0.0:
        raise NonNormalizableError(f"a = {ansatz.a} >= 0: the state grows at infinity")

    a, b, c, d = ansatz.a, ansatz.b, ansatz.c, ansatz.d

    def wavefunction(rho):
        values = np.asarray(rho, dtype=np.float64)
        s = values * values
        result = values ** c * np.exp(a * s ** 3 / 6.0 + b * s * s / 4.0 + d * s / 2.0)
        return float(result) if np.ndim(rho) == 0 else result

    scale = abs(a) ** (-1.0 / 6.0)
    if d < 0.0:
        scale = min(scale, abs(d) ** -0.5)
    norm_integral = integrate_semi_infinite(lambda rho: wavefunction(rho) ** 2, scale)

    target = potential if potential is not None else qes_oscillator_potential(ansatz)
    return ExactSolution(
        energy=susy_oscillator_energy(ansatz),
        wavefunction=wavefunction,
        normalization=1.0 / math.sqrt(norm_integral),
        constraint_residuals=oscillator_constraint_residuals(ansatz, target),
    )


# ---------------------------------------------------------------------------
# Finite-difference checks
# ---------------------------------------------------------------------------

def partner_identity_error(w: SusyCoulombAnsatz, radii: Sequence[float], h: float = 1e-3) -> float:
    """
    Largest relative gap between the expanded V+ and W^2 + W' with W'
    taken by finite differences.
    """
    r = np.asarray(radii, dtype=np.float64)
    expanded = susy_partner_potential(w, r)
    numeric = superpotential(w, r) ** 2 + first_derivative(lambda x: superpotential(w, x), r, h)
    scale = np.maximum(np.abs(numeric), 1.0)
    return float(np.max(np.abs(expanded - numeric) / scale))


def hamiltonian_residual(
    solution: ExactSolution,
    M: float,
    potential: Callable,
    radii: Sequence[float],
    h: float = 5e-3,
) -> float:
    """
    Relative residual of -Psi'' + [(M-1)(M-3)/(4r^2) + 2V] Psi - 2E Psi.

    Psi'' comes from a sixth-order finite difference; the residual is
    divided by max |2 E Psi| over the sampled radii.
    """
    r = np.asarray(radii, dtype=np.float64)
    if np.any(r - 3.0 * h <= 0.0):
        raise InvalidArgumentError("every radius must exceed three finite-difference steps")
    psi = solution.wavefunction(r)
    curvature = second_derivative(solution.wavefunction, r, h)
    effective = (M - 1.0) * (M - 3.0) / (4.0 * r * r) + 2.0 * np.asarray(potential(r))
    residual = -curvature + effective * psi - 2.0 * solution.energy * psi
    return float(np.max(np.abs(residual)) / np.max(np.abs(2.0 * solution.energy * psi)))
