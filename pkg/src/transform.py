"""
Mapping between the N-dimensional screened Coulomb problem and the
N'-dimensional anharmonic oscillator.

With r = alpha rho^2 / 2 and R = F / rho^lambda the radial equation in N
dimensions with angular momentum ell becomes an oscillator equation in
N' = 2N - 2 - 2 lambda dimensions with angular momentum L = 2 ell + lambda.
Choosing alpha^2 = 1/|E0| for a bound level E0 fixes the oscillator
coefficients and its ground energy.
"""

import math
from dataclasses import dataclass

import numpy as np

from src.exceptions import InvalidArgumentError, PhysicsDomainError
from src.logger import logger
from src.potentials import OscillatorPotential, PowerSeriesPotential, powerseries_eval

ALLOWED_LAMBDAS = (0, 1)


@dataclass(frozen=True)
class QuantumNumbers:
    N: int
    ell: int
    n: int = 0

    def __post_init__(self):
        if self.N < 2:
            raise InvalidArgumentError(f"dimension N must be >= 2, got {self.N}")
        if self.ell < 0:
            raise InvalidArgumentError(f"ell must be >= 0, got {self.ell}")
        if self.n < 0:
            raise InvalidArgumentError(f"n must be >= 0, got {self.n}")

    @property
    def M(self) -> int:
        """Index N + 2 ell; the reduced radial equation only sees this."""
        return self.N + 2 * self.ell


@dataclass(frozen=True)
class MappedSpace:
    N_prime: int
    L: int
    lambda_: int
    M_prime: int


@dataclass(frozen=True)
class MappedSystem:
    oscillator: OscillatorPotential
    E_hat_exact: float
    alpha: float
    source_energy: float


def _check_lambda(lambda_: int):
    if (isinstance(lambda_, bool) or not isinstance(lambda_, (int, np.integer))
            or lambda_ not in ALLOWED_LAMBDAS):
        raise InvalidArgumentError(f"lambda must be 0 or 1, got {lambda_!r}")


def map_space(q: QuantumNumbers, lambda_: int) -> MappedSpace:
    """
    Dimension and angular momentum of the oscillator side.

    Args:
        q: Quantum numbers on the Coulomb side
        lambda_: Mapping parameter, 0 or 1

    Returns:
        MappedSpace with N' = 2N - 2 - 2 lambda, L = 2 ell + lambda, M' = N' + 2L
    """
    _check_lambda(lambda_)
    n_prime = 2 * q.N - 2 - 2 * lambda_
    big_l = 2 * q.ell + lambda_
    m_prime = n_prime + 2 * big_l
    if m_prime != 2 * (q.M - 1):
        raise AssertionError(f"M' = {m_prime} differs from 2(M-1) = {2 * (q.M - 1)}")
    return MappedSpace(N_prime=n_prime, L=big_l, lambda_=lambda_, M_prime=m_prime)


def map_coordinate(alpha: float, rho):
    """r = alpha rho^2 / 2"""
    if alpha <= 0.0:
        raise InvalidArgumentError(f"alpha must be positive, got {alpha}")
    values = np.asarray(rho, dtype=np.float64)
    if np.any(values < 0.0):
        raise PhysicsDomainError("rho must be non-negative")
    r = 0.5 * alpha * values * values
    return float(r) if np.ndim(rho) == 0 else r


def map_system(p: PowerSeriesPotential, E0: float) -> MappedSystem:
    """
    Oscillator potential and exact ground energy obtained from a bound level E0.

    Args:
        p: Truncated screened Coulomb potential
        E0: Coulomb-side ground energy (< 0)

    Returns:
        MappedSystem with the five even-power coefficients and E_hat = -2 A1 / |E0|^(1/2)
    """
    if E0 >= 0.0:
        raise PhysicsDomainError(f"mapping needs a bound level E0 < 0, got {E0}")
    if p.A6 < 0.0:
        raise PhysicsDomainError(f"A6 must be non-negative for a confining map, got {p.A6}")

    e = -E0
    root_e = math.sqrt(e)
    oscillator = OscillatorPotential(
        c2=1.0 + p.A2 / e,
        c4=p.A3 / (2.0 * e * root_e),
        c6=p.A4 / (4.0 * e * e),
        c8=p.A5 / (8.0 * e * e * root_e),
        c10=p.A6 / (16.0 * e ** 3),
    )
    e_hat = -2.0 * p.A1 / root_e
    logger.debug(f"Отображение: |E0| = {e!r}, E_hat = {e_hat!r}")
    return MappedSystem(oscillator=oscillator, E_hat_exact=e_hat, alpha=1.0 / root_e, source_energy=E0)


def transformed_potential(p: PowerSeriesPotential, E0: float, rho):
    """
    Oscillator potential evaluated straight from the substitution,
    E_hat - alpha^2 rho^2 (E0 - V(alpha rho^2 / 2)) with alpha^2 = 1/|E0|.

    Agrees with map_system(p, E0).oscillator wherever rho > 0.
    """
    if E0 >= 0.0:
        raise PhysicsDomainError(f"mapping needs a bound level E0 < 0, got {E0}")
    alpha = 1.0 / math.sqrt(-E0)
    e_hat = -2.0 * p.A1 * alpha
    values = np.asarray(rho, dtype=np.float64)
    r = map_coordinate(alpha, values)
    scaled = alpha * alpha * values * values
    result = e_hat - scaled * E0 + scaled * powerseries_eval(p, r)
    return float(result) if np.ndim(rho) == 0 else result


def check_lambda_consistency(q: QuantumNumbers, lambda_: int) -> float:
    """
    Ratio M'/(M - 1) that reconciles the SUSY and mapping energies.

    Args:
        q: Coulomb-side quantum numbers
        lambda_: Mapping parameter, 0 or 1

    Returns:
        The ratio; equal to 2 for every admissible input
    """
    _check_lambda(lambda_)
    if q.M == 1:
        raise PhysicsDomainError("M = 1 makes M'/(M - 1) undefined")
    n_prime = 2 * q.N - 2 - 2 * lambda_
    big_l = 2 * q.ell + lambda_
    return (n_prime + 2 * big_l) / (q.M - 1)
