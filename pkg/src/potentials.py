"""
Potential families: the Yukawa (screened Coulomb) potential, its six-term
power series and the even-power anharmonic oscillator it maps onto.

All potentials are in Hartree atomic units and are callable on numpy arrays.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.exceptions import InvalidArgumentError, PhysicsDomainError


def _positive_radius(r, name: str = 'r'):
    values = np.asarray(r, dtype=np.float64)
    if np.any(values <= 0.0):
        bad = float(values[values <= 0.0].flat[0]) if values.ndim else float(values)
        raise PhysicsDomainError(f"{name} must be positive, got {bad}")
    return values


def _as_result(value, r):
    return float(value) if np.ndim(r) == 0 else value


@dataclass(frozen=True)
class YukawaPotential:
    e2: float = 1.0
    delta: float = 0.0

    def __post_init__(self):
        if self.e2 <= 0.0:
            raise InvalidArgumentError(f"e2 must be positive, got {self.e2}")
        if self.delta < 0.0:
            raise InvalidArgumentError(f"delta must be non-negative, got {self.delta}")

    def __call__(self, r):
        return yukawa_eval(self, r)


@dataclass(frozen=True)
class PowerSeriesPotential:
    """A1/r + A2 + A3 r + A4 r^2 + A5 r^3 + A6 r^4"""

    A1: float
    A2: float = 0.0
    A3: float = 0.0
    A4: float = 0.0
    A5: float = 0.0
    A6: float = 0.0

    @property
    def coefficients(self) -> Tuple[float, float, float, float, float, float]:
        return (self.A1, self.A2, self.A3, self.A4, self.A5, self.A6)

    @property
    def coupling(self) -> float:
        """Strength of the Coulomb tail, -A1 (e^2 for a Yukawa truncation)."""
        return -self.A1

    def __call__(self, r):
        return powerseries_eval(self, r)


@dataclass(frozen=True)
class OscillatorPotential:
    """c2 rho^2 + c4 rho^4 + c6 rho^6 + c8 rho^8 + c10 rho^10"""

    c2: float
    c4: float = 0.0
    c6: float = 0.0
    c8: float = 0.0
    c10: float = 0.0

    @property
    def coefficients(self) -> Tuple[float, float, float, float, float]:
        return (self.c2, self.c4, self.c6, self.c8, self.c10)

    @property
    def is_confining(self) -> bool:
        if self.c10 > 0.0:
            return True
        # Highest non-zero power decides
        for c in (self.c8, self.c6, self.c4, self.c2):
            if c != 0.0:
                return c > 0.0
        return False

    def __call__(self, rho):
        return oscillator_eval(self, rho)


def yukawa_eval(p: YukawaPotential, r):
    """-e^2 exp(-delta r) / r"""
    values = _positive_radius(r)
    return _as_result(-p.e2 * np.exp(-p.delta * values) / values, r)


def truncate_yukawa(p: YukawaPotential) -> PowerSeriesPotential:
    """
    Expand the Yukawa potential to fourth order in r.

    Args:
        p: Yukawa potential

    Returns:
        PowerSeriesPotential with the alternating-sign coefficients
        -e^2, e^2 d, -e^2 d^2/2, e^2 d^3/6, -e^2 d^4/24, e^2 d^5/120
    """
    e2, d = p.e2, p.delta
    return PowerSeriesPotential(
        A1=-e2,
        A2=e2 * d,
        A3=-e2 * d ** 2 / 2.0,
        A4=e2 * d ** 3 / 6.0,
        A5=-e2 * d ** 4 / 24.0,
        A6=e2 * d ** 5 / 120.0,
    )


def screened_coulomb(delta: float, e2: float = 1.0) -> PowerSeriesPotential:
    """Shortcut for truncate_yukawa(YukawaPotential(e2, delta))."""
    return truncate_yukawa(YukawaPotential(e2=e2, delta=delta))


def powerseries_eval(p: PowerSeriesPotential, r):
    values = _positive_radius(r)
    polynomial = ((((p.A6 * values + p.A5) * values + p.A4) * values + p.A3) * values) + p.A2
    return _as_result(p.A1 / values + polynomial, r)


def oscillator_eval(p: OscillatorPotential, rho):
    values = np.asarray(rho, dtype=np.float64)
    if np.any(values < 0.0):
        raise PhysicsDomainError("rho must be non-negative")
    s = values * values
    result = ((((p.c10 * s + p.c8) * s + p.c6) * s + p.c4) * s + p.c2) * s
    return _as_result(result, rho)
