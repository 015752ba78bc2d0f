import math

import numpy as np
import pytest

from src.exceptions import InvalidArgumentError, PhysicsDomainError
from src.potentials import (
    OscillatorPotential,
    PowerSeriesPotential,
    YukawaPotential,
    oscillator_eval,
    powerseries_eval,
    screened_coulomb,
    truncate_yukawa,
    yukawa_eval,
)


@pytest.mark.parametrize("delta, r, expected", [
    (0.0, 1.0, -1.0),
    (0.01, 1.0, -math.exp(-0.01)),
    (0.025, 2.0, -math.exp(-0.05) / 2.0),
])
def test_yukawa_eval(delta, r, expected):
    assert yukawa_eval(YukawaPotential(e2=1.0, delta=delta), r) == pytest.approx(expected, rel=1e-14)


def test_yukawa_rejects_non_positive_radius():
    with pytest.raises(PhysicsDomainError):
        yukawa_eval(YukawaPotential(), 0.0)
    with pytest.raises(PhysicsDomainError):
        YukawaPotential()(np.array([1.0, -1.0]))


def test_yukawa_rejects_bad_parameters():
    with pytest.raises(InvalidArgumentError):
        YukawaPotential(e2=0.0)
    with pytest.raises(InvalidArgumentError):
        YukawaPotential(delta=-0.1)


def test_truncate_yukawa_coulomb_limit():
    assert truncate_yukawa(YukawaPotential(e2=1.0, delta=0.0)).coefficients == (-1.0, 0.0, 0.0, 0.0, 0.0, 0.0)


def test_truncate_yukawa_coefficients():
    p = truncate_yukawa(YukawaPotential(e2=1.0, delta=0.01))
    expected = (-1.0, 1e-2, -5e-5, 1.0e-6 / 6.0, -1.0e-8 / 24.0, 1.0e-10 / 120.0)
    assert p.coefficients == pytest.approx(expected, rel=1e-12)
    assert p.coupling == 1.0


def test_truncate_yukawa_scales_with_coupling():
    p = truncate_yukawa(YukawaPotential(e2=2.0, delta=0.1))
    assert p.A3 == pytest.approx(-0.01)
    assert p.A6 == pytest.approx(2.0 * 1e-5 / 120.0)
    assert screened_coulomb(0.1, e2=2.0) == p


def test_powerseries_eval():
    assert powerseries_eval(PowerSeriesPotential(A1=-1.0), 2.0) == -0.5
    assert powerseries_eval(PowerSeriesPotential(0.0, 1.0, 1.0, 1.0, 1.0, 1.0), 1.0) == pytest.approx(5.0)


def test_truncation_tracks_yukawa():
    yukawa = YukawaPotential(e2=1.0, delta=0.025)
    assert abs(powerseries_eval(truncate_yukawa(yukawa), 1.0) - yukawa_eval(yukawa, 1.0)) < 1.1e-10


def test_truncation_error_below_first_dropped_term():
    rng = np.random.default_rng(5)
    for _ in range(200):
        delta = float(rng.uniform(1e-4, 0.025))
        r = float(rng.uniform(0.1, 10.0))
        yukawa = YukawaPotential(e2=1.0, delta=delta)
        gap = abs(powerseries_eval(truncate_yukawa(yukawa), r) - yukawa_eval(yukawa, r))
        # Alternating tail: bounded by the delta^6 r^5 / 720 term
        assert gap <= delta ** 6 * r ** 5 / 720.0 + 1e-13, (delta, r)


def test_powerseries_vectorised_and_domain():
    p = screened_coulomb(0.01)
    r = np.array([0.5, 1.0, 4.0])
    assert p(r) == pytest.approx([powerseries_eval(p, x) for x in r], rel=1e-15)
    with pytest.raises(PhysicsDomainError):
        p(0.0)


@pytest.mark.parametrize("coefficients, rho, expected", [
    ((1.0, 0.0, 0.0, 0.0, 0.0), 3.0, 9.0),
    ((1.0, 1.0, 1.0, 1.0, 1.0), 1.0, 5.0),
    ((2.0, 0.0, 0.0, 0.0, 0.5), 2.0, 520.0),
])
def test_oscillator_eval(coefficients, rho, expected):
    assert oscillator_eval(OscillatorPotential(*coefficients), rho) == pytest.approx(expected)


def test_oscillator_origin_and_domain():
    assert OscillatorPotential(c2=1.0, c10=3.0)(0.0) == 0.0
    with pytest.raises(PhysicsDomainError):
        OscillatorPotential(c2=1.0)(-0.5)


def test_oscillator_confinement():
    assert OscillatorPotential(c2=1.0).is_confining
    assert OscillatorPotential(c2=-1.0, c4=0.5).is_confining
    assert not OscillatorPotential(c2=1.0, c6=-0.1).is_confining
    assert not OscillatorPotential(c2=0.0).is_confining
