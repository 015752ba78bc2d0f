"""
Command-line interface.

Usage:
    python main.py table1                          # full 3D and 5D level table
    python main.py table1 --delta 0.001 --dims 3   # one screening value, 3D only
    python main.py table2 --delta 0.025            # mapped oscillator ground energies
    python main.py solve --dim 3 --ell 0 --delta 0 --states 2
    python main.py map --dim 3 --ell 1 --delta 0.005
    python main.py susy-point                      # (M, delta) of the exactly solved potential
    python main.py susy-check                      # finite-difference checks of the closed forms

Records go to stdout (or --output) as csv, json or an aligned table; logs go
to stderr. Exit status: 0 on success, 1 on solver failure or a failed check,
2 on invalid arguments.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import click
import numpy as np

import config
from src.exceptions import ConvergenceError, InvalidArgumentError, ScreenedCoulombError
from src.logger import logger
from src.potentials import screened_coulomb
from src.record_writer import RecordWriter
from src.spectra import solve_radial
from src.susy import (
    SusyCoulombAnsatz,
    hamiltonian_residual,
    partner_identity_error,
    qes_oscillator_potential,
    solve_susy_coulomb_point,
    susy_coulomb_params,
    susy_coulomb_wavefunction,
    susy_oscillator_energy,
    susy_oscillator_params,
    susy_oscillator_wavefunction,
)
from src.tables import table1, table2
from src.transform import QuantumNumbers, map_space, map_system

COMMANDS = ('table1', 'table2', 'solve', 'map', 'susy-point', 'susy-check')
FORMATS = ('csv', 'json', 'pretty')
TABLE_COMMANDS = ('table1', 'table2')

CHECK_THRESHOLD = 1e-8
IDENTITY_THRESHOLD = 1e-10


@dataclass(frozen=True)
class RunConfig:
    command: str
    delta_list: Tuple[float, ...] = config.TABLE_DELTAS
    dimension: int = 3
    ell: int = 0
    states: int = config.TABLE1_STATES
    tolerance: float = config.DEFAULT_TOL
    output_format: str = 'csv'
    output_path: Optional[str] = None
    dims: Tuple[int, ...] = config.TABLE1_DIMS
    ells: Tuple[int, ...] = config.TABLE_ELLS
    e2: float = config.DEFAULT_E2
    lambda_: int = config.DEFAULT_LAMBDA
    guess: Optional[Tuple[float, float]] = None
    samples: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InvalidArgumentError(f"unknown command: {self.command}")
        if self.output_format not in FORMATS:
            raise InvalidArgumentError(f"unknown format: {self.output_format}")
        if not self.tolerance > 0.0:
            raise InvalidArgumentError(f"tolerance must be positive, got {self.tolerance}")
        if not 1 <= self.states <= config.MAX_STATES:
            raise InvalidArgumentError(f"states must lie in [1, {config.MAX_STATES}], got {self.states}")
        if self.command in TABLE_COMMANDS and not self.delta_list:
            raise InvalidArgumentError("delta list must not be empty")
        if not self.e2 > 0.0:
            raise InvalidArgumentError(f"e2 must be positive, got {self.e2}")


@dataclass
class RunOutcome:
    status: int
    records: List[Dict[str, Any]] = field(default_factory=list)
    diagnostic: Optional[Dict[str, Any]] = None


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _run_solve(cfg: RunConfig) -> List[Dict[str, Any]]:
    delta = cfg.delta_list[0] if cfg.delta_list else 0.0
    result = solve_radial(cfg.dimension, cfg.ell, screened_coulomb(delta, cfg.e2),
                          cfg.states, cfg.tolerance)
    records = []
    for n, (energy, report, bound) in enumerate(zip(result.energies, result.reports, result.bound)):
        if not bound:
            flag = 'unbound'
        else:
            flag = 'positive' if energy > 0.0 else 'bound'
        records.append({
            'delta': delta,
            'N': cfg.dimension,
            'ell': cfg.ell,
            'n': n,
            'energy': float(energy),
            'estimated_error': report.estimated_error,
            'flag': flag,
        })
    return records


def _run_map(cfg: RunConfig) -> List[Dict[str, Any]]:
    delta = cfg.delta_list[0] if cfg.delta_list else 0.0
    potential = screened_coulomb(delta, cfg.e2)
    q = QuantumNumbers(N=cfg.dimension, ell=cfg.ell)
    space = map_space(q, cfg.lambda_)

    E0 = float(solve_radial(q.N, q.ell, potential, 1, cfg.tolerance).energies[0])
    system = map_system(potential, E0)
    mesh = float(solve_radial(space.N_prime, space.L, system.oscillator, 1, cfg.tolerance).energies[0])

    c2, c4, c6, c8, c10 = system.oscillator.coefficients
    return [{
        'delta': delta,
        'N': q.N,
        'ell': q.ell,
        'lambda': cfg.lambda_,
        'N_prime': space.N_prime,
        'L': space.L,
        'M_prime': space.M_prime,
        'E0': E0,
        'alpha': system.alpha,
        'c2': c2,
        'c4': c4,
        'c6': c6,
        'c8': c8,
        'c10': c10,
        'Ehat_exact': system.E_hat_exact,
        'Ehat_mesh': mesh,
        'abs_diff': abs(mesh - system.E_hat_exact),
    }]


def _run_susy_point(cfg: RunConfig) -> List[Dict[str, Any]]:
    point = solve_susy_coulomb_point(cfg.e2, cfg.guess)
    return [{
        'e2': point.e2,
        'M': point.M,
        'delta': point.delta,
        'nearest_M': int(round(point.M)),
        'residual_1': point.residuals[0],
        'residual_2': point.residuals[1],
        'iterations': point.iterations,
        'energy': point.energy,
    }]


def _random_ansatz(rng: np.random.Generator) -> SusyCoulombAnsatz:
    return SusyCoulombAnsatz(
        a1=float(rng.uniform(0.5, 5.0)),
        a2=float(rng.uniform(-2.0, 2.0)),
        a3=float(rng.uniform(-1.0, 1.0)),
        a4=-float(rng.uniform(1e-3, 1.0)),
    )


def _check(name: str, value: float, threshold: float) -> Dict[str, Any]:
    return {'check': name, 'value': value, 'threshold': threshold, 'passed': bool(value < threshold)}


def _run_susy_check(cfg: RunConfig) -> List[Dict[str, Any]]:
    rng = np.random.default_rng(cfg.seed)
    radii = np.linspace(0.5, 10.0, 40)
    partner = max(partner_identity_error(_random_ansatz(rng), radii) for _ in range(cfg.samples))

    point = solve_susy_coulomb_point(cfg.e2, cfg.guess)
    p_star = screened_coulomb(point.delta, cfg.e2)
    coulomb = susy_coulomb_wavefunction(susy_coulomb_params(p_star, point.M), p_star)
    coulomb_residual = hamiltonian_residual(coulomb, point.M, p_star, np.linspace(0.2, 15.0, 300))

    # Oscillator ansatz built from a numerically solved level
    delta = cfg.delta_list[-1] if cfg.delta_list else config.TABLE_DELTAS[-1]
    p = screened_coulomb(delta, cfg.e2)
    q = QuantumNumbers(N=cfg.dimension, ell=cfg.ell)
    space = map_space(q, cfg.lambda_)
    E0 = float(solve_radial(q.N, q.ell, p, 1, cfg.tolerance).energies[0])
    ansatz = susy_oscillator_params(p, E0, space.M_prime)
    oscillator = susy_oscillator_wavefunction(ansatz)
    oscillator_residual = hamiltonian_residual(oscillator, space.M_prime, qes_oscillator_potential(ansatz),
                                               np.linspace(0.2, 6.0, 300))

    # Both oscillator energies at the exactly solved point
    E_star = float(solve_radial(3, 0, p_star, 1, cfg.tolerance).energies[0])
    M_prime_star = 2.0 * (point.M - 1.0)
    from_susy = susy_oscillator_energy(susy_oscillator_params(p_star, E_star, M_prime_star))
    from_map = map_system(p_star, E_star).E_hat_exact

    return [
        _check('partner_identity', partner, CHECK_THRESHOLD),
        _check('coulomb_constraints', max(abs(r) for r in coulomb.constraint_residuals), IDENTITY_THRESHOLD),
        _check('coulomb_wavefunction_residual', coulomb_residual, CHECK_THRESHOLD),
        _check('oscillator_wavefunction_residual', oscillator_residual, CHECK_THRESHOLD),
        _check('oscillator_energy_identity', abs(from_susy - from_map), IDENTITY_THRESHOLD),
    ]


def run(cfg: RunConfig) -> RunOutcome:
    """
    Execute one command.

    Args:
        cfg: Validated run configuration

    Returns:
        RunOutcome with exit status, records and, on failure, a diagnostic record
    """
    logger.info(f"🚀 Команда {cfg.command}")
    try:
        if cfg.command == 'table1':
            records = table1(cfg.delta_list, cfg.dims, cfg.ells, cfg.states - 1, cfg.e2, cfg.tolerance)
        elif cfg.command == 'table2':
            records = table2(cfg.delta_list, cfg.ells, cfg.e2, cfg.tolerance, cfg.lambda_)
        elif cfg.command == 'solve':
            records = _run_solve(cfg)
        elif cfg.command == 'map':
            records = _run_map(cfg)
        elif cfg.command == 'susy-point':
            records = _run_susy_point(cfg)
        else:
            records = _run_susy_check(cfg)
    except InvalidArgumentError as e:
        logger.error(f"❌ Неверные аргументы: {e}")
        return RunOutcome(status=2, diagnostic=_diagnostic(e))
    except ScreenedCoulombError as e:
        logger.error(f"❌ Ошибка решателя: {e}")
        return RunOutcome(status=1, diagnostic=_diagnostic(e))

    if cfg.command == 'susy-check' and not all(r['passed'] for r in records):
        logger.warning("⚠️ Не все проверки пройдены")
        return RunOutcome(status=1, records=records)

    logger.info(f"✅ Команда {cfg.command} выполнена: {len(records)} записей")
    return RunOutcome(status=0, records=records)


def _diagnostic(error: Exception) -> Dict[str, Any]:
    record: Dict[str, Any] = {'error': type(error).__name__, 'message': str(error)}
    if isinstance(error, ConvergenceError):
        record['best_estimate'] = error.best_estimate
        record.update(error.diagnostics)
    radius = getattr(error, 'radius', None)
    if radius is not None:
        record['radius'] = radius
    return record


# ---------------------------------------------------------------------------
# click wiring
# ---------------------------------------------------------------------------

def _execute(ctx: click.Context, **kwargs):
    try:
        cfg = RunConfig(**kwargs)
    except InvalidArgumentError as e:
        raise click.UsageError(str(e), ctx=ctx)

    outcome = run(cfg)
    if outcome.status == 2:
        raise click.UsageError(outcome.diagnostic['message'], ctx=ctx)
    if outcome.diagnostic is not None:
        click.echo(json.dumps(outcome.diagnostic, default=str), err=True)
    if outcome.records:
        RecordWriter().write(outcome.records, cfg.output_format, cfg.output_path)
    ctx.exit(outcome.status)


def output_options(f):
    f = click.option('--output', '-o', 'output_path', type=click.Path(dir_okay=False), default=None,
                     help='Write records to this file instead of stdout')(f)
    f = click.option('--format', 'output_format', type=click.Choice(FORMATS), default='csv',
                     show_default=True, help='Output format')(f)
    return f


def physics_options(f):
    f = click.option('--tol', 'tolerance', type=click.FloatRange(min=0.0, min_open=True),
                     default=config.DEFAULT_TOL, show_default=True, help='Target accuracy (hartree)')(f)
    f = click.option('--e2', type=click.FloatRange(min=0.0, min_open=True), default=config.DEFAULT_E2,
                     show_default=True, help='Coupling constant e^2')(f)
    return f


@click.group()
@click.version_option(version="1.0.0", prog_name="screened-coulomb")
def cli():
    """
    Screened Coulomb levels and their anharmonic oscillator counterparts.

    Defaults give the reference tables (e^2 = 1, atomic units, lambda = 0).
    """


@cli.command('table1')
@click.option('--delta', 'delta_list', type=float, multiple=True, default=config.TABLE_DELTAS,
              show_default=True, help='Screening parameter (repeatable)')
@click.option('--dims', type=click.IntRange(min=2), multiple=True, default=config.TABLE1_DIMS,
              show_default=True, help='Space dimension (repeatable)')
@click.option('--ell', 'ells', type=click.IntRange(min=0), multiple=True, default=config.TABLE_ELLS,
              show_default=True, help='Angular momentum (repeatable)')
@click.option('--states', type=click.IntRange(1, config.MAX_STATES), default=config.TABLE1_STATES,
              show_default=True, help='Levels per (delta, N, ell)')
@physics_options
@output_options
@click.pass_context
def table1_command(ctx, delta_list, dims, ells, **kwargs):
    """Lowest levels of the truncated screened Coulomb potential."""
    _execute(ctx, command='table1', delta_list=tuple(delta_list), dims=tuple(dims), ells=tuple(ells), **kwargs)


@cli.command('table2')
@click.option('--delta', 'delta_list', type=float, multiple=True, default=config.TABLE_DELTAS,
              show_default=True, help='Screening parameter (repeatable)')
@click.option('--ell', 'ells', type=click.IntRange(min=0), multiple=True, default=config.TABLE_ELLS,
              show_default=True, help='3D angular momentum (repeatable)')
@click.option('--lambda', 'lambda_', type=click.IntRange(0, 1), default=config.DEFAULT_LAMBDA,
              show_default=True, help='Mapping parameter')
@physics_options
@output_options
@click.pass_context
def table2_command(ctx, delta_list, ells, **kwargs):
    """Ground energies of the mapped anharmonic oscillators."""
    _execute(ctx, command='table2', delta_list=tuple(delta_list), ells=tuple(ells), **kwargs)


@cli.command('solve')
@click.option('--dim', 'dimension', type=click.IntRange(min=2), default=3, show_default=True)
@click.option('--ell', type=click.IntRange(min=0), default=0, show_default=True)
@click.option('--delta', type=click.FloatRange(min=0.0), default=0.0, show_default=True,
              help='Screening parameter; 0 gives the pure Coulomb potential')
@click.option('--states', type=click.IntRange(1, config.MAX_STATES), default=config.TABLE1_STATES,
              show_default=True)
@physics_options
@output_options
@click.pass_context
def solve_command(ctx, delta, **kwargs):
    """Levels of the truncated screened Coulomb potential for one (N, ell)."""
    _execute(ctx, command='solve', delta_list=(delta,), **kwargs)


@cli.command('map')
@click.option('--dim', 'dimension', type=click.IntRange(min=2), default=3, show_default=True)
@click.option('--ell', type=click.IntRange(min=0), default=0, show_default=True)
@click.option('--delta', type=click.FloatRange(min=0.0), default=config.TABLE_DELTAS[0], show_default=True)
@click.option('--lambda', 'lambda_', type=click.IntRange(0, 1), default=config.DEFAULT_LAMBDA,
              show_default=True)
@physics_options
@output_options
@click.pass_context
def map_command(ctx, delta, **kwargs):
    """Oscillator coefficients and ground energy mapped from one Coulomb level."""
    _execute(ctx, command='map', delta_list=(delta,), **kwargs)


@cli.command('susy-point')
@click.option('--guess-m', type=float, default=None, help='Starting M for the root search')
@click.option('--guess-delta', type=click.FloatRange(min=0.0, min_open=True), default=None,
              help='Starting delta for the root search')
@click.option('--e2', type=click.FloatRange(min=0.0, min_open=True), default=config.DEFAULT_E2,
              show_default=True, help='Coupling constant e^2')
@output_options
@click.pass_context
def susy_point_command(ctx, guess_m, guess_delta, **kwargs):
    """(M, delta) where the truncated potential is exactly solvable."""
    _execute(ctx, command='susy-point', guess=_guess(ctx, guess_m, guess_delta, kwargs['e2']), **kwargs)


@cli.command('susy-check')
@click.option('--delta', type=click.FloatRange(min=0.0, min_open=True), default=config.TABLE_DELTAS[-1],
              show_default=True, help='Screening for the oscillator ansatz check')
@click.option('--samples', type=click.IntRange(min=1), default=100, show_default=True,
              help='Random superpotentials for the partner identity')
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--guess-m', type=float, default=None)
@click.option('--guess-delta', type=click.FloatRange(min=0.0, min_open=True), default=None)
@physics_options
@output_options
@click.pass_context
def susy_check_command(ctx, delta, guess_m, guess_delta, **kwargs):
    """Finite-difference checks of the closed-form SUSY ground states."""
    _execute(ctx, command='susy-check', delta_list=(delta,),
             guess=_guess(ctx, guess_m, guess_delta, kwargs['e2']), **kwargs)


def _guess(ctx: click.Context, guess_m: Optional[float], guess_delta: Optional[float],
           e2: float) -> Optional[Tuple[float, float]]:
    if guess_m is None and guess_delta is None:
        return None
    m = guess_m if guess_m is not None else config.SUSY_DEFAULT_GUESS[0]
    delta = guess_delta if guess_delta is not None else config.SUSY_DEFAULT_GUESS[1] * e2
    if not math.isfinite(m):
        raise click.BadParameter("must be finite", ctx=ctx, param_hint='--guess-m')
    return (m, delta)
