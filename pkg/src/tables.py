"""
Reference tables of levels and mapped oscillator energies.

table1: lowest levels of the truncated screened Coulomb potential in 3 and
5 dimensions. table2: ground energies of the anharmonic oscillators built
from the 3D levels, solved numerically and from the closed-form map.

Cells are independent and run on a thread pool; records come back in the
order of the input tuples.
"""

from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Any, Dict, List, Sequence, Tuple

import config
from src.exceptions import InvalidArgumentError
from src.logger import logger
from src.potentials import screened_coulomb
from src.spectra import solve_radial
from src.transform import QuantumNumbers, map_space, map_system

Record = Dict[str, Any]

MAX_TABLE_DELTA = 0.03


def _check_deltas(deltas: Sequence[float]):
    if not deltas:
        raise InvalidArgumentError("delta list must not be empty")
    for delta in deltas:
        if not 0.0 < delta <= MAX_TABLE_DELTA:
            raise InvalidArgumentError(f"delta must lie in (0, {MAX_TABLE_DELTA}], got {delta}")


def _run_cells(worker, cells: List[Tuple]) -> List[List[Record]]:
    with ThreadPoolExecutor(max_workers=max(1, config.MAX_WORKERS)) as executor:
        return list(executor.map(worker, cells))


def table1(
    deltas: Sequence[float] = config.TABLE_DELTAS,
    dims: Sequence[int] = config.TABLE1_DIMS,
    ells: Sequence[int] = config.TABLE_ELLS,
    n_max: int = config.TABLE1_STATES - 1,
    e2: float = config.DEFAULT_E2,
    tol: float = config.DEFAULT_TOL,
) -> List[Record]:
    """
    Levels n = 0..n_max of the truncated screened Coulomb potential.

    Args:
        deltas: Screening parameters, each in (0, 0.03]
        dims: Space dimensions
        ells: Angular momenta
        n_max: Highest radial quantum number
        e2: Coupling constant
        tol: Target accuracy per level

    Returns:
        One record per (delta, N, ell, n): delta, N, ell, n, energy, flag
    """
    _check_deltas(deltas)
    if n_max < 0 or n_max + 1 > config.MAX_STATES:
        raise InvalidArgumentError(f"n_max must lie in [0, {config.MAX_STATES - 1}], got {n_max}")

    cells = list(product(deltas, dims, ells))
    logger.info(f"📊 Таблица уровней: {len(cells)} ячеек, n = 0..{n_max}")

    def worker(cell) -> List[Record]:
        delta, N, ell = cell
        result = solve_radial(N, ell, screened_coulomb(delta, e2), n_max + 1, tol)
        if result.partial:
            logger.warning(f"⚠️ δ = {delta}, N = {N}, ell = {ell}: часть состояний не связана")
        return [
            {
                'delta': delta,
                'N': N,
                'ell': ell,
                'n': n,
                'energy': float(energy),
                'flag': 'positive' if energy > 0.0 else 'bound',
            }
            for n, energy in enumerate(result.energies)
        ]

    records = [record for block in _run_cells(worker, cells) for record in block]
    logger.info(f"✅ Таблица уровней готова: {len(records)} значений")
    return records


def table2(
    deltas: Sequence[float] = config.TABLE_DELTAS,
    ells: Sequence[int] = config.TABLE_ELLS,
    e2: float = config.DEFAULT_E2,
    tol: float = config.DEFAULT_TOL,
    lambda_: int = config.DEFAULT_LAMBDA,
) -> List[Record]:
    """
    Ground energies of the mapped oscillators.

    The 3D level is rounded to TABLE2_SOURCE_DECIMALS before it
    is mapped, so both columns are built from the printed |E0|.

    Returns:
        One record per (delta, ell): delta, ell, L, E0_abs, Ehat_mesh,
        Ehat_exact, abs_diff
    """
    _check_deltas(deltas)
    cells = list(product(deltas, ells))
    logger.info(f"📊 Таблица осцилляторов: {len(cells)} ячеек")

    def worker(cell) -> List[Record]:
        delta, ell = cell
        potential = screened_coulomb(delta, e2)
        source = solve_radial(config.TABLE2_DIM, ell, potential, 1, tol)
        e0_abs = round(abs(float(source.energies[0])), config.TABLE2_SOURCE_DECIMALS)

        space = map_space(QuantumNumbers(N=config.TABLE2_DIM, ell=ell), lambda_)
        system = map_system(potential, -e0_abs)
        mesh = solve_radial(space.N_prime, space.L, system.oscillator, 1, tol)
        e_hat_mesh = float(mesh.energies[0])

        return [{
            'delta': delta,
            'ell': ell,
            'L': space.L,
            'E0_abs': e0_abs,
            'Ehat_mesh': e_hat_mesh,
            'Ehat_exact': system.E_hat_exact,
            'abs_diff': abs(e_hat_mesh - system.E_hat_exact),
        }]

    records = [record for block in _run_cells(worker, cells) for record in block]
    logger.info(f"✅ Таблица осцилляторов готова: {len(records)} строк")
    return records
