"""Boltzmann ensembles on the {ground, one-excitation} manifold.

The partition function includes only the ground configuration and the 3N
one-excitation levels, the regime where the rescaled temperature T = k_B T/B
is low enough that higher manifolds stay unpopulated.  Energies are measured
from the lowest manifold level before exponentiation so small T cannot
underflow.  The omitted two-excitation states sit near 4B; their neglected
relative weight is bounded by exp(-(E_2exc - E_0)/T), reported alongside the
state for the validity record.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .entanglement import ManifoldDensity, jz_variance, one_vs_rest_L, pairwise_L_sum
from .manifold import BLOCKS, block_eigenstate, build_block_hamiltonian, ground_manifold_state, solve_blocks
from .model import ModelParams
from .results import ScanResult


@dataclass(frozen=True)
class ThermalSpec:
    t_rescaled: float
    params: ModelParams

    def __post_init__(self):
        if not self.t_rescaled > 0:
            raise ValueError(f"rescaled temperature must be > 0, got {self.t_rescaled}")


def thermal_state(spec: ThermalSpec) -> ManifoldDensity:
    """Boltzmann mixture over the 3N+1 manifold eigenstates.

    Degenerate "up"/"down" partners share one eigenvalue array, so their
    weights are equal bit for bit.
    """
    params = spec.params
    block_h = build_block_hamiltonian(params)
    spectra = solve_blocks(block_h)

    energies = [block_h.ground_energy]
    states = [ground_manifold_state(params)]
    for label in BLOCKS:
        spectrum = spectra[label]
        for k in range(params.n_molecules):
            energies.append(float(spectrum.eigenvalues[k]))
            states.append(block_eigenstate(params, spectrum, k))
    energies = np.asarray(energies)
    weights = np.exp(-(energies - energies.min()) / spec.t_rescaled)
    weights /= weights.sum()
    return ManifoldDensity.mixture(weights, states)


def truncation_weight_bound(spec: ThermalSpec) -> float:
    """Upper bound on the relative Boltzmann weight of an omitted ~4B state."""
    return float(np.exp(-4.0 / spec.t_rescaled))


def parse_observable(spec_string: str):
    """Parse "lprime:26", "ld:1" or "jzvar" into an observable tuple."""
    name, _, arg = spec_string.partition(":")
    if name == "jzvar":
        return ("jzvar",)
    if name in ("lprime", "ld"):
        if not arg:
            raise ValueError(f"observable {name!r} needs a site/distance, e.g. '{name}:1'")
        return (name, int(arg))
    raise ValueError(f"unknown observable {spec_string!r}")


def evaluate_observable(rho: ManifoldDensity, observable) -> float:
    name = observable[0]
    if name == "lprime":
        return one_vs_rest_L(rho, observable[1])
    if name == "ld":
        return pairwise_L_sum(rho, observable[1])
    if name == "jzvar":
        return jz_variance(rho)
    raise ValueError(f"unknown observable {observable!r}")


def observable_name(observable) -> str:
    return observable[0] if len(observable) == 1 else f"{observable[0]}:{observable[1]}"


def _thermal_row(args):
    n, v, t, e_z, observable = args
    params = ModelParams(n, v, e_z)
    rho = thermal_state(ThermalSpec(t_rescaled=t, params=params))
    return (t, e_z, observable_name(observable), evaluate_observable(rho, observable))


def thermal_scan(params: ModelParams, t_grid, e_z_grid, observable, workers: int = 1) -> ScanResult:
    """Observable on the thermal state over a (T, e_z) grid, rows by (T, e_z)."""
    t_grid = np.asarray(t_grid, dtype=float)
    e_z_grid = np.asarray(e_z_grid, dtype=float)
    if t_grid.size == 0 or e_z_grid.size == 0:
        raise ValueError("temperature and field grids must be non-empty")
    tasks = [
        (params.n_molecules, params.v_dip, float(t), float(e), observable)
        for t in t_grid
        for e in e_z_grid
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_thermal_row, tasks))
    else:
        rows = [_thermal_row(t) for t in tasks]
    meta = {
        "experiment": "thermal",
        "n_molecules": params.n_molecules,
        "v_dip": params.v_dip,
        "observable": observable_name(observable),
        "t_points": len(t_grid),
        "ez_points": len(e_z_grid),
    }
    return ScanResult(columns=("t_rescaled", "e_z", "observable", "value"), rows=rows, metadata=meta)
