"""Simulation of a 1-D chain of dipole-coupled polar rotors in a static field."""

from .entanglement import (
    DensityMatrix,
    ManifoldDensity,
    jz_variance,
    log_negativity,
    lowest_excited_density,
    negativity,
    one_vs_rest_L,
    pair_reduced,
    pairwise_L_sum,
    partial_transpose,
)
from .errors import NoCrossingError, ResourceLimitError
from .manifold import (
    BlockHamiltonian,
    ManifoldState,
    SubspaceSpectrum,
    build_block_hamiltonian,
    crossing_map,
    find_crossing,
    solve_blocks,
    solve_symmetric_tridiagonal,
    solve_uniform_tridiagonal,
    spectrum_vs_field,
)
from .model import (
    DressedSolution,
    ModelParams,
    PhysicalParams,
    SiteBasis,
    SiteOperator,
    dressed_solution,
    pair_dipole_operator,
    rotor_energy,
    site_operator,
    to_dimensionless,
    two_molecule_reference,
)
from .oracle import dense_eigensolve, full_hamiltonian, validate_manifold
from .results import ScanResult
from .thermal import ThermalSpec, thermal_scan, thermal_state

__all__ = [
    "BlockHamiltonian",
    "DensityMatrix",
    "DressedSolution",
    "ManifoldDensity",
    "ManifoldState",
    "ModelParams",
    "NoCrossingError",
    "PhysicalParams",
    "ResourceLimitError",
    "ScanResult",
    "SiteBasis",
    "SiteOperator",
    "SubspaceSpectrum",
    "ThermalSpec",
    "build_block_hamiltonian",
    "crossing_map",
    "dense_eigensolve",
    "dressed_solution",
    "find_crossing",
    "full_hamiltonian",
    "jz_variance",
    "log_negativity",
    "lowest_excited_density",
    "negativity",
    "one_vs_rest_L",
    "pair_dipole_operator",
    "pair_reduced",
    "pairwise_L_sum",
    "partial_transpose",
    "rotor_energy",
    "site_operator",
    "solve_blocks",
    "solve_symmetric_tridiagonal",
    "solve_uniform_tridiagonal",
    "spectrum_vs_field",
    "thermal_scan",
    "thermal_state",
    "to_dimensionless",
    "two_molecule_reference",
    "validate_manifold",
]
