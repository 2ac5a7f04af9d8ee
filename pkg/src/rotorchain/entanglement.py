"""Reduced densities, partial transpose, logarithmic negativity, Jz variance.

Negativity is the summed magnitude of the negative eigenvalues of the
partially transposed density matrix; the log-negativity is
L = log2(2 N + 1), so a two-qubit Bell state gives exactly 1.  Eigenvalues
with magnitude below 1e-10 are treated as zero to separate genuine
negativity from numerical noise.

Reduced densities of manifold states are assembled combinatorially: once a
pair (i, j) is singled out, the traced-out rest of the chain is in its ground
configuration unless it carries the excitation, so the pair density is one
projected pure component per mixture member plus a ground-pair contribution.
For the one-molecule-vs-rest split, the rest factor is spanned by the ground
configuration plus the 3(N-1) single-excitation states, ordered ground first,
then sites ascending with flavors ("plus", "up", "down") per site.
"""

from dataclasses import dataclass
from math import log2, prod

import numpy as np

from .manifold import (
    DOWN,
    FLAVOR_OF_BLOCK,
    HONE_BLOCKS,
    PLUS,
    UP,
    ManifoldState,
    block_eigenstate,
    build_block_hamiltonian,
    lowest_excited,
    solve_blocks,
)
from .model import ModelParams

NEGATIVE_EIGENVALUE_CUTOFF = 1e-10

TRACE_TOL = 1e-10
HERMITICITY_TOL = 1e-12
POSITIVITY_TOL = 1e-10


@dataclass(frozen=True)
class DensityMatrix:
    """Density operator on a product of subsystems; validated on construction."""

    dims: tuple
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        d = prod(self.dims)
        if self.matrix.shape != (d, d):
            raise ValueError(f"matrix shape {self.matrix.shape} does not match dims {self.dims}")
        if abs(np.trace(self.matrix) - 1.0) > TRACE_TOL:
            raise ValueError(f"trace is {np.trace(self.matrix)!r}, expected 1")
        if np.max(np.abs(self.matrix - self.matrix.conj().T)) > HERMITICITY_TOL:
            raise ValueError("matrix is not Hermitian")
        if np.linalg.eigvalsh(self.matrix).min() < -POSITIVITY_TOL:
            raise ValueError("matrix has a significantly negative eigenvalue")


def partial_transpose(rho: DensityMatrix, subsystem: int) -> np.ndarray:
    """Transpose the chosen tensor factor; an involution that preserves trace."""
    k = len(rho.dims)
    if not 0 <= subsystem < k:
        raise ValueError(f"subsystem {subsystem} out of range for dims {rho.dims}")
    t = rho.matrix.reshape(rho.dims + rho.dims)
    t = np.swapaxes(t, subsystem, k + subsystem)
    d = prod(rho.dims)
    return t.reshape(d, d)


def negativity(rho: DensityMatrix, bipartition) -> float:
    """Sum of |negative eigenvalues| of the density transposed on the B side."""
    side_a, side_b = (tuple(s) for s in bipartition)
    if sorted(side_a + side_b) != list(range(len(rho.dims))):
        raise ValueError(f"bipartition {bipartition} must cover dims {rho.dims} exactly once")
    perm = side_a + side_b
    k = len(rho.dims)
    t = rho.matrix.reshape(rho.dims + rho.dims)
    t = t.transpose(tuple(perm) + tuple(k + p for p in perm))
    d_a = prod(rho.dims[i] for i in side_a)
    d_b = prod(rho.dims[i] for i in side_b)
    t = t.reshape(d_a, d_b, d_a, d_b).transpose(0, 3, 2, 1).reshape(d_a * d_b, d_a * d_b)
    eigenvalues = np.linalg.eigvalsh(t)
    negatives = eigenvalues[eigenvalues < -NEGATIVE_EIGENVALUE_CUTOFF]
    return float(-negatives.sum())


def log_negativity(rho: DensityMatrix, bipartition) -> float:
    return log2(2.0 * negativity(rho, bipartition) + 1.0)


@dataclass(frozen=True)
class ManifoldDensity:
    """Statistical mixture of manifold states (probabilities sum to one)."""

    params: ModelParams
    weights: np.ndarray
    states: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        object.__setattr__(self, "states", tuple(self.states))
        if self.weights.shape != (len(self.states),):
            raise ValueError("one weight per state required")
        if np.any(self.weights < 0):
            raise ValueError("weights must be non-negative")
        if abs(self.weights.sum() - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {self.weights.sum()!r}, expected 1")
        for state in self.states:
            if state.params.n_molecules != self.params.n_molecules:
                raise ValueError("all states must live on the same chain")

    @classmethod
    def pure(cls, state: ManifoldState) -> "ManifoldDensity":
        return cls(state.params, np.array([1.0]), (state,))

    @classmethod
    def mixture(cls, weights, states) -> "ManifoldDensity":
        states = tuple(states)
        return cls(states[0].params, np.asarray(weights, dtype=float), states)

    def manifold_matrix(self) -> np.ndarray:
        """(3N+1) x (3N+1) Hermitian representation in the manifold basis."""
        n = self.params.n_molecules
        rho = np.zeros((3 * n + 1, 3 * n + 1), dtype=complex)
        for w, state in zip(self.weights, self.states):
            vec = state.vector()
            rho += w * np.outer(vec, vec.conj())
        return rho


def _site_slot(site: int, flavor: int) -> int:
    """Manifold basis index of an excitation (0-based site, flavor 0..2)."""
    return 1 + 3 * site + flavor


def pair_reduced(rho: ManifoldDensity, i: int, j: int) -> DensityMatrix:
    """Exact two-molecule reduced density for 1-based sites i < j, dims (4, 4).

    The traced-out molecules are all in |-> unless one of them carries the
    excitation; those components only feed the |--><--| pair element.
    """
    n = rho.params.n_molecules
    if not (1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= {n}, got ({i}, {j})")
    rm = rho.manifold_matrix()

    coherent = [0]
    pair_pos = [0]
    for f in range(3):
        coherent.append(_site_slot(i - 1, f))
        pair_pos.append(4 * (f + 1) + 0)
    for f in range(3):
        coherent.append(_site_slot(j - 1, f))
        pair_pos.append(4 * 0 + (f + 1))

    out = np.zeros((16, 16), dtype=complex)
    out[np.ix_(pair_pos, pair_pos)] = rm[np.ix_(coherent, coherent)]
    elsewhere = [
        _site_slot(q, f)
        for q in range(n)
        if q not in (i - 1, j - 1)
        for f in range(3)
    ]
    if elsewhere:
        out[0, 0] += rm[elsewhere, elsewhere].sum()
    return DensityMatrix(dims=(4, 4), matrix=out)


def rest_space_dimension(n: int) -> int:
    return 3 * (n - 1) + 1


def one_vs_rest_isometry(n: int, p: int) -> np.ndarray:
    """Map manifold coordinates into the (4) x (rest) product space for site p."""
    d_rest = rest_space_dimension(n)
    w = np.zeros((4 * d_rest, 3 * n + 1))
    w[0 * d_rest + 0, 0] = 1.0  # ground -> |-> (x) |g_rest>
    rest_index = 1
    for q in range(n):
        for f in range(3):
            slot = _site_slot(q, f)
            if q == p - 1:
                w[(f + 1) * d_rest + 0, slot] = 1.0
            else:
                w[0 * d_rest + rest_index, slot] = 1.0
                rest_index += 1
    return w


def one_vs_rest_density(rho: ManifoldDensity, p: int) -> DensityMatrix:
    """Density on the explicit (molecule p) x (rest of chain) product space."""
    n = rho.params.n_molecules
    if not 1 <= p <= n:
        raise ValueError(f"need 1 <= p <= {n}, got {p}")
    w = one_vs_rest_isometry(n, p)
    out = w @ rho.manifold_matrix() @ w.T
    return DensityMatrix(dims=(4, rest_space_dimension(n)), matrix=out)


def one_vs_rest_L(rho: ManifoldDensity, p: int) -> float:
    """Log-negativity of molecule p against the rest of the chain."""
    return log_negativity(one_vs_rest_density(rho, p), ((0,), (1,)))


def pairwise_L_sum(rho: ManifoldDensity, d: int) -> float:
    """L_d: pair log-negativity summed over all pairs at chain distance d."""
    n = rho.params.n_molecules
    if not 1 <= d <= n - 1:
        raise ValueError(f"need 1 <= d <= {n - 1}, got {d}")
    total = 0.0
    for i in range(1, n - d + 1):
        total += log_negativity(pair_reduced(rho, i, i + d), ((0,), (1,)))
    return total


def jz_variance(rho: ManifoldDensity) -> float:
    """Variance of the total axial angular momentum, exact from basis labels.

    Manifold basis states are Jz eigenstates: the ground and "plus"
    excitations carry m = 0, the "up"/"down" excitations carry m = +-1.
    """
    n = rho.params.n_molecules
    m_values = np.zeros(3 * n + 1)
    for q in range(n):
        m_values[_site_slot(q, FLAVOR_OF_BLOCK[UP])] = 1.0
        m_values[_site_slot(q, FLAVOR_OF_BLOCK[DOWN])] = -1.0
    populations = np.real(np.diag(rho.manifold_matrix()))
    mean = float(m_values @ populations)
    mean_sq = float((m_values**2) @ populations)
    return mean_sq - mean**2


def lowest_excited_density(params: ModelParams) -> ManifoldDensity:
    """Lowest one-excitation level as a manifold density.

    A "plus" level is a pure state; a doubly-degenerate |m| = 1 level is
    always the equal-weight mixture of its m = +1 and m = -1 partners.
    """
    spectra = solve_blocks(build_block_hamiltonian(params))
    label, _ = lowest_excited(spectra)
    if label == PLUS:
        return ManifoldDensity.pure(block_eigenstate(params, spectra[PLUS], 0))
    states = [block_eigenstate(params, spectra[b], 0) for b in HONE_BLOCKS]
    return ManifoldDensity.mixture([0.5, 0.5], states)
