"""Dense Hermitian linear algebra for unitary quantum dynamics.

Everything downstream (two-site, spin-boson, seven-site) runs through this
module: eigendecomposition, propagators, state evolution on a time grid,
trace distance and the phonon partial trace.

Internal unit system: hbar = 1, energies in rad/ps, time in ps.  Propagators
are built from the eigendecomposition, U = V exp(-i w t) V^dag, which keeps
them unitary to roundoff and lets one factorization serve a whole time grid.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

# Rejection threshold for operations that require a Hermitian input,
# relative to max|H|.  Construction-time inputs are expected far below this.
HERMITICITY_RTOL = 1e-8

STATE_NORM_ATOL = 1e-10
DENSITY_TRACE_ATOL = 1e-10
DENSITY_HERMITICITY_ATOL = 1e-12
DENSITY_EIGENVALUE_FLOOR = -1e-10


class EigenDecomposition(NamedTuple):
    """Ascending eigenvalues and the unitary matrix of column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class Trajectory:
    """Populations on a time grid; time units are the caller's.

    ``populations[k, i]`` is the occupation probability of basis state ``i``
    at ``times[k]``.  ``coherence_magnitudes[k, i, j]`` optionally carries
    |rho_ij(t_k)| for the evolved pure state.
    """

    times: np.ndarray
    populations: np.ndarray
    coherence_magnitudes: np.ndarray | None = None

    def __post_init__(self):
        self.times.setflags(write=False)
        self.populations.setflags(write=False)
        if self.coherence_magnitudes is not None:
            self.coherence_magnitudes.setflags(write=False)


def hermiticity_defect(h: np.ndarray) -> float:
    """max|H - H^dag| relative to max|H| (zero matrix has defect 0)."""
    h = np.asarray(h)
    scale = np.max(np.abs(h))
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(h - h.conj().T)) / scale)


def require_hermitian(h: np.ndarray, rtol: float = HERMITICITY_RTOL) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    defect = hermiticity_defect(h)
    if defect > rtol:
        raise ValueError(
            f"matrix is not Hermitian: relative defect {defect:.3e} exceeds {rtol:.1e}"
        )
    return h


def require_state_vector(psi: np.ndarray, atol: float = STATE_NORM_ATOL) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > atol:
        raise ValueError(f"state vector norm {norm!r} deviates from 1 beyond {atol:.1e}")
    return psi


def require_density_matrix(rho: np.ndarray) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity of a density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {rho.shape}")
    defect = np.max(np.abs(rho - rho.conj().T))
    if defect > DENSITY_HERMITICITY_ATOL:
        raise ValueError(f"density matrix not Hermitian: defect {defect:.3e}")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > DENSITY_TRACE_ATOL:
        raise ValueError(f"density matrix trace {tr!r} deviates from 1")
    smallest = float(np.linalg.eigvalsh(rho)[0])
    if smallest < DENSITY_EIGENVALUE_FLOOR:
        raise ValueError(f"density matrix has negative eigenvalue {smallest:.3e}")
    return rho


def basis_state(dim: int, index: int) -> np.ndarray:
    psi = np.zeros(dim, dtype=complex)
    psi[index] = 1.0
    return psi


def hermitian_eigendecomposition(h: np.ndarray) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Rejects inputs whose relative Hermiticity defect exceeds
    ``HERMITICITY_RTOL``; the defect is quoted in the error message.
    """
    h = require_hermitian(h)
    w, v = np.linalg.eigh(h)
    return EigenDecomposition(eigenvalues=w, eigenvectors=v)


def propagator(h: np.ndarray, t: float) -> np.ndarray:
    """Unitary U = exp(-i H t) for Hermitian H (hbar = 1)."""
    if not np.isfinite(t):
        raise ValueError(f"propagation time must be finite, got {t!r}")
    w, v = hermitian_eigendecomposition(h)
    phases = np.exp(-1j * w * t)
    return (v * phases) @ v.conj().T


def evolve_state(psi0, h, times) -> np.ndarray:
    """Evolved states as columns: result[:, k] = exp(-i H t_k) psi0."""
    psi0 = require_state_vector(psi0)
    w, v = hermitian_eigendecomposition(h)
    if v.shape[0] != psi0.shape[0]:
        raise ValueError(
            f"dimension mismatch: state has dim {psi0.shape[0]}, matrix {v.shape[0]}"
        )
    times = np.asarray(times, dtype=float)
    c = v.conj().T @ psi0
    return v @ (np.exp(-1j * np.outer(w, times)) * c[:, None])


def _require_time_grid(times) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("time grid must be a non-empty 1-d array")
    if times[0] < 0.0:
        raise ValueError(f"time grid must start at t >= 0, got {times[0]!r}")
    if np.any(np.diff(times) < 0.0):
        raise ValueError("time grid must be ascending")
    return times


def trajectory(psi0, h, times, with_coherences: bool = False) -> Trajectory:
    """Populations |<i|exp(-i H t)|psi0>|^2 on an ascending time grid.

    Norm (hence the population row sum) and <H> are conserved exactly up to
    roundoff because the evolution is a pure phase rotation in the eigenbasis.
    """
    times = _require_time_grid(times)
    states = evolve_state(psi0, h, times)
    # |amplitude|^2 can stray past 1 by roundoff; populations are probabilities
    populations = np.clip(np.ascontiguousarray((states.real**2 + states.imag**2).T), 0.0, 1.0)
    coherences = None
    if with_coherences:
        coherences = np.abs(np.einsum("ik,jk->kij", states, states.conj()))
    return Trajectory(times=times, populations=populations, coherence_magnitudes=coherences)


def expectation_value(h, psi) -> float:
    """Real expectation <psi|H|psi> for Hermitian H."""
    psi = np.asarray(psi, dtype=complex).ravel()
    return float(np.real(np.vdot(psi, np.asarray(h, dtype=complex) @ psi)))


def trace_distance(rho1, rho2) -> float:
    """Half the trace norm of rho1 - rho2, via the Hermitian eigensolver."""
    rho1 = require_density_matrix(rho1)
    rho2 = require_density_matrix(rho2)
    if rho1.shape != rho2.shape:
        raise ValueError(f"dimension mismatch: {rho1.shape} vs {rho2.shape}")
    w, _ = hermitian_eigendecomposition(rho1 - rho2)
    return float(0.5 * np.sum(np.abs(w)))


def partial_trace_phonon(rho_full, system_dim: int, phonon_dim: int) -> np.ndarray:
    """Trace out the phonon factor of a system (x) phonon density matrix.

    Basis ordering is system-major: index s * phonon_dim + n.
    """
    rho_full = np.asarray(rho_full, dtype=complex)
    dim = system_dim * phonon_dim
    if rho_full.shape != (dim, dim):
        raise ValueError(
            f"cannot factor shape {rho_full.shape} as ({system_dim} x {phonon_dim})^2"
        )
    blocks = rho_full.reshape(system_dim, phonon_dim, system_dim, phonon_dim)
    return np.einsum("ipjp->ij", blocks)
