"""Fully quantized single-mode spin-boson model on a truncated Fock space.

The donor-acceptor pair lives in its single-excitation subspace {|d>, |a>}
and couples to one quantized vibrational mode:

    H = delta * sz + j * sx + omega * n - (g/2) * sz (x) (a + a^dag)

with basis ordering |d,0> ... |d,n_max>, |a,0> ... |a,n_max>.  The coupling
carries the factor -g/2 so that replacing a + a^dag by its coherent-state
mean 2*alpha reproduces the semiclassical two-site Hamiltonian with detuning
delta - g*alpha.  The opposite-sign coupling of donor and acceptor to the
mode is what turns the displacement coupling into sz in this subspace.

This module validates the semiclassical treatment (deviation of the reduced
populations from the two-site model) and computes the memory witness: the
largest single-step increase of the trace distance between two reduced
states, which is strictly zero for any memoryless reduced dynamics.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

from .linalg import (
    Trajectory,
    basis_state,
    hermitian_eigendecomposition,
    partial_trace_phonon,
    require_density_matrix,
    require_state_vector,
    trace_distance,
    trajectory,
)
from .twosite import (
    DONOR,
    TwoSiteParams,
    effective_hopping,
    semiclassical_hamiltonian,
)

TRUNCATION_NORM_TOL = 1e-8
LEAKAGE_TOL = 1e-6


@dataclass(frozen=True)
class PhononSpec:
    """Quantized mode: frequency omega (rad/ps), coupling g (rad/ps), Fock
    cutoff n_max (levels 0..n_max are kept)."""

    omega: float
    g: float
    n_max: int

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError(f"Fock cutoff n_max must be >= 1, got {self.n_max!r}")
        if self.omega < 0.0:
            raise ValueError(f"phonon frequency omega must be >= 0, got {self.omega!r}")

    @property
    def fock_dim(self) -> int:
        return self.n_max + 1


@dataclass(frozen=True)
class PhononState:
    """Initial mode state as a density matrix over n_max + 1 Fock levels.

    ``vector`` carries the pure-state amplitudes when the state is pure,
    enabling the cheap state-vector evolution path.
    """

    rho: np.ndarray
    vector: np.ndarray | None
    label: str

    def __post_init__(self):
        require_density_matrix(self.rho)
        self.rho.setflags(write=False)
        if self.vector is not None:
            require_state_vector(self.vector)
            self.vector.setflags(write=False)

    @property
    def fock_dim(self) -> int:
        return self.rho.shape[0]

    @property
    def mean_number(self) -> float:
        n = np.arange(self.fock_dim)
        return float(np.real(np.diag(self.rho)) @ n)


def recommended_n_max(alpha: float) -> int:
    """Cutoff alpha^2 + 10*alpha + 10: coherent-tail norm deficit stays below
    1e-8 up to alpha ~ 20."""
    return math.ceil(alpha * alpha + 10.0 * alpha + 10.0)


def lowering_operator(n_max: int) -> np.ndarray:
    a = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    n = np.arange(1, n_max + 1)
    a[n - 1, n] = np.sqrt(n)
    return a


def coherent_state(alpha: float, n_max: int) -> PhononState:
    """Truncated coherent state with amplitudes e^{-a^2/2} a^n / sqrt(n!).

    Rejects cutoffs whose truncation norm deficit exceeds 1e-8, quoting the
    recommended cutoff; otherwise renormalizes the truncated tail away.
    """
    n = np.arange(n_max + 1)
    if alpha == 0.0:
        amplitudes = np.zeros(n_max + 1)
        amplitudes[0] = 1.0
    else:
        log_c = -0.5 * alpha * alpha + n * math.log(abs(alpha)) - 0.5 * gammaln(n + 1.0)
        amplitudes = np.exp(log_c)
        if alpha < 0.0:
            amplitudes[1::2] *= -1.0
    captured = float(amplitudes @ amplitudes)
    deficit = 1.0 - captured
    if deficit > TRUNCATION_NORM_TOL:
        raise ValueError(
            f"coherent state truncated too hard: norm deficit {deficit:.3e} at "
            f"n_max = {n_max}; use n_max >= {recommended_n_max(alpha)}"
        )
    amplitudes = amplitudes / math.sqrt(captured)
    mean = float((amplitudes * amplitudes) @ n)
    target = alpha * alpha
    if abs(mean - target) > 1e-6 * max(target, 1.0):
        raise ValueError(
            f"coherent state mean number {mean!r} is off alpha^2 = {target!r}"
        )
    vector = amplitudes.astype(complex)
    return PhononState(rho=np.outer(vector, vector.conj()), vector=vector,
                       label=f"coherent(alpha={alpha})")


def thermal_weights(nbar: float, n_max: int) -> np.ndarray:
    """Boltzmann weights nbar^n / (1 + nbar)^(n+1) for n = 0..n_max."""
    if nbar < 0.0:
        raise ValueError(f"mean thermal occupation nbar must be >= 0, got {nbar!r}")
    n = np.arange(n_max + 1)
    if nbar == 0.0:
        w = np.zeros(n_max + 1)
        w[0] = 1.0
        return w
    return np.exp(n * math.log(nbar) - (n + 1.0) * math.log1p(nbar))


def displaced_thermal_state(alpha: float, nbar: float, n_max: int) -> PhononState:
    """D(alpha) rho_thermal(nbar) D(alpha)^dag in the truncated space.

    The displacement operator is exponentiated numerically; the combined
    truncation deficit (thermal tail plus displacement leakage) must stay
    below 1e-8.  Mean occupation comes out at alpha^2 + nbar.
    """
    weights = thermal_weights(nbar, n_max)
    a = lowering_operator(n_max)
    displacement = expm(alpha * (a.conj().T - a))
    rho = (displacement * weights) @ displacement.conj().T
    captured = float(np.trace(rho).real)
    if 1.0 - captured > TRUNCATION_NORM_TOL:
        raise ValueError(
            f"displaced thermal state truncated too hard: norm deficit "
            f"{1.0 - captured:.3e} at n_max = {n_max}; increase the cutoff "
            f"(coherent part alone needs n_max >= {recommended_n_max(alpha)})"
        )
    rho = rho / captured
    rho = 0.5 * (rho + rho.conj().T)
    return PhononState(rho=rho, vector=None,
                       label=f"displaced_thermal(alpha={alpha}, nbar={nbar})")


def full_hamiltonian(delta: float, j: float, spec: PhononSpec) -> np.ndarray:
    """Spin-boson Hamiltonian on the 2 * (n_max + 1) dimensional space."""
    dim = spec.fock_dim
    sz = np.diag([1.0, -1.0]).astype(complex)
    sx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    eye2 = np.eye(2, dtype=complex)
    eye_ph = np.eye(dim, dtype=complex)
    a = lowering_operator(spec.n_max)
    number = np.diag(np.arange(dim, dtype=float)).astype(complex)
    x = a + a.conj().T
    return (
        delta * np.kron(sz, eye_ph)
        + j * np.kron(sx, eye_ph)
        + spec.omega * np.kron(eye2, number)
        - 0.5 * spec.g * np.kron(sz, x)
    )


def _check_leakage(top_population: np.ndarray) -> None:
    worst = float(np.max(top_population))
    if worst > LEAKAGE_TOL:
        raise ValueError(
            f"truncation leakage: top two Fock levels reach population "
            f"{worst:.3e} (> {LEAKAGE_TOL:.1e}); increase n_max"
        )


def _evolve_pure(psi0, w, v, times, fock_dim):
    """Pure-state path: populations, reduced 2x2 matrices, edge population."""
    c = v.conj().T @ psi0
    states = v @ (np.exp(-1j * np.outer(w, times)) * c[:, None])
    blocks = states.reshape(2, fock_dim, times.size)
    abs2 = blocks.real**2 + blocks.imag**2
    populations = abs2.sum(axis=1).T
    reduced = np.einsum("ipt,jpt->tij", blocks, blocks.conj())
    edge = abs2[:, fock_dim - 2 :, :].sum(axis=(0, 1))
    return populations, reduced, edge


def _evolve_mixed(rho0, w, v, times, fock_dim):
    """Density-matrix path: rho(t) = V diag(e^{-iwt}) V^dag rho0 V diag(e^{iwt}) V^dag."""
    rho_tilde = v.conj().T @ rho0 @ v
    populations = np.empty((times.size, 2))
    reduced = np.empty((times.size, 2, 2), dtype=complex)
    edge = np.empty(times.size)
    for k, t in enumerate(times):
        phases = np.exp(-1j * w * t)
        rho_t = (v * phases) @ rho_tilde @ (v * phases).conj().T
        r = partial_trace_phonon(rho_t, 2, fock_dim)
        reduced[k] = 0.5 * (r + r.conj().T)
        populations[k] = np.real(np.diag(reduced[k]))
        diag = np.real(np.diag(rho_t)).reshape(2, fock_dim)
        edge[k] = float(diag[:, fock_dim - 2 :].sum())
    return populations, reduced, edge


def evolve_reduced(sys0, ph0: PhononState, h: np.ndarray, times):
    """Unitary evolution of sys0 (x) ph0 with the phonon traced out.

    Returns (Trajectory of the two system populations, array of reduced
    2x2 density matrices, one per grid time).  Raises if the top two Fock
    levels ever exceed a population of 1e-6, which signals cutoff leakage.
    """
    sys0 = require_state_vector(sys0)
    if sys0.shape[0] != 2:
        raise ValueError(f"system state must have dim 2, got {sys0.shape[0]}")
    fock_dim = ph0.fock_dim
    if h.shape[0] != 2 * fock_dim:
        raise ValueError(
            f"dimension mismatch: Hamiltonian dim {h.shape[0]}, "
            f"system x phonon dim {2 * fock_dim}"
        )
    times = np.asarray(times, dtype=float)
    w, v = hermitian_eigendecomposition(h)
    if ph0.vector is not None:
        psi0 = np.kron(sys0, ph0.vector)
        populations, reduced, edge = _evolve_pure(psi0, w, v, times, fock_dim)
    else:
        rho0 = np.kron(np.outer(sys0, sys0.conj()), ph0.rho)
        populations, reduced, edge = _evolve_mixed(rho0, w, v, times, fock_dim)
    _check_leakage(edge)
    traj = Trajectory(times=times, populations=populations)
    return traj, reduced


def semiclassical_deviation(
    p: TwoSiteParams, spec: PhononSpec, horizon: float, num_points: int = 1025
) -> float:
    """Largest gap between quantized and semiclassical acceptor populations.

    Both models start from |d> (the mode in coherent(alpha)) and share the
    same effective hopping; the horizon must cover at least one population
    period pi/sqrt(jeff^2 + (delta - g*alpha)^2).
    """
    jeff = effective_hopping(p)
    detuning = p.delta - p.g * p.alpha
    rabi_period = math.pi / math.hypot(jeff, detuning)
    if horizon < rabi_period:
        raise ValueError(
            f"horizon {horizon!r} ps does not cover one Rabi period "
            f"({rabi_period:.6g} ps)"
        )
    times = np.linspace(0.0, horizon, num_points)
    ph0 = coherent_state(p.alpha, spec.n_max)
    h_full = full_hamiltonian(p.delta, jeff, spec)
    quantized, _ = evolve_reduced(basis_state(2, DONOR), ph0, h_full, times)
    semiclassical = trajectory(basis_state(2, DONOR), semiclassical_hamiltonian(p), times)
    gap = quantized.populations[:, 1] - semiclassical.populations[:, 1]
    return float(np.max(np.abs(gap)))


def trace_distance_series(
    delta: float,
    j: float,
    spec: PhononSpec,
    rho_a0: np.ndarray,
    rho_b0: np.ndarray,
    ph0: PhononState,
    times,
) -> np.ndarray:
    """Reduced-state trace distance D(t) between two product initial states."""
    rho_a0 = require_density_matrix(rho_a0)
    rho_b0 = require_density_matrix(rho_b0)
    if rho_a0.shape != (2, 2) or rho_b0.shape != (2, 2):
        raise ValueError("system density matrices must be 2x2")
    times = np.asarray(times, dtype=float)
    h = full_hamiltonian(delta, j, spec)
    w, v = hermitian_eigendecomposition(h)
    fock_dim = spec.fock_dim
    if ph0.fock_dim != fock_dim:
        raise ValueError(
            f"phonon state dim {ph0.fock_dim} does not match spec dim {fock_dim}"
        )
    series = np.empty(times.size)
    reduced_pair = []
    for rho_sys in (rho_a0, rho_b0):
        rho0 = np.kron(rho_sys, ph0.rho)
        _, reduced, _ = _evolve_mixed(rho0, w, v, times, fock_dim)
        reduced_pair.append(reduced)
    for k in range(times.size):
        series[k] = trace_distance(reduced_pair[0][k], reduced_pair[1][k])
    return series


def nonmarkov_witness(
    delta: float,
    j: float,
    spec: PhononSpec,
    rho_a0: np.ndarray,
    rho_b0: np.ndarray,
    ph0: PhononState,
    times,
) -> float:
    """Largest single-step increase of D(t), clamped below at zero.

    Memoryless reduced dynamics can only shrink the distinguishability of
    states, so any positive increment witnesses information flowing back
    from the mode into the two-site system.
    """
    series = trace_distance_series(delta, j, spec, rho_a0, rho_b0, ph0, times)
    if series.size < 2:
        raise ValueError("witness needs at least two grid times")
    return float(max(0.0, np.max(np.diff(series))))
