"""Donor-acceptor model with a quasi-static vibrational Stark shift.

A single excitation hops between the donor state |d> and the acceptor |a>
at rate J while the two sites are detuned by delta.  A strongly excited
narrow-band phonon mode of real amplitude alpha couples with opposite sign
to the two sites, shifting the detuning to delta - g*alpha.  At
alpha = delta/g the sites are pulled into resonance and the transfer becomes
a resonant Rabi oscillation with unit peak probability.

Two Hamiltonian conventions are exposed because the off-diagonal element is
ambiguous by a factor of two: the x-x + y-y exchange interaction contributes
2J to <d|H|a>, while the analytic transfer probability J^2/(J^2 + delta^2)
corresponds to an off-diagonal of J.  ``Convention.EFFECTIVE`` (the default)
uses J; ``Convention.EXCHANGE`` uses 2J.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .linalg import basis_state, hermitian_eigendecomposition

DONOR = 0
ACCEPTOR = 1


class Convention(enum.Enum):
    """Off-diagonal convention of the two-site Hamiltonian."""

    EFFECTIVE = "effective"  # <d|H|a> = J: reproduces J^2/(J^2 + delta^2)
    EXCHANGE = "exchange"    # <d|H|a> = 2J: literal x-x + y-y exchange element


@dataclass(frozen=True)
class TwoSiteParams:
    """Donor-acceptor parameters.

    delta, j, g and omega are angular frequencies in rad/ps; alpha is the
    dimensionless (real, non-negative) coherent amplitude of the phonon mode.
    """

    delta: float
    j: float
    g: float
    alpha: float
    omega: float = 0.0
    convention: Convention = Convention.EFFECTIVE

    def __post_init__(self):
        if not self.j > 0.0:
            raise ValueError(f"hopping strength j must be positive, got {self.j!r}")
        if self.omega < 0.0:
            raise ValueError(f"phonon frequency omega must be >= 0, got {self.omega!r}")
        if self.alpha < 0.0:
            raise ValueError(f"coherent amplitude alpha must be >= 0, got {self.alpha!r}")


def effective_detuning(p: TwoSiteParams) -> float:
    """Residual detuning delta - g*alpha after the phonon shift."""
    return p.delta - p.g * p.alpha


def effective_hopping(p: TwoSiteParams) -> float:
    """Off-diagonal matrix element: J or 2J depending on the convention."""
    return p.j if p.convention is Convention.EFFECTIVE else 2.0 * p.j


def transfer_probability(j: float, delta_eff: float) -> float:
    """Peak transfer probability j^2 / (j^2 + delta_eff^2).

    ``delta_eff`` is the residual detuning left after any phonon shift.
    """
    if j == 0.0 and delta_eff == 0.0:
        raise ValueError("transfer probability is undefined for j = delta_eff = 0")
    return j * j / (j * j + delta_eff * delta_eff)


def semiclassical_hamiltonian(p: TwoSiteParams) -> np.ndarray:
    """2x2 Hamiltonian [[delta - g*alpha, Jeff], [Jeff, -(delta - g*alpha)]]."""
    d = effective_detuning(p)
    jeff = effective_hopping(p)
    return np.array([[d, jeff], [jeff, -d]], dtype=complex)


def resonance_alpha(delta: float, g: float) -> float:
    """Coherent amplitude delta/g that cancels the detuning."""
    if g == 0.0:
        raise ValueError("no resonance amplitude exists for g = 0")
    return delta / g


def peak_transfer(p: TwoSiteParams) -> tuple[float, float]:
    """First maximum of the acceptor population, found numerically.

    Evolves |d> under the semiclassical Hamiltonian, locates the first peak
    of p_a(t) on a dense grid over one population period, then refines it by
    bounded scalar minimization.  Returns (p_max, t_peak) with t_peak in ps.
    """
    h = semiclassical_hamiltonian(p)
    w, v = hermitian_eigendecomposition(h)
    # eigenvalues are -Omega, +Omega with Omega = sqrt(jeff^2 + detuning^2) > 0
    omega_rabi = 0.5 * (w[1] - w[0])
    period = math.pi / omega_rabi

    c = v.conj().T @ basis_state(2, DONOR)
    row_a = v[ACCEPTOR, :]

    def acceptor_population(t: float) -> float:
        amp = row_a @ (np.exp(-1j * w * t) * c)
        return float(amp.real**2 + amp.imag**2)

    grid = np.linspace(0.0, period, 2049)
    values = np.abs(row_a @ (np.exp(-1j * np.outer(w, grid)) * c[:, None])) ** 2
    k = int(np.argmax(values))
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, grid.size - 1)]
    res = minimize_scalar(
        lambda t: -acceptor_population(t),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": period * 1e-13},
    )
    t_peak = float(res.x)
    return acceptor_population(t_peak), t_peak


def residual_detuning(g: float, alpha: float, omega: float, j: float) -> float:
    """Second-order detuning error g*alpha*omega^2/j^2 of the static-mode limit.

    Treating the slow drive cos(omega*t) as unity is wrong at second order in
    omega*t; over the transfer timescale 1/j the neglected piece acts as this
    extra detuning.
    """
    if not j > 0.0:
        raise ValueError(f"hopping strength j must be positive, got {j!r}")
    return g * alpha * omega * omega / (j * j)
