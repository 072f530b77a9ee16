"""Order-of-magnitude calculators and unit bridges.

Scalar back-of-envelope quantities: the decoherence-to-dissipation ratio for
a thermally decohering molecular superposition, and the coherent phonon
amplitude obtainable from a given radiant flux.  Also the cm^-1 <-> rad/ps
conversion used by the seven-site module.
"""

import math

# CODATA values; fixed, not configurable.
HBAR = 1.054571817e-34          # J s
K_BOLTZMANN = 1.380649e-23      # J / K
SPEED_OF_LIGHT_CM_S = 2.99792458e10  # cm / s

# nu[cm^-1] -> omega[rad/ps]: 2 pi c with c in cm/ps.
WAVENUMBER_TO_RAD_PS = 2.0 * math.pi * SPEED_OF_LIGHT_CM_S * 1e-12


def _require_positive(**kwargs: float) -> None:
    for name, value in kwargs.items():
        if not value > 0.0:
            raise ValueError(f"{name} must be strictly positive, got {value!r}")


def decoherence_ratio(mass_kg: float, coherence_length_m: float, temperature_k: float) -> float:
    """hbar^2 / (m x^2 k_B T): decoherence time over dissipation time."""
    _require_positive(
        mass_kg=mass_kg, coherence_length_m=coherence_length_m, temperature_k=temperature_k
    )
    return HBAR * HBAR / (mass_kg * coherence_length_m**2 * K_BOLTZMANN * temperature_k)


def absorbed_energy(flux_w_m2: float, area_m2: float, duration_s: float) -> float:
    """Energy collected by an absorber of the given area over the duration."""
    _require_positive(flux_w_m2=flux_w_m2, area_m2=area_m2, duration_s=duration_s)
    return flux_w_m2 * area_m2 * duration_s


def alpha_from_flux(
    flux_w_m2: float, area_m2: float, duration_s: float, phonon_energy_j: float
) -> float:
    """Coherent amplitude sqrt(E / E_phonon) if the collected energy E is
    converted entirely into one vibrational mode."""
    _require_positive(phonon_energy_j=phonon_energy_j)
    energy = absorbed_energy(flux_w_m2, area_m2, duration_s)
    return math.sqrt(energy / phonon_energy_j)


def wavenumber_to_angular(value_cm: float) -> float:
    """Convert cm^-1 to rad/ps."""
    if not math.isfinite(value_cm):
        raise ValueError(f"wavenumber must be finite, got {value_cm!r}")
    return value_cm * WAVENUMBER_TO_RAD_PS


def angular_to_wavenumber(value_rad_ps: float) -> float:
    """Convert rad/ps to cm^-1."""
    if not math.isfinite(value_rad_ps):
        raise ValueError(f"angular frequency must be finite, got {value_rad_ps!r}")
    return value_rad_ps / WAVENUMBER_TO_RAD_PS
