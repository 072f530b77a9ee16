"""Seven-site excitonic system: Hamiltonian, resonance shifts, evolution.

The seven chromophore sites carry energies E_i (cm^-1) and symmetric
couplings J_ij; a narrow band of vibrational modes is modeled as a static
per-site Stark shift that pulls all site energies onto a common value, after
which the excitation moves coherently under the couplings alone.  Times are
in fs here, converted to the rad/ps energy unit internally.

The numeric site data shipped with the package is literature input (see
data/fmo_adolphs_renger_2006.toml); every quantitative invariant in this
module is independent of those particular numbers.
"""

import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .estimates import WAVENUMBER_TO_RAD_PS, angular_to_wavenumber
from .linalg import (
    Trajectory,
    basis_state,
    propagator,
    require_state_vector,
    trajectory,
)

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

SITE_COUNT = 7
COUPLING_SYMMETRY_ATOL = 1e-12
FS_PER_PS = 1000.0

DEFAULT_PARAMS_RESOURCE = "fmo_adolphs_renger_2006.toml"
BUILTIN_PARAM_SETS = {"adolphs-renger-2006": DEFAULT_PARAMS_RESOURCE}


@dataclass(frozen=True)
class FmoParams:
    """Seven site energies (cm^-1) and the symmetric coupling matrix (cm^-1)."""

    site_energies: np.ndarray
    couplings: np.ndarray
    label: str = ""

    def __post_init__(self):
        energies = np.asarray(self.site_energies, dtype=float)
        couplings = np.asarray(self.couplings, dtype=float)
        if energies.shape != (SITE_COUNT,):
            raise ValueError(
                f"site_energies: expected {SITE_COUNT} values, got shape {energies.shape}"
            )
        if couplings.shape != (SITE_COUNT, SITE_COUNT):
            raise ValueError(
                f"couplings: expected a {SITE_COUNT}x{SITE_COUNT} matrix, "
                f"got shape {couplings.shape}"
            )
        asym = np.max(np.abs(couplings - couplings.T))
        if asym > COUPLING_SYMMETRY_ATOL:
            raise ValueError(f"couplings: asymmetry {asym:.3e} exceeds tolerance")
        if np.max(np.abs(np.diag(couplings))) > COUPLING_SYMMETRY_ATOL:
            raise ValueError("couplings: diagonal must be zero")
        object.__setattr__(self, "site_energies", energies)
        object.__setattr__(self, "couplings", couplings)
        energies.setflags(write=False)
        couplings.setflags(write=False)


@dataclass(frozen=True)
class ResonanceShift:
    """Shifted parameters plus the per-site shifts that produced them."""

    params: FmoParams
    shifts: np.ndarray
    target_energy: float


@dataclass(frozen=True)
class CaptureMetrics:
    peak_probability: float
    peak_time_fs: float
    site: int


# Initial-state specifications (sites are numbered 1..7 externally).

@dataclass(frozen=True)
class Uniform:
    pass


@dataclass(frozen=True)
class Site:
    site: int


@dataclass(frozen=True)
class Backprop:
    site: int
    t_star_fs: float


@dataclass(frozen=True)
class Explicit:
    amplitudes: tuple


InitialState = Uniform | Site | Backprop | Explicit


def _require_site(site: int) -> int:
    if not 1 <= site <= SITE_COUNT:
        raise ValueError(f"site index must be in 1..{SITE_COUNT}, got {site!r}")
    return site


def load_fmo(config: dict, label: str | None = None) -> FmoParams:
    """Build FmoParams from a parsed config mapping.

    Expects ``site_energies`` and ``couplings`` sections, each a table with
    an explicit ``unit`` ("cm^-1" or "rad/ps") and ``values``.  rad/ps input
    is converted; cm^-1 is stored as given.
    """
    def dimensioned(section: str) -> np.ndarray:
        if section not in config:
            raise ValueError(f"missing section [{section}]")
        entry = config[section]
        if not isinstance(entry, dict) or "values" not in entry:
            raise ValueError(f"[{section}] must be a table with 'unit' and 'values'")
        if "unit" not in entry:
            raise ValueError(f"[{section}] is dimensioned but carries no unit")
        unit = entry["unit"]
        values = np.asarray(entry["values"], dtype=float)
        if unit == "cm^-1":
            return values
        if unit == "rad/ps":
            return values / WAVENUMBER_TO_RAD_PS
        raise ValueError(f"[{section}] has unsupported unit {unit!r}")

    known = {"site_energies", "couplings", "label"}
    unknown = set(config) - known
    if unknown:
        raise ValueError(f"unknown keys in seven-site config: {sorted(unknown)}")
    energies = dimensioned("site_energies")
    couplings = dimensioned("couplings")
    if label is None:
        label = str(config.get("label", ""))
    return FmoParams(site_energies=energies, couplings=couplings, label=label)


def load_fmo_file(path) -> FmoParams:
    with open(path, "rb") as fh:
        config = tomllib.load(fh)
    return load_fmo(config)


def builtin_fmo_params(name: str = "adolphs-renger-2006") -> FmoParams:
    """One of the parameter sets shipped with the package."""
    try:
        resource = BUILTIN_PARAM_SETS[name]
    except KeyError:
        raise ValueError(
            f"unknown builtin parameter set {name!r}; "
            f"available: {sorted(BUILTIN_PARAM_SETS)}"
        ) from None
    text = resources.files("vibrex.data").joinpath(resource).read_text()
    return load_fmo(tomllib.loads(text))


def fmo_hamiltonian(p: FmoParams) -> np.ndarray:
    """7x7 Hamiltonian in rad/ps: diag(E_i) plus the coupling matrix."""
    h_cm = np.diag(p.site_energies) + p.couplings
    return (h_cm * WAVENUMBER_TO_RAD_PS).astype(complex)


def apply_resonance_shifts(p: FmoParams, target: int | str = "mean") -> ResonanceShift:
    """Pull every site energy onto a common value.

    ``target`` is "mean" for the arithmetic mean of the site energies, or a
    site number 1..7 whose energy becomes the common value.  The returned
    shifts s_i = E_target - E_i are what the narrow vibrational band must
    supply per site; couplings are untouched.
    """
    if target == "mean":
        target_energy = float(np.mean(p.site_energies))
    elif isinstance(target, int):
        target_energy = float(p.site_energies[_require_site(target) - 1])
    else:
        raise ValueError(f"resonance target must be 'mean' or a site index, got {target!r}")
    shifts = target_energy - p.site_energies
    shifted = FmoParams(
        site_energies=np.full(SITE_COUNT, target_energy),
        couplings=p.couplings.copy(),
        label=p.label,
    )
    return ResonanceShift(params=shifted, shifts=shifts, target_energy=target_energy)


def backprop_initial_state(h_rad_ps: np.ndarray, site: int, t_star_fs: float) -> np.ndarray:
    """The state U(t_star)^dag |site>, which lands on |site> at t_star."""
    _require_site(site)
    u = propagator(h_rad_ps, t_star_fs / FS_PER_PS)
    return u.conj().T @ basis_state(SITE_COUNT, site - 1)


def initial_state_vector(spec: InitialState, h_rad_ps: np.ndarray) -> np.ndarray:
    if isinstance(spec, Uniform):
        return np.full(SITE_COUNT, 1.0 / math.sqrt(SITE_COUNT), dtype=complex)
    if isinstance(spec, Site):
        return basis_state(SITE_COUNT, _require_site(spec.site) - 1)
    if isinstance(spec, Backprop):
        return backprop_initial_state(h_rad_ps, spec.site, spec.t_star_fs)
    if isinstance(spec, Explicit):
        psi = np.asarray(spec.amplitudes, dtype=complex)
        if psi.shape != (SITE_COUNT,):
            raise ValueError(f"explicit state needs {SITE_COUNT} amplitudes")
        return require_state_vector(psi)
    raise TypeError(f"unsupported initial-state spec {spec!r}")


def time_grid_fs(t_max_fs: float, dt_fs: float) -> np.ndarray:
    if dt_fs <= 0.0:
        raise ValueError(f"dt must be positive, got {dt_fs!r}")
    if t_max_fs < dt_fs:
        raise ValueError(f"t_max {t_max_fs!r} must be at least dt {dt_fs!r}")
    steps = int(round(t_max_fs / dt_fs))
    return np.arange(steps + 1) * dt_fs


def simulate_fmo(
    h_rad_ps: np.ndarray,
    spec: InitialState,
    t_max_fs: float = 1000.0,
    dt_fs: float = 1.0,
    with_coherences: bool = False,
) -> Trajectory:
    """Site populations on a uniform fs grid under the 7x7 Hamiltonian.

    Coherence magnitudes |rho_ij(t)| are computed from the full evolved
    state and attached when requested.
    """
    times_fs = time_grid_fs(t_max_fs, dt_fs)
    psi0 = initial_state_vector(spec, h_rad_ps)
    traj = trajectory(psi0, h_rad_ps, times_fs / FS_PER_PS, with_coherences=with_coherences)
    return Trajectory(
        times=times_fs,
        populations=np.array(traj.populations),
        coherence_magnitudes=(
            None if traj.coherence_magnitudes is None
            else np.array(traj.coherence_magnitudes)
        ),
    )


def capture_metrics(traj: Trajectory, site: int) -> CaptureMetrics:
    """First global maximum of the site population over the window."""
    _require_site(site)
    if traj.times.size == 0:
        raise ValueError("empty trajectory")
    p = traj.populations[:, site - 1]
    k = int(np.argmax(p))
    return CaptureMetrics(
        peak_probability=float(p[k]), peak_time_fs=float(traj.times[k]), site=site
    )


def site_energy_spread_cm(h_rad_ps: np.ndarray) -> float:
    """Diagonal spread of a Hamiltonian in cm^-1 (diagnostic for shift checks)."""
    diag = np.real(np.diag(h_rad_ps))
    return angular_to_wavenumber(float(diag.max() - diag.min()))
