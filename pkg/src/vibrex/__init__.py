"""Vibration-assisted exciton transfer: semiclassical and quantized models.

Donor-acceptor transfer driven into resonance by a quasi-static vibrational
shift, the fully quantized single-mode check of that picture, a seven-site
light-harvesting Hamiltonian, error-budget sweeps, and order-of-magnitude
estimates - plus a deterministic config-driven command line.
"""

__version__ = "0.1.0"

from .config import (
    ConfigError,
    RunConfig,
    config_sha256,
    parse_config,
    parse_config_file,
    serialize_config,
)
from .errorbudget import (
    EfficiencyCurve,
    SweepAxis,
    SweepSpec,
    drive_frequency_efficiency,
    run_sweep,
    sample_alpha_spread,
    sweep_coupling_asymmetry,
    sweep_drive_frequency,
    sweep_residual_detuning,
)
from .estimates import (
    absorbed_energy,
    alpha_from_flux,
    angular_to_wavenumber,
    decoherence_ratio,
    wavenumber_to_angular,
)
from .fmo import (
    Backprop,
    CaptureMetrics,
    Explicit,
    FmoParams,
    Site,
    Uniform,
    apply_resonance_shifts,
    backprop_initial_state,
    builtin_fmo_params,
    capture_metrics,
    fmo_hamiltonian,
    load_fmo,
    load_fmo_file,
    simulate_fmo,
)
from .linalg import (
    EigenDecomposition,
    Trajectory,
    basis_state,
    hermitian_eigendecomposition,
    partial_trace_phonon,
    propagator,
    trace_distance,
    trajectory,
)
from .spinboson import (
    PhononSpec,
    PhononState,
    coherent_state,
    displaced_thermal_state,
    evolve_reduced,
    full_hamiltonian,
    nonmarkov_witness,
    recommended_n_max,
    semiclassical_deviation,
    trace_distance_series,
)
from .twosite import (
    Convention,
    TwoSiteParams,
    peak_transfer,
    resonance_alpha,
    residual_detuning,
    semiclassical_hamiltonian,
    transfer_probability,
)
from .cli import RunReport, main, run

__all__ = [
    "__version__",
    # linear algebra kernel
    "EigenDecomposition",
    "Trajectory",
    "basis_state",
    "hermitian_eigendecomposition",
    "propagator",
    "trajectory",
    "trace_distance",
    "partial_trace_phonon",
    # two-site semiclassical model
    "Convention",
    "TwoSiteParams",
    "transfer_probability",
    "semiclassical_hamiltonian",
    "resonance_alpha",
    "peak_transfer",
    "residual_detuning",
    # quantized single-mode model
    "PhononSpec",
    "PhononState",
    "recommended_n_max",
    "coherent_state",
    "displaced_thermal_state",
    "full_hamiltonian",
    "evolve_reduced",
    "semiclassical_deviation",
    "trace_distance_series",
    "nonmarkov_witness",
    # seven-site system
    "FmoParams",
    "CaptureMetrics",
    "Uniform",
    "Site",
    "Backprop",
    "Explicit",
    "load_fmo",
    "load_fmo_file",
    "builtin_fmo_params",
    "fmo_hamiltonian",
    "apply_resonance_shifts",
    "backprop_initial_state",
    "simulate_fmo",
    "capture_metrics",
    # error budget
    "SweepAxis",
    "SweepSpec",
    "EfficiencyCurve",
    "sweep_residual_detuning",
    "sweep_coupling_asymmetry",
    "sample_alpha_spread",
    "sweep_drive_frequency",
    "drive_frequency_efficiency",
    "run_sweep",
    # estimates
    "decoherence_ratio",
    "absorbed_energy",
    "alpha_from_flux",
    "wavenumber_to_angular",
    "angular_to_wavenumber",
    # config + CLI
    "ConfigError",
    "RunConfig",
    "parse_config",
    "parse_config_file",
    "serialize_config",
    "config_sha256",
    "RunReport",
    "run",
    "main",
]
