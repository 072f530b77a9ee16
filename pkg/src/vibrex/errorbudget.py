"""Transfer-efficiency error budget for the two-site resonance mechanism.

Four error axes, each a departure from the idealized static resonant model:

* DETUNING_ERROR     - residual detuning delta after imperfect compensation
                       (stands in for the spread of the vibrational band)
* COUPLING_ASYMMETRY - donor and acceptor couplings not exactly opposite
* ALPHA_SPREAD       - dispersion of the coherent amplitude (phonon-number
                       spread), sampled stochastically
* DRIVE_FREQUENCY    - the mode is not static: the shift oscillates as
                       g*alpha*cos(omega*t)

Every sweep starts from a base parameter set at exact resonance
(delta = g*alpha) and reports mean efficiency per grid value; stochastic
axes are reproducible sample by sample from (seed, grid index, sample index).
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .twosite import (
    TwoSiteParams,
    effective_hopping,
    peak_transfer,
    transfer_probability,
)

RESONANCE_RTOL = 1e-9
DRIVE_STEP_FACTOR = 0.01
DRIVE_EFFICIENCY_TOL = 1e-6
MIN_DRIVE_STEP = 1e-9


class SweepAxis(enum.Enum):
    DETUNING_ERROR = "detuning-error"
    COUPLING_ASYMMETRY = "coupling-asymmetry"
    ALPHA_SPREAD = "alpha-spread"
    DRIVE_FREQUENCY = "drive-frequency"


@dataclass(frozen=True)
class SweepSpec:
    """Sweep definition: resonant base parameters, axis, grid of error values.

    ``samples`` and ``seed`` only matter for the stochastic ALPHA_SPREAD
    axis; the seed is then mandatory.
    """

    base: TwoSiteParams
    axis: SweepAxis
    grid: tuple
    samples: int = 1
    seed: int | None = None

    def __post_init__(self):
        grid = tuple(float(x) for x in self.grid)
        if len(grid) == 0:
            raise ValueError("sweep grid must be non-empty")
        if any(b < a for a, b in zip(grid, grid[1:])):
            raise ValueError("sweep grid must be ascending")
        object.__setattr__(self, "grid", grid)
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples!r}")
        if self.axis is SweepAxis.ALPHA_SPREAD and self.seed is None:
            raise ValueError("alpha-spread sweeps require an explicit seed")


@dataclass(frozen=True)
class EfficiencyCurve:
    axis_values: np.ndarray
    mean_efficiency: np.ndarray
    stderr: np.ndarray

    def __post_init__(self):
        if not (len(self.axis_values) == len(self.mean_efficiency) == len(self.stderr)):
            raise ValueError("curve arrays must have equal length")
        self.axis_values.setflags(write=False)
        self.mean_efficiency.setflags(write=False)
        self.stderr.setflags(write=False)


def _require_resonant(base: TwoSiteParams) -> None:
    residual = base.delta - base.g * base.alpha
    scale = max(abs(base.delta), abs(base.g * base.alpha), base.j)
    if abs(residual) > RESONANCE_RTOL * scale:
        raise ValueError(
            f"sweep base must sit at resonance (delta = g*alpha); "
            f"residual detuning is {residual!r} rad/ps"
        )


def _with_extra_detuning(base: TwoSiteParams, extra: float) -> TwoSiteParams:
    return TwoSiteParams(
        delta=base.delta + extra,
        j=base.j,
        g=base.g,
        alpha=base.alpha,
        omega=base.omega,
        convention=base.convention,
    )


def _curve(spec: SweepSpec, means, errs) -> EfficiencyCurve:
    return EfficiencyCurve(
        axis_values=np.asarray(spec.grid, dtype=float),
        mean_efficiency=np.asarray(means, dtype=float),
        stderr=np.asarray(errs, dtype=float),
    )


def sweep_residual_detuning(spec: SweepSpec) -> EfficiencyCurve:
    """Peak transfer as a function of leftover detuning delta_err.

    Deterministic; under Convention.EFFECTIVE the numeric peak equals
    j^2 / (j^2 + delta_err^2).
    """
    if spec.axis is not SweepAxis.DETUNING_ERROR:
        raise ValueError(f"axis mismatch: {spec.axis}")
    _require_resonant(spec.base)
    means = [peak_transfer(_with_extra_detuning(spec.base, d))[0] for d in spec.grid]
    return _curve(spec, means, np.zeros(len(spec.grid)))


def asymmetry_residual_detuning(base: TwoSiteParams, epsilon: float) -> float:
    """Residual detuning when the acceptor coupling is -g*(1 + epsilon).

    Splitting the two couplings into antisymmetric and symmetric parts, only
    the antisymmetric part g*(1 + epsilon/2) shifts the transfer; the
    symmetric remainder moves both levels together.  At a resonant base the
    residual is -g*alpha*epsilon/2.
    """
    g_antisymmetric = base.g * (1.0 + 0.5 * epsilon)
    return base.delta - g_antisymmetric * base.alpha


def sweep_coupling_asymmetry(spec: SweepSpec) -> EfficiencyCurve:
    """Peak transfer versus the donor/acceptor coupling mismatch epsilon."""
    if spec.axis is not SweepAxis.COUPLING_ASYMMETRY:
        raise ValueError(f"axis mismatch: {spec.axis}")
    _require_resonant(spec.base)
    means = []
    for eps in spec.grid:
        residual = asymmetry_residual_detuning(spec.base, eps)
        effective_base = _with_extra_detuning(
            spec.base, residual - (spec.base.delta - spec.base.g * spec.base.alpha)
        )
        means.append(peak_transfer(effective_base)[0])
    return _curve(spec, means, np.zeros(len(spec.grid)))


def _draw_offset(seed: int, grid_index: int, sample_index: int) -> float:
    """One standard-normal draw keyed by (seed, grid point, sample)."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(grid_index, sample_index))
    return float(np.random.Generator(np.random.PCG64(ss)).standard_normal())


def sample_alpha_spread(spec: SweepSpec) -> EfficiencyCurve:
    """Mean peak transfer under Gaussian spread of the coherent amplitude.

    For each spread sigma, ``samples`` amplitudes alpha + sigma*z are drawn
    (z keyed by seed, grid index and sample index, independent of evaluation
    order).  A drawn amplitude enters the transfer only through the residual
    detuning -g*(alpha_drawn - alpha), which is how it is applied here; that
    keeps draws below zero amplitude meaningful as well.
    """
    if spec.axis is not SweepAxis.ALPHA_SPREAD:
        raise ValueError(f"axis mismatch: {spec.axis}")
    _require_resonant(spec.base)
    means = []
    errs = []
    for m, sigma in enumerate(spec.grid):
        if sigma < 0.0:
            raise ValueError(f"amplitude spread must be >= 0, got {sigma!r}")
        values = np.empty(spec.samples)
        for k in range(spec.samples):
            d_alpha = sigma * _draw_offset(spec.seed, m, k)
            values[k] = peak_transfer(
                _with_extra_detuning(spec.base, -spec.base.g * d_alpha)
            )[0]
        means.append(values.mean())
        if spec.samples > 1:
            errs.append(values.std(ddof=1) / math.sqrt(spec.samples))
        else:
            errs.append(0.0)
    return _curve(spec, means, errs)


def _step_unitary(detuning: float, hopping: float, dt: float) -> np.ndarray:
    """exp(-i dt (detuning*sz + hopping*sx)) in closed form."""
    omega = math.hypot(detuning, hopping)
    if omega == 0.0:
        return np.eye(2, dtype=complex)
    c = math.cos(omega * dt)
    s = math.sin(omega * dt) / omega
    return np.array(
        [[c - 1j * s * detuning, -1j * s * hopping],
         [-1j * s * hopping, c + 1j * s * detuning]]
    )


def _first_peak_driven(base: TwoSiteParams, drive_omega: float, step: float) -> float:
    """March |d> under H(t) = (delta - g*alpha*cos(wt))*sz + jeff*sx.

    Piecewise-constant propagation with midpoint sampling; returns the first
    local maximum of the acceptor population (parabolically refined), or the
    largest value seen if no interior maximum occurs before the horizon.
    """
    jeff = effective_hopping(base)
    shift = base.g * base.alpha
    horizon = 2.0 * math.pi / jeff
    steps = int(math.ceil(horizon / step))
    psi = np.array([1.0, 0.0], dtype=complex)
    pa = np.empty(steps + 1)
    pa[0] = 0.0
    for k in range(steps):
        t_mid = (k + 0.5) * step
        detuning = base.delta - shift * math.cos(drive_omega * t_mid)
        psi = _step_unitary(detuning, jeff, step) @ psi
        pa[k + 1] = abs(psi[1]) ** 2
        if k >= 1 and pa[k] >= pa[k - 1] and pa[k] >= pa[k + 1]:
            # interior maximum at index k: refine through the three samples
            y0, y1, y2 = pa[k - 1], pa[k], pa[k + 1]
            denom = y0 - 2.0 * y1 + y2
            if denom == 0.0:
                return float(y1)
            peak = y1 - 0.125 * (y0 - y2) ** 2 / denom
            return float(min(max(peak, 0.0), 1.0))
    return float(pa.max())


def drive_frequency_efficiency(base: TwoSiteParams, drive_omega: float) -> float:
    """First-peak efficiency under the oscillating shift, step-refined until
    the result moves by less than 1e-6."""
    if drive_omega < 0.0:
        raise ValueError(f"drive frequency must be >= 0, got {drive_omega!r}")
    jeff = effective_hopping(base)
    step = DRIVE_STEP_FACTOR / jeff
    if drive_omega > 0.0:
        step = min(step, DRIVE_STEP_FACTOR / drive_omega)
    if step < MIN_DRIVE_STEP:
        raise ValueError(
            f"drive frequency {drive_omega!r} rad/ps needs a step below "
            f"{MIN_DRIVE_STEP} ps; out of supported range"
        )
    previous = _first_peak_driven(base, drive_omega, step)
    for _ in range(12):
        step *= 0.5
        current = _first_peak_driven(base, drive_omega, step)
        if abs(current - previous) < DRIVE_EFFICIENCY_TOL:
            return current
        previous = current
    return previous


def sweep_drive_frequency(spec: SweepSpec) -> EfficiencyCurve:
    """First-peak efficiency versus the phonon oscillation frequency."""
    if spec.axis is not SweepAxis.DRIVE_FREQUENCY:
        raise ValueError(f"axis mismatch: {spec.axis}")
    _require_resonant(spec.base)
    means = [drive_frequency_efficiency(spec.base, w) for w in spec.grid]
    return _curve(spec, means, np.zeros(len(spec.grid)))


def run_sweep(spec: SweepSpec) -> EfficiencyCurve:
    """Dispatch a sweep to its axis implementation."""
    if spec.axis is SweepAxis.DETUNING_ERROR:
        return sweep_residual_detuning(spec)
    if spec.axis is SweepAxis.COUPLING_ASYMMETRY:
        return sweep_coupling_asymmetry(spec)
    if spec.axis is SweepAxis.ALPHA_SPREAD:
        return sample_alpha_spread(spec)
    if spec.axis is SweepAxis.DRIVE_FREQUENCY:
        return sweep_drive_frequency(spec)
    raise ValueError(f"unsupported sweep axis {spec.axis!r}")
