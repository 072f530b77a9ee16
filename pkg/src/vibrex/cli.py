"""Command-line surface: config-driven runs and plot-data emission.

Subcommands mirror the models (``twosite``, ``quantized``, ``fmo``,
``sweep``, ``estimate``) plus ``validate`` for parse-only checking.  Every
run echoes its fully resolved configuration, reports headline metrics, and
optionally writes a CSV or JSON data file whose first line (CSV) or first
fields (JSON) carry the tool version and the resolved-config hash.  Output
is deterministic: identical resolved config means identical file bytes.
"""

import argparse
import dataclasses
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .config import (
    TOOL_NAME,
    ConfigError,
    FmoInitial,
    FmoRun,
    QuantizedRun,
    RunConfig,
    TwoSiteRun,
    config_sha256,
    parse_config_file,
    serialize_config,
)
from .errorbudget import SweepSpec, run_sweep
from .estimates import absorbed_energy, alpha_from_flux, decoherence_ratio
from .fmo import (
    FS_PER_PS,
    SITE_COUNT,
    Backprop,
    Explicit,
    FmoParams,
    Site,
    Uniform,
    apply_resonance_shifts,
    builtin_fmo_params,
    capture_metrics,
    fmo_hamiltonian,
    load_fmo_file,
    simulate_fmo,
    time_grid_fs,
)
from .linalg import basis_state, trajectory
from .spinboson import (
    PhononSpec,
    coherent_state,
    displaced_thermal_state,
    evolve_reduced,
    full_hamiltonian,
    semiclassical_deviation,
    trace_distance_series,
)
from .twosite import (
    DONOR,
    TwoSiteParams,
    peak_transfer,
    semiclassical_hamiltonian,
)

BUILTIN_PREFIX = "builtin:"


@dataclass(frozen=True)
class RunReport:
    """Resolved-config echo, headline metrics and timing for one run."""

    config_echo: str
    config_sha256: str
    metrics: dict
    wall_seconds: float
    output_path: str | None


def _times_fs(config: RunConfig) -> np.ndarray:
    grid = config.time_grid
    return time_grid_fs(grid.t_max_fs, grid.dt_fs)


def _twosite_params(block: TwoSiteRun) -> TwoSiteParams:
    return TwoSiteParams(
        delta=block.delta,
        j=block.j,
        g=block.g,
        alpha=block.alpha,
        omega=block.omega,
        convention=block.convention,
    )


def _run_twosite(config: RunConfig):
    block = config.twosite
    params = _twosite_params(block)
    times_fs = _times_fs(config)
    traj = trajectory(
        basis_state(2, DONOR), semiclassical_hamiltonian(params), times_fs / FS_PER_PS
    )
    p_max, t_peak = peak_transfer(params)
    metrics = {"peak_probability": p_max, "peak_time_ps": t_peak}
    columns = [times_fs, traj.populations[:, 0], traj.populations[:, 1]]
    return metrics, ["t_fs", "p_d", "p_a"], columns


def _phonon_state(block: QuantizedRun):
    if block.phonon == "coherent":
        return coherent_state(block.alpha, block.n_max)
    return displaced_thermal_state(block.alpha, block.nbar, block.n_max)


_WITNESS_AMPLITUDES = {
    "donor": (1.0, 0.0),
    "acceptor": (0.0, 1.0),
    "plus": (2.0**-0.5, 2.0**-0.5),
    "minus": (2.0**-0.5, -(2.0**-0.5)),
}


def _witness_density(name: str) -> np.ndarray:
    v = np.array(_WITNESS_AMPLITUDES[name], dtype=complex)
    return np.outer(v, v.conj())


def _run_quantized(config: RunConfig):
    block = config.quantized
    spec = PhononSpec(omega=block.omega, g=block.g, n_max=block.n_max)
    times_fs = _times_fs(config)
    times_ps = times_fs / FS_PER_PS
    if block.task == "evolve":
        h = full_hamiltonian(block.delta, block.j, spec)
        traj, _ = evolve_reduced(basis_state(2, DONOR), _phonon_state(block), h, times_ps)
        p_a = traj.populations[:, 1]
        k = int(np.argmax(p_a))
        metrics = {
            "peak_probability": float(p_a[k]),
            "peak_time_ps": float(times_ps[k]),
        }
        columns = [times_fs, traj.populations[:, 0], p_a]
        return metrics, ["t_fs", "p_d", "p_a"], columns
    if block.task == "witness":
        series = trace_distance_series(
            block.delta,
            block.j,
            spec,
            _witness_density(block.states[0]),
            _witness_density(block.states[1]),
            _phonon_state(block),
            times_ps,
        )
        witness = float(max(0.0, np.max(np.diff(series))))
        metrics = {"witness": witness, "min_distance": float(series.min())}
        return metrics, ["t_fs", "trace_distance"], [times_fs, series]
    params = TwoSiteParams(
        delta=block.delta, j=block.j, g=block.g, alpha=block.alpha, omega=block.omega
    )
    deviation = semiclassical_deviation(
        params, spec, horizon=float(times_ps[-1]), num_points=int(times_ps.size)
    )
    metrics = {"deviation": deviation}
    return metrics, ["quantity", "value"], [["deviation"], [deviation]]


def _fmo_params(block: FmoRun, base_dir) -> FmoParams:
    if block.source is None:
        return FmoParams(
            site_energies=block.site_energies,
            couplings=block.couplings,
            label=block.label or "",
        )
    if block.source.startswith(BUILTIN_PREFIX):
        return builtin_fmo_params(block.source[len(BUILTIN_PREFIX):])
    path = Path(block.source)
    if not path.is_absolute() and base_dir is not None:
        path = Path(base_dir) / path
    return load_fmo_file(path)


def _fmo_initial(init: FmoInitial):
    if init.kind == "uniform":
        return Uniform()
    if init.kind == "site":
        return Site(site=init.site)
    if init.kind == "backprop":
        return Backprop(site=init.site, t_star_fs=init.t_star_fs)
    return Explicit(amplitudes=tuple(complex(re, im) for re, im in init.amplitudes))


def _run_fmo(config: RunConfig, base_dir):
    block = config.fmo
    params = _fmo_params(block, base_dir)
    if block.shift == "none":
        h = fmo_hamiltonian(params)
    else:
        h = fmo_hamiltonian(apply_resonance_shifts(params, block.shift).params)
    grid = config.time_grid
    traj = simulate_fmo(
        h,
        _fmo_initial(block.initial),
        t_max_fs=grid.t_max_fs,
        dt_fs=grid.dt_fs,
        with_coherences=block.with_coherences,
    )
    capture = capture_metrics(traj, block.capture_site)
    metrics = {
        "peak_probability": capture.peak_probability,
        "peak_time_fs": capture.peak_time_fs,
        "capture_site": capture.site,
    }
    header = ["t_fs"] + [f"p{k}" for k in range(1, SITE_COUNT + 1)]
    columns = [traj.times] + [traj.populations[:, k] for k in range(SITE_COUNT)]
    if block.with_coherences:
        for i in range(SITE_COUNT):
            for j in range(i + 1, SITE_COUNT):
                header.append(f"c{i + 1}{j + 1}")
                columns.append(traj.coherence_magnitudes[:, i, j])
    return metrics, header, columns


def _run_sweep(config: RunConfig):
    block = config.sweep
    spec = SweepSpec(
        base=_twosite_params(block.base),
        axis=block.axis,
        grid=block.grid,
        samples=block.samples,
        seed=config.seed,
    )
    curve = run_sweep(spec)
    metrics = {
        "axis": block.axis.value,
        "grid_points": int(curve.axis_values.size),
        "efficiency_min": float(curve.mean_efficiency.min()),
        "efficiency_max": float(curve.mean_efficiency.max()),
    }
    columns = [curve.axis_values, curve.mean_efficiency, curve.stderr]
    return metrics, ["axis_value", "mean_efficiency", "stderr"], columns


def _run_estimate(config: RunConfig):
    block = config.estimate
    if block.kind == "decoherence-ratio":
        ratio = decoherence_ratio(
            block.mass_kg, block.coherence_length_m, block.temperature_k
        )
        metrics = {"decoherence_ratio": ratio}
        return metrics, ["quantity", "value"], [["decoherence_ratio"], [ratio]]
    energy = absorbed_energy(block.flux_w_m2, block.area_m2, block.duration_s)
    alpha = alpha_from_flux(
        block.flux_w_m2, block.area_m2, block.duration_s, block.phonon_energy_j
    )
    metrics = {"absorbed_energy_j": energy, "alpha": alpha}
    columns = [["absorbed_energy_j", "alpha"], [energy, alpha]]
    return metrics, ["quantity", "value"], columns


def _format_cell(value) -> str:
    if isinstance(value, str):
        return value
    return f"{float(value):.12e}"


def _write_csv(path: Path, comment: str, header, columns) -> None:
    lines = [comment, ",".join(header)]
    for k in range(len(columns[0])):
        lines.append(",".join(_format_cell(col[k]) for col in columns))
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("\n".join(lines) + "\n")


def _column_payload(column) -> list:
    return [x if isinstance(x, str) else float(x) for x in column]


def _write_json(path: Path, digest: str, config, metrics, header, columns) -> None:
    payload = {
        "tool": TOOL_NAME,
        "version": __version__,
        "config_sha256": digest,
        "model": config.model,
        "metrics": metrics,
        "columns": {
            name: _column_payload(col) for name, col in zip(header, columns)
        },
    }
    with open(path, "w", encoding="utf-8", newline="") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")


_RUNNERS = {
    "twosite": lambda config, base_dir: _run_twosite(config),
    "quantized": lambda config, base_dir: _run_quantized(config),
    "fmo": _run_fmo,
    "sweep": lambda config, base_dir: _run_sweep(config),
    "estimate": lambda config, base_dir: _run_estimate(config),
}


def run(config: RunConfig, base_dir=None) -> RunReport:
    """Execute one resolved config; write its output file if requested."""
    start = time.perf_counter()
    metrics, header, columns = _RUNNERS[config.model](config, base_dir)
    digest = config_sha256(config)
    if config.output_path is not None:
        path = Path(config.output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        if config.output_format == "csv":
            comment = f"# {TOOL_NAME} {__version__} config-sha256={digest}"
            _write_csv(path, comment, header, columns)
        else:
            _write_json(path, digest, config, metrics, header, columns)
    return RunReport(
        config_echo=serialize_config(config),
        config_sha256=digest,
        metrics=metrics,
        wall_seconds=time.perf_counter() - start,
        output_path=config.output_path,
    )


def format_report(report: RunReport) -> str:
    """Human-readable run summary: echo, metrics, timing."""
    lines = [
        f"# {TOOL_NAME} {__version__}",
        f"# config sha256: {report.config_sha256}",
        report.config_echo.rstrip("\n"),
        "",
        "# metrics",
    ]
    for name, value in report.metrics.items():
        if isinstance(value, float):
            lines.append(f"{name} = {value!r}")
        else:
            lines.append(f"{name} = {value}")
    lines.append(f"# wall clock: {report.wall_seconds:.3f} s")
    if report.output_path is not None:
        lines.append(f"# wrote: {report.output_path}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description="Vibration-assisted exciton transfer models: run a TOML "
        "config and emit trajectory/curve data.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    base = argparse.ArgumentParser(add_help=False)
    base.add_argument("--config", required=True, metavar="PATH",
                      help="run configuration (TOML)")
    base.add_argument("--quiet", action="store_true", help="suppress the report")
    runner = argparse.ArgumentParser(add_help=False, parents=[base])
    runner.add_argument("--out", metavar="PATH", help="override run.output")
    runner.add_argument("--format", choices=("csv", "json"),
                        help="override run.format")
    runner.add_argument("--seed", type=int, metavar="N", help="override run.seed")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, summary in (
        ("twosite", "semiclassical donor-acceptor trajectory"),
        ("quantized", "single-mode spin-boson run (evolve/witness/deviation)"),
        ("fmo", "seven-site trajectory"),
        ("sweep", "transfer-efficiency error sweep"),
        ("estimate", "order-of-magnitude calculators"),
    ):
        sub.add_parser(name, parents=[runner], help=summary)
    sub.add_parser("validate", parents=[base],
                   help="parse a config, echo the resolved form, run nothing")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = parse_config_file(
            args.config, seed_override=getattr(args, "seed", None)
        )
        if args.command == "validate":
            if not args.quiet:
                print(f"# {TOOL_NAME} {__version__}")
                print(f"# config sha256: {config_sha256(config)}")
                sys.stdout.write(serialize_config(config))
                print("ok")
            return 0
        if config.model != args.command:
            raise ConfigError(
                f"run.model: config declares {config.model!r} but the "
                f"{args.command!r} subcommand was invoked"
            )
        overrides = {}
        if args.out is not None:
            overrides["output_path"] = args.out
        if args.format is not None:
            overrides["output_format"] = args.format
        if overrides:
            config = dataclasses.replace(config, **overrides)
        report = run(config, base_dir=Path(args.config).parent)
        if not args.quiet:
            sys.stdout.write(format_report(report))
        return 0
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
