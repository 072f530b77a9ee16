"""Run configuration: TOML ingestion, validation, canonical echo, hashing.

A run config is one TOML document with a ``[run]`` section naming the model,
an optional ``[time_grid]`` section, and exactly one model section
(``[twosite]``, ``[quantized]``, ``[fmo]``, ``[sweep]``, ``[estimate]``).
Dimensioned values are written as strings ``"VALUE UNIT"`` ("1.0 rad/ps",
"220 fs", "300 K"); a bare number on a dimensioned field is a parse error,
and a unit string on a dimensionless field is one too.  Unknown keys are
rejected.  Every error message starts with the dotted key path.

``serialize_config`` emits the canonical form - defaults materialized,
values in canonical units, fixed key order - and ``config_sha256`` hashes
that form, so identical resolved configs hash identically no matter how
they were spelled.
"""

import dataclasses
import hashlib
from dataclasses import dataclass

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .errorbudget import SweepAxis
from .estimates import WAVENUMBER_TO_RAD_PS
from .fmo import SITE_COUNT, FmoParams
from .twosite import Convention

TOOL_NAME = "vibrex"

MODELS = ("twosite", "quantized", "fmo", "sweep", "estimate")
OUTPUT_FORMATS = ("csv", "json")
QUANTIZED_TASKS = ("evolve", "witness", "deviation")
PHONON_KINDS = ("coherent", "displaced-thermal")
WITNESS_STATES = ("donor", "acceptor", "plus", "minus")
INITIAL_KINDS = ("uniform", "site", "backprop", "explicit")
ESTIMATE_KINDS = ("decoherence-ratio", "alpha-from-flux")
MAX_SEED = 2**64 - 1

# accepted units per dimension, as factors to the canonical unit
_ANGULAR_UNITS = {"rad/ps": 1.0, "cm^-1": WAVENUMBER_TO_RAD_PS}
_TIME_FS_UNITS = {"fs": 1.0, "ps": 1.0e3}
_MASS_KG_UNITS = {"kg": 1.0}
_LENGTH_M_UNITS = {"m": 1.0, "nm": 1.0e-9}
_TEMPERATURE_K_UNITS = {"K": 1.0}
_FLUX_UNITS = {"W/m^2": 1.0}
_AREA_M2_UNITS = {"m^2": 1.0, "nm^2": 1.0e-18}
_DURATION_S_UNITS = {"s": 1.0, "ps": 1.0e-12, "fs": 1.0e-15}
_ENERGY_J_UNITS = {"J": 1.0}


class ConfigError(ValueError):
    """Config rejection; the message begins with the dotted key path."""


@dataclass(frozen=True)
class TimeGrid:
    """Uniform output grid, canonical femtoseconds."""

    t_max_fs: float
    dt_fs: float


@dataclass(frozen=True)
class TwoSiteRun:
    """Semiclassical donor-acceptor block; energies in rad/ps."""

    delta: float
    j: float
    g: float
    alpha: float
    omega: float = 0.0
    convention: Convention = Convention.EFFECTIVE


@dataclass(frozen=True)
class QuantizedRun:
    """Single-mode quantized block; energies in rad/ps."""

    task: str
    delta: float
    j: float
    g: float
    omega: float
    alpha: float
    n_max: int
    phonon: str = "coherent"
    nbar: float = 0.0
    states: tuple = ("plus", "minus")


@dataclass(frozen=True)
class FmoInitial:
    kind: str
    site: int | None = None
    t_star_fs: float | None = None
    amplitudes: tuple | None = None


@dataclass(frozen=True)
class FmoRun:
    """Seven-site block; inline data held in cm^-1."""

    source: str | None
    site_energies: tuple | None
    couplings: tuple | None
    label: str | None
    shift: object  # "none" | "mean" | site number 1..7
    initial: FmoInitial
    capture_site: int = 3
    with_coherences: bool = False


@dataclass(frozen=True)
class SweepRun:
    axis: SweepAxis
    grid: tuple
    samples: int
    base: TwoSiteRun


@dataclass(frozen=True)
class EstimateRun:
    """Order-of-magnitude block; canonical SI values."""

    kind: str
    mass_kg: float | None = None
    coherence_length_m: float | None = None
    temperature_k: float | None = None
    flux_w_m2: float | None = None
    area_m2: float | None = None
    duration_s: float | None = None
    phonon_energy_j: float | None = None


@dataclass(frozen=True)
class RunConfig:
    model: str
    output_path: str | None
    output_format: str
    seed: int | None
    time_grid: TimeGrid | None
    twosite: TwoSiteRun | None = None
    quantized: QuantizedRun | None = None
    fmo: FmoRun | None = None
    sweep: SweepRun | None = None
    estimate: EstimateRun | None = None

    def model_block(self):
        return getattr(self, self.model)


_MISSING = object()


class _Table:
    """Strict reader over one parsed TOML table: typed takes, leftover check."""

    def __init__(self, mapping, path):
        if not isinstance(mapping, dict):
            raise ConfigError(f"{path}: expected a table")
        self._mapping = mapping
        self._path = path
        self._seen = set()

    def _raw(self, key, default):
        self._seen.add(key)
        if key in self._mapping:
            return self._mapping[key]
        if default is _MISSING:
            raise ConfigError(f"{self._path}.{key}: missing required key")
        return default

    def has(self, key):
        return key in self._mapping

    def subtable(self, key, required=True):
        raw = self._raw(key, _MISSING if required else None)
        if raw is None:
            return None
        return _Table(raw, f"{self._path}.{key}")

    def string(self, key, default=_MISSING, choices=None):
        raw = self._raw(key, default)
        if raw is default and default is not _MISSING:
            return raw
        if not isinstance(raw, str):
            raise ConfigError(f"{self._path}.{key}: expected a string")
        if choices is not None and raw not in choices:
            raise ConfigError(
                f"{self._path}.{key}: {raw!r} is not one of {sorted(choices)}"
            )
        return raw

    def integer(self, key, default=_MISSING, minimum=None, maximum=None):
        raw = self._raw(key, default)
        if raw is default and default is not _MISSING:
            return raw
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise ConfigError(f"{self._path}.{key}: expected an integer")
        if minimum is not None and raw < minimum:
            raise ConfigError(f"{self._path}.{key}: must be >= {minimum}, got {raw}")
        if maximum is not None and raw > maximum:
            raise ConfigError(f"{self._path}.{key}: must be <= {maximum}, got {raw}")
        return raw

    def boolean(self, key, default=_MISSING):
        raw = self._raw(key, default)
        if raw is default and default is not _MISSING:
            return raw
        if not isinstance(raw, bool):
            raise ConfigError(f"{self._path}.{key}: expected true or false")
        return raw

    def number(self, key, default=_MISSING):
        """Dimensionless scalar: bare TOML number required."""
        raw = self._raw(key, default)
        if raw is default and default is not _MISSING:
            return raw
        return _bare_number(raw, f"{self._path}.{key}")

    def quantity(self, key, units, default=_MISSING):
        """Dimensioned scalar: "VALUE UNIT" string required."""
        raw = self._raw(key, default)
        if raw is default and default is not _MISSING:
            return raw
        return _quantity(raw, f"{self._path}.{key}", units)

    def array(self, key, default=_MISSING):
        raw = self._raw(key, default)
        if raw is default and default is not _MISSING:
            return raw
        if not isinstance(raw, list):
            raise ConfigError(f"{self._path}.{key}: expected an array")
        return raw

    def finish(self):
        leftover = sorted(set(self._mapping) - self._seen)
        if leftover:
            raise ConfigError(f"{self._path}.{leftover[0]}: unknown key")

    @property
    def path(self):
        return self._path


def _bare_number(raw, path):
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        if isinstance(raw, str):
            raise ConfigError(
                f"{path}: dimensionless value must be a bare number, not a string"
            )
        raise ConfigError(f"{path}: expected a number")
    value = float(raw)
    if value != value or value in (float("inf"), float("-inf")):
        raise ConfigError(f"{path}: value must be finite")
    return value


def _quantity(raw, path, units):
    canonical = next(iter(units))
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        raise ConfigError(
            f'{path}: dimensioned value needs a unit, e.g. "{raw} {canonical}"'
        )
    if not isinstance(raw, str):
        raise ConfigError(f'{path}: expected a "VALUE UNIT" string')
    parts = raw.split()
    if len(parts) != 2:
        raise ConfigError(f'{path}: expected "VALUE UNIT", got {raw!r}')
    try:
        value = float(parts[0])
    except ValueError:
        raise ConfigError(f"{path}: {parts[0]!r} is not a number") from None
    if value != value or value in (float("inf"), float("-inf")):
        raise ConfigError(f"{path}: value must be finite")
    if parts[1] not in units:
        raise ConfigError(
            f"{path}: unsupported unit {parts[1]!r}; accepted: {sorted(units)}"
        )
    return value * units[parts[1]]


def _parse_time_grid(table: _Table) -> TimeGrid:
    t_max = table.quantity("t_max", _TIME_FS_UNITS)
    dt = table.quantity("dt", _TIME_FS_UNITS)
    table.finish()
    if dt <= 0.0:
        raise ConfigError(f"{table.path}.dt: must be > 0")
    if t_max < dt:
        raise ConfigError(f"{table.path}.t_max: must be >= dt")
    return TimeGrid(t_max_fs=t_max, dt_fs=dt)


def _parse_twosite_block(table: _Table) -> TwoSiteRun:
    delta = table.quantity("delta", _ANGULAR_UNITS)
    j = table.quantity("j", _ANGULAR_UNITS)
    g = table.quantity("g", _ANGULAR_UNITS)
    alpha = table.number("alpha")
    omega = table.quantity("omega", _ANGULAR_UNITS, default=0.0)
    convention_name = table.string(
        "convention",
        default=Convention.EFFECTIVE.value,
        choices=[c.value for c in Convention],
    )
    path = table.path
    table.finish()
    if j <= 0.0:
        raise ConfigError(f"{path}.j: must be > 0")
    if alpha < 0.0:
        raise ConfigError(f"{path}.alpha: must be >= 0")
    if omega < 0.0:
        raise ConfigError(f"{path}.omega: must be >= 0")
    return TwoSiteRun(
        delta=delta, j=j, g=g, alpha=alpha, omega=omega,
        convention=Convention(convention_name),
    )


def _parse_quantized_block(table: _Table) -> QuantizedRun:
    from .spinboson import recommended_n_max

    task = table.string("task", default="evolve", choices=QUANTIZED_TASKS)
    delta = table.quantity("delta", _ANGULAR_UNITS)
    j = table.quantity("j", _ANGULAR_UNITS)
    g = table.quantity("g", _ANGULAR_UNITS)
    omega = table.quantity("omega", _ANGULAR_UNITS)
    alpha = table.number("alpha")
    path = table.path
    if alpha < 0.0:
        raise ConfigError(f"{path}.alpha: must be >= 0")
    n_max = table.integer("n_max", default=None, minimum=1)
    if n_max is None:
        n_max = recommended_n_max(alpha)
    phonon = table.string("phonon", default="coherent", choices=PHONON_KINDS)
    nbar = table.number("nbar", default=0.0)
    states_raw = table.array("states", default=list(("plus", "minus")))
    table.finish()
    if j < 0.0:
        raise ConfigError(f"{path}.j: must be >= 0")
    if omega < 0.0:
        raise ConfigError(f"{path}.omega: must be >= 0")
    if nbar < 0.0:
        raise ConfigError(f"{path}.nbar: must be >= 0")
    if len(states_raw) != 2:
        raise ConfigError(f"{path}.states: expected exactly two state names")
    states = []
    for k, name in enumerate(states_raw):
        if not isinstance(name, str) or name not in WITNESS_STATES:
            raise ConfigError(
                f"{path}.states[{k}]: expected one of {sorted(WITNESS_STATES)}"
            )
        states.append(name)
    if task == "deviation" and j <= 0.0:
        raise ConfigError(f"{path}.j: must be > 0 for the deviation task")
    return QuantizedRun(
        task=task, delta=delta, j=j, g=g, omega=omega, alpha=alpha,
        n_max=n_max, phonon=phonon, nbar=nbar, states=tuple(states),
    )


def _parse_fmo_hamiltonian(table: _Table):
    if table.has("source"):
        source = table.string("source")
        table.finish()
        if not source:
            raise ConfigError(f"{table.path}.source: must be non-empty")
        return source, None, None, None
    unit = table.string("unit", choices=sorted(_ANGULAR_UNITS))
    energies_raw = table.array("site_energies")
    couplings_raw = table.array("couplings")
    label = table.string("label", default=None)
    path = table.path
    table.finish()
    factor = 1.0 if unit == "cm^-1" else 1.0 / WAVENUMBER_TO_RAD_PS
    if len(energies_raw) != SITE_COUNT:
        raise ConfigError(
            f"{path}.site_energies: expected {SITE_COUNT} values, "
            f"got {len(energies_raw)}"
        )
    energies = tuple(
        _bare_number(x, f"{path}.site_energies[{i}]") * factor
        for i, x in enumerate(energies_raw)
    )
    if len(couplings_raw) != SITE_COUNT:
        raise ConfigError(
            f"{path}.couplings: expected {SITE_COUNT} rows, got {len(couplings_raw)}"
        )
    couplings = []
    for i, row in enumerate(couplings_raw):
        if not isinstance(row, list):
            raise ConfigError(f"{path}.couplings[{i}]: expected an array row")
        if len(row) != SITE_COUNT:
            raise ConfigError(
                f"{path}.couplings[{i}]: expected {SITE_COUNT} entries, got {len(row)}"
            )
        couplings.append(
            tuple(
                _bare_number(x, f"{path}.couplings[{i}][{k}]") * factor
                for k, x in enumerate(row)
            )
        )
    try:
        FmoParams(site_energies=energies, couplings=tuple(couplings), label=label or "")
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return None, energies, tuple(couplings), label


def _parse_fmo_initial(table: _Table) -> FmoInitial:
    kind = table.string("kind", choices=INITIAL_KINDS)
    path = table.path
    if kind == "uniform":
        table.finish()
        return FmoInitial(kind=kind)
    if kind == "site":
        site = table.integer("site", minimum=1, maximum=7)
        table.finish()
        return FmoInitial(kind=kind, site=site)
    if kind == "backprop":
        site = table.integer("site", minimum=1, maximum=7)
        t_star = table.quantity("t_star", _TIME_FS_UNITS, default=220.0)
        table.finish()
        if t_star < 0.0:
            raise ConfigError(f"{path}.t_star: must be >= 0")
        return FmoInitial(kind=kind, site=site, t_star_fs=t_star)
    amplitudes_raw = table.array("amplitudes")
    table.finish()
    if len(amplitudes_raw) != 7:
        raise ConfigError(f"{path}.amplitudes: expected 7 [re, im] pairs")
    amplitudes = []
    for i, pair in enumerate(amplitudes_raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ConfigError(f"{path}.amplitudes[{i}]: expected a [re, im] pair")
        amplitudes.append(
            (
                _bare_number(pair[0], f"{path}.amplitudes[{i}][0]"),
                _bare_number(pair[1], f"{path}.amplitudes[{i}][1]"),
            )
        )
    return FmoInitial(kind=kind, amplitudes=tuple(amplitudes))


def _parse_fmo_block(table: _Table) -> FmoRun:
    hamiltonian = table.subtable("hamiltonian")
    source, energies, couplings, label = _parse_fmo_hamiltonian(hamiltonian)
    initial = _parse_fmo_initial(table.subtable("initial"))
    path = table.path
    shift_raw = table._raw("shift", "mean")
    if isinstance(shift_raw, bool) or not isinstance(shift_raw, (str, int)):
        raise ConfigError(f'{path}.shift: expected "none", "mean", or a site number')
    if isinstance(shift_raw, str) and shift_raw not in ("none", "mean"):
        raise ConfigError(f'{path}.shift: expected "none", "mean", or a site number')
    if isinstance(shift_raw, int) and not 1 <= shift_raw <= 7:
        raise ConfigError(f"{path}.shift: site number must be in 1..7")
    capture_site = table.integer("capture_site", default=3, minimum=1, maximum=7)
    with_coherences = table.boolean("with_coherences", default=False)
    table.finish()
    return FmoRun(
        source=source,
        site_energies=energies,
        couplings=couplings,
        label=label,
        shift=shift_raw,
        initial=initial,
        capture_site=capture_site,
        with_coherences=with_coherences,
    )


# per sweep axis: (units or None for dimensionless grid, grid lower bound)
_AXIS_GRID = {
    SweepAxis.DETUNING_ERROR: (_ANGULAR_UNITS, None),
    SweepAxis.COUPLING_ASYMMETRY: (None, None),
    SweepAxis.ALPHA_SPREAD: (None, 0.0),
    SweepAxis.DRIVE_FREQUENCY: (_ANGULAR_UNITS, 0.0),
}


def _parse_sweep_block(table: _Table, seed) -> SweepRun:
    axis_name = table.string("axis", choices=[a.value for a in SweepAxis])
    axis = SweepAxis(axis_name)
    units, lower = _AXIS_GRID[axis]
    grid_raw = table.array("grid")
    path = table.path
    if not grid_raw:
        raise ConfigError(f"{path}.grid: must be non-empty")
    grid = []
    for i, entry in enumerate(grid_raw):
        entry_path = f"{path}.grid[{i}]"
        if units is None:
            value = _bare_number(entry, entry_path)
        else:
            value = _quantity(entry, entry_path, units)
        if lower is not None and value < lower:
            raise ConfigError(f"{entry_path}: must be >= {lower}")
        grid.append(value)
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ConfigError(f"{path}.grid: values must be ascending")
    samples = table.integer("samples", default=1, minimum=1)
    base = _parse_twosite_block(table.subtable("base"))
    table.finish()
    if axis is SweepAxis.ALPHA_SPREAD and seed is None:
        raise ConfigError("run.seed: required for alpha-spread sweeps")
    residual = base.delta - base.g * base.alpha
    scale = max(abs(base.delta), abs(base.g * base.alpha), base.j)
    if abs(residual) > 1e-9 * scale:
        raise ConfigError(
            f"{path}.base: must sit at resonance (delta = g*alpha); "
            f"residual detuning is {residual!r} rad/ps"
        )
    return SweepRun(axis=axis, grid=tuple(grid), samples=samples, base=base)


def _parse_estimate_block(table: _Table) -> EstimateRun:
    kind = table.string("kind", choices=ESTIMATE_KINDS)
    path = table.path
    if kind == "decoherence-ratio":
        mass = table.quantity("mass", _MASS_KG_UNITS, default=2.0e-21)
        length = table.quantity("coherence_length", _LENGTH_M_UNITS, default=2.0e-9)
        temperature = table.quantity(
            "temperature", _TEMPERATURE_K_UNITS, default=300.0
        )
        table.finish()
        for name, value in (
            ("mass", mass),
            ("coherence_length", length),
            ("temperature", temperature),
        ):
            if value <= 0.0:
                raise ConfigError(f"{path}.{name}: must be > 0")
        return EstimateRun(
            kind=kind,
            mass_kg=mass,
            coherence_length_m=length,
            temperature_k=temperature,
        )
    flux = table.quantity("flux", _FLUX_UNITS, default=100.0)
    area = table.quantity("area", _AREA_M2_UNITS, default=1.0e-18)
    duration = table.quantity("duration", _DURATION_S_UNITS, default=1.0e-12)
    phonon_energy = table.quantity("phonon_energy", _ENERGY_J_UNITS, default=1.0e-32)
    table.finish()
    for name, value in (
        ("flux", flux),
        ("area", area),
        ("duration", duration),
        ("phonon_energy", phonon_energy),
    ):
        if value <= 0.0:
            raise ConfigError(f"{path}.{name}: must be > 0")
    return EstimateRun(
        kind=kind,
        flux_w_m2=flux,
        area_m2=area,
        duration_s=duration,
        phonon_energy_j=phonon_energy,
    )


_TIME_GRID_MODELS = ("twosite", "quantized", "fmo")

_BLOCK_PARSERS = {
    "twosite": lambda table, seed: _parse_twosite_block(table),
    "quantized": lambda table, seed: _parse_quantized_block(table),
    "fmo": lambda table, seed: _parse_fmo_block(table),
    "sweep": _parse_sweep_block,
    "estimate": lambda table, seed: _parse_estimate_block(table),
}


def parse_config(text: str, seed_override: int | None = None) -> RunConfig:
    """Parse and fully validate one TOML run config.

    ``seed_override`` replaces ``run.seed`` before validation, so a seed
    supplied on the command line satisfies the sweep seed requirement.
    """
    try:
        document = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config: invalid TOML: {exc}") from None
    root = _Table(document, "config")

    run = root.subtable("run")
    model = run.string("model", choices=MODELS)
    output_path = run.string("output", default=None)
    output_format = run.string("format", default="csv", choices=OUTPUT_FORMATS)
    seed = run.integer("seed", default=None, minimum=0, maximum=MAX_SEED)
    run.finish()
    if seed_override is not None:
        if not 0 <= seed_override <= MAX_SEED:
            raise ConfigError(f"run.seed: override {seed_override!r} out of 64-bit range")
        seed = seed_override

    for other in MODELS:
        if other != model and root.has(other):
            raise ConfigError(
                f"config.{other}: unexpected model section "
                f"(run.model is {model!r}; exactly one model block is allowed)"
            )

    time_grid = None
    if model in _TIME_GRID_MODELS:
        time_grid = _parse_time_grid(root.subtable("time_grid"))
    elif root.has("time_grid"):
        raise ConfigError(f"config.time_grid: not used by model {model!r}")

    block_table = root.subtable(model)
    block = _BLOCK_PARSERS[model](block_table, seed)
    root.finish()

    return RunConfig(
        model=model,
        output_path=output_path,
        output_format=output_format,
        seed=seed,
        time_grid=time_grid,
        **{model: block},
    )


def parse_config_file(path, seed_override: int | None = None) -> RunConfig:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config(handle.read(), seed_override=seed_override)


def _toml_string(value: str) -> str:
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _toml_float(value: float) -> str:
    return repr(float(value))


def _toml_quantity(value: float, unit: str) -> str:
    return _toml_string(f"{float(value)!r} {unit}")


def _twosite_lines(name: str, block: TwoSiteRun) -> list:
    return [
        f"[{name}]",
        f'delta = {_toml_quantity(block.delta, "rad/ps")}',
        f'j = {_toml_quantity(block.j, "rad/ps")}',
        f'g = {_toml_quantity(block.g, "rad/ps")}',
        f"alpha = {_toml_float(block.alpha)}",
        f'omega = {_toml_quantity(block.omega, "rad/ps")}',
        f"convention = {_toml_string(block.convention.value)}",
    ]


def _quantized_lines(block: QuantizedRun) -> list:
    states = ", ".join(_toml_string(s) for s in block.states)
    return [
        "[quantized]",
        f"task = {_toml_string(block.task)}",
        f'delta = {_toml_quantity(block.delta, "rad/ps")}',
        f'j = {_toml_quantity(block.j, "rad/ps")}',
        f'g = {_toml_quantity(block.g, "rad/ps")}',
        f'omega = {_toml_quantity(block.omega, "rad/ps")}',
        f"alpha = {_toml_float(block.alpha)}",
        f"n_max = {block.n_max}",
        f"phonon = {_toml_string(block.phonon)}",
        f"nbar = {_toml_float(block.nbar)}",
        f"states = [{states}]",
    ]


def _fmo_lines(block: FmoRun) -> list:
    shift = (
        _toml_string(block.shift) if isinstance(block.shift, str) else str(block.shift)
    )
    lines = [
        "[fmo]",
        f"shift = {shift}",
        f"capture_site = {block.capture_site}",
        f"with_coherences = {'true' if block.with_coherences else 'false'}",
        "",
        "[fmo.hamiltonian]",
    ]
    if block.source is not None:
        lines.append(f"source = {_toml_string(block.source)}")
    else:
        lines.append('unit = "cm^-1"')
        energies = ", ".join(_toml_float(x) for x in block.site_energies)
        lines.append(f"site_energies = [{energies}]")
        lines.append("couplings = [")
        for row in block.couplings:
            lines.append("  [" + ", ".join(_toml_float(x) for x in row) + "],")
        lines.append("]")
        if block.label is not None:
            lines.append(f"label = {_toml_string(block.label)}")
    lines.extend(["", "[fmo.initial]", f"kind = {_toml_string(block.initial.kind)}"])
    if block.initial.site is not None:
        lines.append(f"site = {block.initial.site}")
    if block.initial.t_star_fs is not None:
        lines.append(f't_star = {_toml_quantity(block.initial.t_star_fs, "fs")}')
    if block.initial.amplitudes is not None:
        pairs = ", ".join(
            f"[{_toml_float(re)}, {_toml_float(im)}]"
            for re, im in block.initial.amplitudes
        )
        lines.append(f"amplitudes = [{pairs}]")
    return lines


def _sweep_lines(block: SweepRun) -> list:
    units, _ = _AXIS_GRID[block.axis]
    if units is None:
        grid = ", ".join(_toml_float(x) for x in block.grid)
    else:
        grid = ", ".join(_toml_string(f"{x!r} rad/ps") for x in block.grid)
    lines = [
        "[sweep]",
        f"axis = {_toml_string(block.axis.value)}",
        f"grid = [{grid}]",
        f"samples = {block.samples}",
        "",
    ]
    lines.extend(_twosite_lines("sweep.base", block.base))
    return lines


def _estimate_lines(block: EstimateRun) -> list:
    lines = ["[estimate]", f"kind = {_toml_string(block.kind)}"]
    if block.kind == "decoherence-ratio":
        lines.append(f'mass = {_toml_quantity(block.mass_kg, "kg")}')
        lines.append(
            f'coherence_length = {_toml_quantity(block.coherence_length_m, "m")}'
        )
        lines.append(f'temperature = {_toml_quantity(block.temperature_k, "K")}')
    else:
        lines.append(f'flux = {_toml_quantity(block.flux_w_m2, "W/m^2")}')
        lines.append(f'area = {_toml_quantity(block.area_m2, "m^2")}')
        lines.append(f'duration = {_toml_quantity(block.duration_s, "s")}')
        lines.append(
            f'phonon_energy = {_toml_quantity(block.phonon_energy_j, "J")}'
        )
    return lines


def serialize_config(config: RunConfig) -> str:
    """Canonical TOML for a RunConfig: defaults materialized, fixed order.

    parse_config(serialize_config(c)) == c for every valid c, so the
    serialization (and its hash) identifies the resolved run.
    """
    lines = ["[run]", f"model = {_toml_string(config.model)}"]
    if config.output_path is not None:
        lines.append(f"output = {_toml_string(config.output_path)}")
    lines.append(f"format = {_toml_string(config.output_format)}")
    if config.seed is not None:
        lines.append(f"seed = {config.seed}")
    lines.append("")
    if config.time_grid is not None:
        lines.extend(
            [
                "[time_grid]",
                f't_max = {_toml_quantity(config.time_grid.t_max_fs, "fs")}',
                f'dt = {_toml_quantity(config.time_grid.dt_fs, "fs")}',
                "",
            ]
        )
    block = config.model_block()
    if config.model == "twosite":
        lines.extend(_twosite_lines("twosite", block))
    elif config.model == "quantized":
        lines.extend(_quantized_lines(block))
    elif config.model == "fmo":
        lines.extend(_fmo_lines(block))
    elif config.model == "sweep":
        lines.extend(_sweep_lines(block))
    else:
        lines.extend(_estimate_lines(block))
    return "\n".join(lines) + "\n"


def config_sha256(config: RunConfig) -> str:
    """Hex digest of the canonical serialization, output destination excluded.

    The hash identifies the computation, so rewriting the same run to a
    different file yields the same digest (and thus identical file bytes).
    """
    stripped = dataclasses.replace(config, output_path=None)
    return hashlib.sha256(serialize_config(stripped).encode("utf-8")).hexdigest()
