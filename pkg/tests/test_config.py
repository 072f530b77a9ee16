"""Unit tests for TOML run-config parsing, serialization and hashing."""

import dataclasses

import pytest

from vibrex.config import (
    ConfigError,
    config_sha256,
    parse_config,
    parse_config_file,
    serialize_config,
)
from vibrex.errorbudget import SweepAxis
from vibrex.estimates import WAVENUMBER_TO_RAD_PS
from vibrex.twosite import Convention

TWOSITE_MINIMAL = """
[run]
model = "twosite"

[time_grid]
t_max = "4 ps"
dt = "2 fs"

[twosite]
delta = "100 rad/ps"
j = "1 rad/ps"
g = "1 rad/ps"
alpha = 100.0
"""

QUANTIZED_MINIMAL = """
[run]
model = "quantized"

[time_grid]
t_max = "3200 fs"
dt = "4 fs"

[quantized]
task = "evolve"
delta = "1 rad/ps"
j = "1 rad/ps"
g = "0.1 rad/ps"
omega = "0.01 rad/ps"
alpha = 10.0
n_max = 220
"""

ESTIMATE_MINIMAL = """
[run]
model = "estimate"

[estimate]
kind = "decoherence-ratio"
"""

SWEEP_SPREAD = """
[run]
model = "sweep"
seed = 7

[sweep]
axis = "alpha-spread"
grid = [0.0, 1.0]
samples = 8

[sweep.base]
delta = "100 rad/ps"
j = "1 rad/ps"
g = "1 rad/ps"
alpha = 100.0
"""

FMO_INLINE = """
[run]
model = "fmo"

[time_grid]
t_max = "100 fs"
dt = "10 fs"

[fmo]
shift = "mean"

[fmo.hamiltonian]
unit = "cm^-1"
site_energies = [100.0, 200.0, 300.0, 400.0, 500.0, 600.0, 700.0]
couplings = [
  [0.0, 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
  [5.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
  [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
  [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
  [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
  [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
  [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
]

[fmo.initial]
kind = "site"
site = 1
"""


class TestBasicParsing:
    def test_minimal_twosite(self):
        config = parse_config(TWOSITE_MINIMAL)
        assert config.model == "twosite"
        assert config.twosite.delta == 100.0
        assert config.twosite.alpha == 100.0
        assert config.time_grid.t_max_fs == 4000.0
        assert config.time_grid.dt_fs == 2.0

    def test_defaults_filled(self):
        config = parse_config(TWOSITE_MINIMAL)
        assert config.twosite.omega == 0.0
        assert config.twosite.convention is Convention.EFFECTIVE
        assert config.output_format == "csv"
        assert config.output_path is None
        assert config.seed is None

    def test_invalid_toml(self):
        with pytest.raises(ConfigError, match="invalid TOML"):
            parse_config("[run\nmodel=")

    def test_unknown_model(self):
        with pytest.raises(ConfigError, match="run.model"):
            parse_config('[run]\nmodel = "threesite"\n')

    def test_model_block_accessor(self):
        config = parse_config(ESTIMATE_MINIMAL)
        assert config.model_block() is config.estimate


class TestStrictness:
    def test_unknown_key_names_dotted_path(self):
        text = TWOSITE_MINIMAL + 'gamma = "1 rad/ps"\n'
        with pytest.raises(ConfigError, match="twosite.gamma"):
            parse_config(text)

    def test_unknown_run_key(self):
        text = TWOSITE_MINIMAL.replace(
            'model = "twosite"', 'model = "twosite"\nthreads = 4'
        )
        with pytest.raises(ConfigError, match="run.threads"):
            parse_config(text)

    def test_missing_required_key(self):
        text = TWOSITE_MINIMAL.replace('j = "1 rad/ps"\n', "")
        with pytest.raises(ConfigError, match="twosite.j"):
            parse_config(text)

    def test_second_model_block_rejected(self):
        text = TWOSITE_MINIMAL + '\n[estimate]\nkind = "decoherence-ratio"\n'
        with pytest.raises(ConfigError, match="exactly one model block"):
            parse_config(text)

    def test_time_grid_required_for_trajectories(self):
        text = TWOSITE_MINIMAL.replace('[time_grid]\nt_max = "4 ps"\ndt = "2 fs"\n', "")
        with pytest.raises(ConfigError, match="time_grid"):
            parse_config(text)

    def test_time_grid_rejected_for_estimate(self):
        text = ESTIMATE_MINIMAL + '\n[time_grid]\nt_max = "1 ps"\ndt = "1 fs"\n'
        with pytest.raises(ConfigError, match="not used by model"):
            parse_config(text)


class TestUnits:
    def test_bare_number_for_dimensioned_value(self):
        text = TWOSITE_MINIMAL.replace('delta = "100 rad/ps"', "delta = 100.0")
        with pytest.raises(ConfigError, match='needs a unit'):
            parse_config(text)

    def test_unit_hint_in_message(self):
        text = TWOSITE_MINIMAL.replace('delta = "100 rad/ps"', "delta = 100.0")
        with pytest.raises(ConfigError, match="rad/ps"):
            parse_config(text)

    def test_unsupported_unit(self):
        text = TWOSITE_MINIMAL.replace('delta = "100 rad/ps"', 'delta = "100 eV"')
        with pytest.raises(ConfigError, match="unsupported unit"):
            parse_config(text)

    def test_wavenumber_converted(self):
        text = TWOSITE_MINIMAL.replace('delta = "100 rad/ps"', 'delta = "1 cm^-1"')
        config = parse_config(text)
        assert config.twosite.delta == pytest.approx(WAVENUMBER_TO_RAD_PS, rel=1e-14)

    def test_string_for_dimensionless_value(self):
        text = TWOSITE_MINIMAL.replace("alpha = 100.0", 'alpha = "100"')
        with pytest.raises(ConfigError, match="bare number"):
            parse_config(text)

    def test_time_units(self):
        text = TWOSITE_MINIMAL.replace('t_max = "4 ps"', 't_max = "4000 fs"')
        assert parse_config(text).time_grid.t_max_fs == 4000.0


class TestQuantizedBlock:
    def test_parses(self):
        config = parse_config(QUANTIZED_MINIMAL)
        assert config.quantized.task == "evolve"
        assert config.quantized.n_max == 220
        assert config.quantized.phonon == "coherent"
        assert config.quantized.states == ("plus", "minus")

    def test_cutoff_defaults_from_alpha(self):
        text = QUANTIZED_MINIMAL.replace("n_max = 220\n", "")
        config = parse_config(text)
        assert config.quantized.n_max == 210  # ceil(alpha^2 + 10 alpha + 10)

    def test_bad_task(self):
        text = QUANTIZED_MINIMAL.replace('task = "evolve"', 'task = "dance"')
        with pytest.raises(ConfigError, match="quantized.task"):
            parse_config(text)

    def test_witness_states_validated(self):
        text = QUANTIZED_MINIMAL.replace(
            'task = "evolve"', 'task = "witness"\nstates = ["plus", "sideways"]'
        )
        with pytest.raises(ConfigError, match=r"states\[1\]"):
            parse_config(text)

    def test_witness_states_need_two(self):
        text = QUANTIZED_MINIMAL.replace(
            'task = "evolve"', 'task = "witness"\nstates = ["plus"]'
        )
        with pytest.raises(ConfigError, match="exactly two"):
            parse_config(text)

    def test_deviation_needs_hopping(self):
        text = QUANTIZED_MINIMAL.replace('task = "evolve"', 'task = "deviation"')
        text = text.replace('j = "1 rad/ps"', 'j = "0 rad/ps"')
        with pytest.raises(ConfigError, match="deviation"):
            parse_config(text)


class TestFmoBlock:
    def test_inline_parses(self):
        config = parse_config(FMO_INLINE)
        assert config.fmo.source is None
        assert config.fmo.site_energies[1] == 200.0
        assert config.fmo.shift == "mean"
        assert config.fmo.capture_site == 3

    def test_builtin_source(self):
        text = """
[run]
model = "fmo"
[time_grid]
t_max = "100 fs"
dt = "10 fs"
[fmo]
[fmo.hamiltonian]
source = "builtin:adolphs-renger-2006"
[fmo.initial]
kind = "uniform"
"""
        config = parse_config(text)
        assert config.fmo.source == "builtin:adolphs-renger-2006"
        assert config.fmo.shift == "mean"

    def test_six_energies_rejected_with_section(self):
        text = FMO_INLINE.replace(
            "site_energies = [100.0, 200.0, 300.0, 400.0, 500.0, 600.0, 700.0]",
            "site_energies = [100.0, 200.0, 300.0, 400.0, 500.0, 600.0]",
        )
        with pytest.raises(ConfigError, match="fmo.hamiltonian.site_energies"):
            parse_config(text)

    def test_asymmetric_couplings_rejected(self):
        text = FMO_INLINE.replace(
            "[5.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]",
            "[6.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]",
        )
        with pytest.raises(ConfigError, match="fmo.hamiltonian"):
            parse_config(text)

    def test_shift_site_number(self):
        text = FMO_INLINE.replace('shift = "mean"', "shift = 3")
        assert parse_config(text).fmo.shift == 3

    def test_shift_rejects_bad_value(self):
        text = FMO_INLINE.replace('shift = "mean"', 'shift = "median"')
        with pytest.raises(ConfigError, match="fmo.shift"):
            parse_config(text)
        text = FMO_INLINE.replace('shift = "mean"', "shift = 9")
        with pytest.raises(ConfigError, match="1..7"):
            parse_config(text)

    def test_backprop_default_t_star(self):
        text = FMO_INLINE.replace(
            'kind = "site"\nsite = 1', 'kind = "backprop"\nsite = 3'
        )
        config = parse_config(text)
        assert config.fmo.initial.t_star_fs == 220.0

    def test_explicit_amplitudes_checked(self):
        text = FMO_INLINE.replace(
            'kind = "site"\nsite = 1',
            'kind = "explicit"\namplitudes = [[1.0, 0.0]]',
        )
        with pytest.raises(ConfigError, match="7"):
            parse_config(text)


class TestSweepBlock:
    def test_parses_with_seed(self):
        config = parse_config(SWEEP_SPREAD)
        assert config.sweep.axis is SweepAxis.ALPHA_SPREAD
        assert config.sweep.grid == (0.0, 1.0)
        assert config.sweep.samples == 8
        assert config.seed == 7

    def test_spread_requires_seed(self):
        text = SWEEP_SPREAD.replace("seed = 7\n", "")
        with pytest.raises(ConfigError, match="run.seed"):
            parse_config(text)

    def test_seed_override_satisfies_requirement(self):
        text = SWEEP_SPREAD.replace("seed = 7\n", "")
        config = parse_config(text, seed_override=99)
        assert config.seed == 99

    def test_seed_override_out_of_range(self):
        with pytest.raises(ConfigError, match="64-bit"):
            parse_config(SWEEP_SPREAD, seed_override=2**64)

    def test_detuning_grid_needs_units(self):
        text = SWEEP_SPREAD.replace('axis = "alpha-spread"', 'axis = "detuning-error"')
        with pytest.raises(ConfigError, match=r"grid\[0\]"):
            parse_config(text)

    def test_detuning_grid_with_units(self):
        text = SWEEP_SPREAD.replace(
            'axis = "alpha-spread"', 'axis = "detuning-error"'
        ).replace('grid = [0.0, 1.0]', 'grid = ["0 rad/ps", "0.2 rad/ps"]')
        config = parse_config(text)
        assert config.sweep.grid == (0.0, 0.2)

    def test_negative_spread_rejected(self):
        text = SWEEP_SPREAD.replace("grid = [0.0, 1.0]", "grid = [-1.0, 0.0]")
        with pytest.raises(ConfigError, match=">= 0"):
            parse_config(text)

    def test_base_must_be_resonant(self):
        text = SWEEP_SPREAD.replace("alpha = 100.0", "alpha = 99.0")
        with pytest.raises(ConfigError, match="resonance"):
            parse_config(text)


class TestEstimateBlock:
    def test_defaults_materialized(self):
        config = parse_config(ESTIMATE_MINIMAL)
        assert config.estimate.mass_kg == 2.0e-21
        assert config.estimate.coherence_length_m == 2.0e-9
        assert config.estimate.temperature_k == 300.0

    def test_flux_defaults(self):
        text = ESTIMATE_MINIMAL.replace("decoherence-ratio", "alpha-from-flux")
        config = parse_config(text)
        assert config.estimate.flux_w_m2 == 100.0
        assert config.estimate.area_m2 == 1.0e-18
        assert config.estimate.duration_s == 1.0e-12
        assert config.estimate.phonon_energy_j == 1.0e-32

    def test_length_unit_nm(self):
        text = ESTIMATE_MINIMAL + 'coherence_length = "2 nm"\n'
        assert parse_config(text).estimate.coherence_length_m == pytest.approx(2e-9)

    def test_nonpositive_rejected(self):
        text = ESTIMATE_MINIMAL + 'temperature = "0 K"\n'
        with pytest.raises(ConfigError, match="estimate.temperature"):
            parse_config(text)


class TestSerialization:
    @pytest.fixture(
        params=[TWOSITE_MINIMAL, QUANTIZED_MINIMAL, ESTIMATE_MINIMAL,
                SWEEP_SPREAD, FMO_INLINE],
        ids=["twosite", "quantized", "estimate", "sweep", "fmo-inline"],
    )
    def config(self, request):
        return parse_config(request.param)

    def test_roundtrip_identity(self, config):
        assert parse_config(serialize_config(config)) == config

    def test_serialization_idempotent(self, config):
        once = serialize_config(config)
        assert serialize_config(parse_config(once)) == once

    def test_shipped_configs_roundtrip(self, shipped_configs):
        for path in shipped_configs:
            config = parse_config_file(path)
            assert parse_config(serialize_config(config)) == config, path.name


class TestHash:
    def test_stable(self):
        a = config_sha256(parse_config(TWOSITE_MINIMAL))
        b = config_sha256(parse_config(TWOSITE_MINIMAL))
        assert a == b
        assert len(a) == 64

    def test_ignores_output_destination(self):
        base = parse_config(TWOSITE_MINIMAL)
        moved = dataclasses.replace(base, output_path="elsewhere/result.csv")
        assert config_sha256(base) == config_sha256(moved)

    def test_sensitive_to_parameters(self):
        base = parse_config(TWOSITE_MINIMAL)
        bumped = parse_config(TWOSITE_MINIMAL.replace("alpha = 100.0", "alpha = 99.0"))
        assert config_sha256(base) != config_sha256(bumped)

    def test_sensitive_to_format(self):
        base = parse_config(TWOSITE_MINIMAL)
        json_out = dataclasses.replace(base, output_format="json")
        assert config_sha256(base) != config_sha256(json_out)
