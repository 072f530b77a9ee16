"""End-to-end tests of the command-line interface and file emission."""

import dataclasses
import json
import re
import subprocess
import sys

import pytest

from vibrex import __version__
from vibrex.cli import build_parser, main, run
from vibrex.config import config_sha256, parse_config

TWOSITE_TEXT = """
[run]
model = "twosite"

[time_grid]
t_max = "100 fs"
dt = "10 fs"

[twosite]
delta = "2 rad/ps"
j = "1 rad/ps"
g = "1 rad/ps"
alpha = 1.0
"""

SWEEP_TEXT = """
[run]
model = "sweep"

[sweep]
axis = "alpha-spread"
grid = [0.0, 1.0]
samples = 16

[sweep.base]
delta = "10 rad/ps"
j = "1 rad/ps"
g = "1 rad/ps"
alpha = 10.0
"""

BACKPROP_TEXT = """
[run]
model = "fmo"

[time_grid]
t_max = "400 fs"
dt = "1 fs"

[fmo]
shift = "mean"

[fmo.hamiltonian]
source = "builtin:adolphs-renger-2006"

[fmo.initial]
kind = "backprop"
site = 3
t_star = "220 fs"
"""

CELL = r"-?\d\.\d{12}e[+-]\d{2,3}"


@pytest.fixture
def twosite_file(tmp_path):
    path = tmp_path / "twosite.toml"
    path.write_text(TWOSITE_TEXT)
    return path


class TestRunApi:
    def test_report_fields(self):
        config = parse_config(TWOSITE_TEXT)
        report = run(config)
        assert report.config_sha256 == config_sha256(config)
        assert report.output_path is None
        assert report.wall_seconds > 0.0
        assert set(report.metrics) == {"peak_probability", "peak_time_ps"}
        assert report.metrics["peak_probability"] == pytest.approx(0.5, abs=1e-12)

    def test_echo_parses_back(self):
        config = parse_config(TWOSITE_TEXT)
        report = run(config)
        assert parse_config(report.config_echo) == config

    def test_csv_layout(self, tmp_path):
        out = tmp_path / "t.csv"
        config = dataclasses.replace(
            parse_config(TWOSITE_TEXT), output_path=str(out)
        )
        run(config)
        lines = out.read_text().splitlines()
        assert lines[0] == (
            f"# vibrex {__version__} config-sha256={config_sha256(config)}"
        )
        assert lines[1] == "t_fs,p_d,p_a"
        assert len(lines) == 2 + 11
        assert re.fullmatch(f"{CELL},{CELL},{CELL}", lines[2])

    def test_json_layout(self, tmp_path):
        out = tmp_path / "t.json"
        config = dataclasses.replace(
            parse_config(TWOSITE_TEXT), output_path=str(out), output_format="json"
        )
        run(config)
        payload = json.loads(out.read_text())
        assert payload["tool"] == "vibrex"
        assert payload["version"] == __version__
        assert payload["config_sha256"] == config_sha256(config)
        assert payload["model"] == "twosite"
        assert set(payload["columns"]) == {"t_fs", "p_d", "p_a"}
        assert len(payload["columns"]["t_fs"]) == 11
        assert payload["metrics"]["peak_probability"] == pytest.approx(0.5)

    def test_identical_config_identical_bytes(self, tmp_path):
        blobs = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            config = dataclasses.replace(
                parse_config(TWOSITE_TEXT), output_path=str(out)
            )
            run(config)
            blobs.append(out.read_bytes())
        assert blobs[0] == blobs[1]


class TestMain:
    def test_run_prints_report(self, twosite_file, capsys):
        assert main(["twosite", "--config", str(twosite_file)]) == 0
        out = capsys.readouterr().out
        assert out.startswith(f"# vibrex {__version__}")
        assert "# config sha256: " in out
        assert "peak_probability" in out
        assert "# wall clock:" in out

    def test_quiet_suppresses_report(self, twosite_file, capsys):
        assert main(["twosite", "--config", str(twosite_file), "--quiet"]) == 0
        assert capsys.readouterr().out == ""

    def test_validate_echoes_and_confirms(self, twosite_file, capsys):
        assert main(["validate", "--config", str(twosite_file)]) == 0
        out = capsys.readouterr().out
        assert '[run]\nmodel = "twosite"' in out
        assert 'omega = "0.0 rad/ps"' in out  # defaults materialized
        assert out.rstrip().endswith("ok")

    def test_validate_works_for_any_model(self, tmp_path, capsys):
        path = tmp_path / "sweep.toml"
        path.write_text(SWEEP_TEXT.replace('model = "sweep"', 'model = "sweep"\nseed = 3'))
        assert main(["validate", "--config", str(path)]) == 0
        assert capsys.readouterr().out.rstrip().endswith("ok")

    def test_model_mismatch_fails(self, twosite_file, capsys):
        assert main(["fmo", "--config", str(twosite_file)]) == 1
        err = capsys.readouterr().err
        assert err.startswith("error: run.model")

    def test_missing_file_fails(self, tmp_path, capsys):
        assert main(["twosite", "--config", str(tmp_path / "nope.toml")]) == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_config_error_reported(self, tmp_path, capsys):
        path = tmp_path / "bad.toml"
        path.write_text(TWOSITE_TEXT.replace('alpha = 1.0', 'alpha = "1.0"'))
        assert main(["twosite", "--config", str(path)]) == 1
        assert "twosite.alpha" in capsys.readouterr().err

    def test_out_and_format_overrides(self, twosite_file, tmp_path, capsys):
        out = tmp_path / "result.json"
        code = main([
            "twosite", "--config", str(twosite_file),
            "--out", str(out), "--format", "json", "--quiet",
        ])
        assert code == 0
        assert json.loads(out.read_text())["model"] == "twosite"

    def test_seed_override_enables_spread_sweep(self, tmp_path, capsys):
        path = tmp_path / "sweep.toml"
        path.write_text(SWEEP_TEXT)
        # without a seed the config is invalid for this axis
        assert main(["sweep", "--config", str(path)]) == 1
        assert "run.seed" in capsys.readouterr().err
        assert main(["sweep", "--config", str(path), "--seed", "5", "--quiet"]) == 0

    def test_seed_override_changes_hash(self, tmp_path, capsys):
        path = tmp_path / "sweep.toml"
        path.write_text(SWEEP_TEXT)
        digests = []
        for seed in ("5", "6"):
            main(["sweep", "--config", str(path), "--seed", seed])
            out = capsys.readouterr().out
            digests.append(re.search(r"config sha256: (\w{64})", out).group(1))
        assert digests[0] != digests[1]

    def test_backprop_trajectory_capture(self, tmp_path, capsys):
        path = tmp_path / "backprop.toml"
        path.write_text(BACKPROP_TEXT)
        out = tmp_path / "backprop.csv"
        code = main(["fmo", "--config", str(path), "--out", str(out), "--quiet"])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[1].split(",")[:4] == ["t_fs", "p1", "p2", "p3"]
        row = next(
            line for line in lines[2:]
            if float(line.split(",")[0]) == 220.0
        )
        assert float(row.split(",")[3]) >= 0.9999


class TestParser:
    def test_subcommands_present(self):
        parser = build_parser()
        text = parser.format_help()
        for name in ("twosite", "quantized", "fmo", "sweep", "estimate", "validate"):
            assert name in text

    def test_config_required(self, capsys):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["twosite"])

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as info:
            build_parser().parse_args(["--version"])
        assert info.value.code == 0
        assert __version__ in capsys.readouterr().out


class TestSubprocess:
    """The installed entry point, exercised exactly as a user would."""

    def test_module_invocation(self, twosite_file, tmp_path):
        out = tmp_path / "cli.csv"
        proc = subprocess.run(
            [sys.executable, "-m", "vibrex", "twosite",
             "--config", str(twosite_file), "--out", str(out)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        assert "peak_probability" in proc.stdout
        assert out.read_text().startswith("# vibrex")

    def test_error_exit_code(self, tmp_path):
        proc = subprocess.run(
            [sys.executable, "-m", "vibrex", "twosite",
             "--config", str(tmp_path / "missing.toml")],
            capture_output=True, text=True,
        )
        assert proc.returncode == 1
        assert proc.stderr.startswith("error:")
