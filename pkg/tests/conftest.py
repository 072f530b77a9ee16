"""Shared fixtures plus the acceptance-summary reporter.

Each acceptance test records a one-line verdict through ``record_criterion``;
after the run pytest prints the collected lines in a dedicated terminal
section so the ten headline checks can be read off at a glance.
"""

from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
CONFIG_DIR = REPO_ROOT / "configs"

_criterion_lines = []


def record_criterion(number: int, passed: bool, detail: str) -> None:
    """Store one acceptance verdict; printed in the terminal summary."""
    verdict = "PASS" if passed else "FAIL"
    _criterion_lines.append((number, f"criterion {number:2d}: {verdict}  {detail}"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criterion_lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_criterion_lines):
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def config_dir() -> Path:
    return CONFIG_DIR


@pytest.fixture(scope="session")
def shipped_configs() -> list:
    paths = sorted(CONFIG_DIR.glob("*.toml"))
    assert paths, f"no shipped configs found under {CONFIG_DIR}"
    return paths
