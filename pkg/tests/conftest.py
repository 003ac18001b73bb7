import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"

_acceptance_lines: list[str] = []


def record_criterion(label: str, passed: bool, detail: str = "") -> None:
    _acceptance_lines.append(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}".rstrip())


@pytest.fixture
def record():
    return record_criterion


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def write_csv(tmp_path):
    def _write(text: str, schema: str, name: str = "d"):
        p = tmp_path / f"{name}.csv"
        p.write_text(text)
        (tmp_path / f"{name}.schema").write_text(schema)
        return p
    return _write
