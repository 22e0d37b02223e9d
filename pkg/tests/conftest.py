from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from regdev.panel import DEFAULT_INDICATORS, write_spec  # noqa: E402
from regdev.synthetic import make_panel  # noqa: E402


@pytest.fixture
def spec_file(tmp_path):
    path = tmp_path / "spec.csv"
    write_spec(DEFAULT_INDICATORS, path)
    return path


@pytest.fixture
def small_panel():
    return make_panel(n_regions=20, years=(2018, 2019, 2020), seed=3)


@pytest.fixture
def panel_files(tmp_path, spec_file, small_panel):
    from regdev.panel import write_panel

    data = tmp_path / "data.csv"
    write_panel(small_panel, data)
    return data, spec_file


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
