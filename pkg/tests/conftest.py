import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from carcass.graphcore import read_graph_file

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "carcass" / "fixtures"


def load(name):
    return read_graph_file(FIXTURES / f"{name}.graph")


@pytest.fixture
def fixture_graph():
    return load


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
