import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

import wrapframe
from wrapframe.avl import parse
from wrapframe.core import load

FIXTURES = Path(wrapframe.__file__).parent / "fixtures"

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=1000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def model(name: str):
    return load(FIXTURES / name)


def formula(name: str):
    return parse((FIXTURES / name).read_text())


@pytest.fixture
def fx():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE

    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
