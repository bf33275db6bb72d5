from __future__ import annotations

import random
import sys

import pytest


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240611, help="seed for the random draws")


@pytest.fixture
def rng(request) -> random.Random:
    return random.Random(request.config.getoption("--seed"))



def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod._line(num))
