from __future__ import annotations

import sys
from functools import lru_cache

import pytest

from msrcodes.construct_r2 import build_r2
from msrcodes.construct_r3 import build_r3
from msrcodes.construct_r3plus import build_r3plus
from msrcodes.gf import field_of_order
from msrcodes.msr import CodeSpec

BUILDERS = {"r2": build_r2, "r3": build_r3, "r3plus": build_r3plus}


@lru_cache(maxsize=None)
def built(kind: str, m: int, q: int):
    """Certified (A, S)-set, cached across the whole session."""
    return BUILDERS[kind](m, field_of_order(q))


@lru_cache(maxsize=None)
def code(kind: str, m: int, q: int) -> CodeSpec:
    return CodeSpec(built(kind, m, q))


@pytest.fixture
def get_set():
    return built


@pytest.fixture
def get_code():
    return code


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
