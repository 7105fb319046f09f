from __future__ import annotations

import functools

import pytest
from hypothesis import HealthCheck, settings

from fss.algebra import build_algebra
from fss.decomposition import decompose
from fss.fixtures import fixture

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SOUNDNESS_FIXTURES = ["c6", "s3", "s4", "d8", "q8", "gf101-0", "gf101-1", "gf101-2"]
ALL_FIXTURES = SOUNDNESS_FIXTURES + ["d8-plane", "ut2", "ut3"]


@functools.lru_cache(maxsize=None)
def algebra_for(name: str):
    return build_algebra(fixture(name))


@functools.lru_cache(maxsize=None)
def decomposition_for(name: str, seed: int = 0):
    return decompose(algebra_for(name), seed=seed)


@pytest.fixture
def d8():
    return decomposition_for("d8-plane")


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
