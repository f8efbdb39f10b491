import os
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: dict[int, str] = {}


@lru_cache(maxsize=None)
def cached_code(n, d, rankable=False):
    from rankmod.lmrm import CodeParams, construct

    return construct(CodeParams(n, d, rankable))


@pytest.fixture(scope="session")
def code63():
    return cached_code(6, 3)


@pytest.fixture(scope="session")
def code84():
    return cached_code(8, 4, True)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
