"""Shared fixtures and the per-criterion acceptance summary."""

from __future__ import annotations

import functools
from collections import defaultdict

import pytest
from hypothesis import HealthCheck, settings

from artifact import BranchOracle, analyze, parse_poly
from artifact.selftest import SEXTIC, SEXTIC_SHIFTED

settings.register_profile(
    "artifact",
    derandomize=True,
    max_examples=50,
    database=None,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("artifact")

_outcomes: dict[int, list[bool]] = defaultdict(list)


@functools.lru_cache(maxsize=None)
def oracle_for(p: int, text: str, branch: int = 0) -> BranchOracle:
    return BranchOracle(p, parse_poly(text), branch)


@functools.lru_cache(maxsize=None)
def report_for(p: int, text: str, branch: int = 0, depth: int = 8):
    return analyze(oracle_for(p, text, branch), immediate_depth=depth)


FIXTURES = {
    "two_adic": (2, SEXTIC, 8),
    "three_adic": (3, SEXTIC, 8),
    "five_adic": (5, SEXTIC, 5),
    "shifted": (2, SEXTIC_SHIFTED, 8),
}


@pytest.fixture(params=sorted(FIXTURES))
def fixture_report(request):
    p, text, depth = FIXTURES[request.param]
    return report_for(p, text, 0, depth)


def pytest_runtest_logreport(report):
    marker = dict(report.user_properties).get("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes[marker].append(report.outcome == "passed")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", m.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        verdict = "PASS" if all(_outcomes[n]) else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE criterion {n}: {verdict}")
