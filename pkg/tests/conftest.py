import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def p2q_atlas():
    """AtlasReport for every ordered pair of distinct primes with p^2 q <= 20000."""
    from oracles import p2q_pairs
    from cyclodiv.analysis import build_atlas
    return {pq: build_atlas(*pq) for pq in p2q_pairs(20000)}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
