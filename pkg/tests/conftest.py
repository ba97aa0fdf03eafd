import os

import pytest
from hypothesis import settings

from tempbranch import CnfFormula, TemporalDigraph, reduce_nae3sat_vertex

settings.register_profile("ci", max_examples=60, deadline=None)
settings.register_profile("thorough", max_examples=1000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

NAE_EXAMPLE = CnfFormula(4, [(1, 2, 3), (2, 3, 4)])


def tdg(gamma, edges, lam):
    """Shorthand: vertices from gamma order, edges as (eid, tail, head)."""
    return TemporalDigraph(list(gamma), edges, gamma, lam)


@pytest.fixture
def nae_example():
    return reduce_nae3sat_vertex(NAE_EXAMPLE)


ACCEPTANCE = []


def record(number, ok, detail):
    """Store one acceptance verdict line; printed in the terminal summary."""
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE.append(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
