from __future__ import annotations

import pytest

from pmelab.density import power_density
from pmelab.feasibility import (ProblemExponents, barrier_from_report, feasible_critical_blowup,
                                feasible_critical_global, feasible_fast_blowup,
                                feasible_fast_global, feasible_slow)


def _build():
    E = ProblemExponents
    cases = {
        "fast-super": (feasible_fast_global, 2, 3, 3),
        "fast-sub-pgtm": (feasible_fast_blowup, 2, 3, 3),
        "fast-sub-pltm": (feasible_fast_blowup, 3, 2, 3),
        "critical-super": (feasible_critical_global, 2, 3, 2),
        "critical-sub": (feasible_critical_blowup, 2, 3, 2),
        "slow-super": (feasible_slow, 2, 3, 1),
    }
    out = {}
    for name, (fn, m, p, q) in cases.items():
        density = power_density(1.0, q)
        report = fn(E(m, p), density)
        out[name] = (barrier_from_report(report), density, report)
    return out


FEASIBLE = _build()


@pytest.fixture(params=sorted(FEASIBLE))
def family(request):
    """(barrier, density, report) for each barrier family with feasible parameters."""
    return FEASIBLE[request.param]


def pytest_terminal_summary(terminalreporter):
    """Print the acceptance lines collected by test_acceptance."""
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[n])
