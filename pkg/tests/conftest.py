from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from srgkit.fixtures import fixture

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SRG_FIXTURES = ["petersen", "rook4", "shrikhande", "clebsch", "c5", "paley13", "paley9"]


@pytest.fixture(scope="session")
def graphs():
    return {name: fixture(name) for name in SRG_FIXTURES}


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        ok, title, secs, detail = RESULTS[num]
        status = {True: "PASS", False: "FAIL", None: "PARTIAL"}[ok]
        terminalreporter.write_line(f"criterion {num:>2}: {status}  {title} ({secs:.2f}s){'  ' + detail if detail else ''}")
