import math

import pytest
from hypothesis import HealthCheck, settings

from unruhbalance import PhysicalParams

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def natural():
    return PhysicalParams()


@pytest.fixture
def damped():
    """Natural units with zeta = 0.3 (used by most flux and response checks)."""
    return PhysicalParams().with_zeta(0.3)


@pytest.fixture
def unruh_kT():
    return 1 / (2 * math.pi)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_report():
    """Record one summary line per acceptance criterion; printed at session end."""

    def record(number: int, title: str, passed: bool, detail: str) -> None:
        line = f"{'PASS' if passed else 'FAIL'} criterion {number:>2}: {title}: {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
