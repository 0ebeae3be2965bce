import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

import pytest

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def acceptance_report():
    """Callable recording one line per acceptance criterion, echoed in the terminal summary."""

    def record(number, passed, detail, seconds):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}  [{seconds:.2f} s]"
        _ACCEPTANCE.append((number, line))
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE, key=lambda t: t[0]):
        terminalreporter.write_line(line)
