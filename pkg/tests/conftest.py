import pytest

from eitsqueeze.params import default_paper_params, updated

ACCEPTANCE_LINES = []


@pytest.fixture
def base():
    return default_paper_params()


@pytest.fixture
def vacuum(base):
    return updated(base, kappa=0.0)


@pytest.fixture
def report_criterion():
    """Record a pass/fail line for the acceptance summary."""

    def record(number, name, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {name} -- {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
