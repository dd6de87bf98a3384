from pathlib import Path

import pytest

from softcommittee.model import validate_instance

DATA = Path(__file__).parent / "data"

# filled in by test_acceptance.py, printed at the end of the run
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def make_example_instance(quotas=(0, 1, 2, 1), k=2):
    return validate_instance(
        candidates=["c1", "c2", "c3", "c4"],
        priority_tiers=[["c1"], ["c2"], ["c3"], ["c4"]],
        types=["t1", "t2", "t3", "t4"],
        membership=[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 1, 1, 0]],
        lower_quotas=list(quotas),
        committee_size=k,
    )


@pytest.fixture
def example():
    return make_example_instance()


@pytest.fixture
def example_zero():
    return make_example_instance(quotas=(0, 0, 0, 0))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        desc, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {desc}")
