import time

import pytest

from ssvep_duty.protocol import DEFAULT_SEED, reproduce


@pytest.fixture(scope="session")
def reproduction(tmp_path_factory):
    """One default-seed end-to-end run shared by the slow tests."""
    out = tmp_path_factory.mktemp("repro") / "run"
    t0 = time.perf_counter()
    bundle = reproduce(DEFAULT_SEED, out)
    return bundle, out, time.perf_counter() - t0


ACCEPTANCE_LINES = []


def record_criterion(number, name, ok, detail=""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name}"
                            + (f" -- {detail}" if detail else ""))
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
