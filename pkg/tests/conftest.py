"""Test-suite wiring: path setup and the acceptance-criteria summary."""

import functools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_RESULTS: list[str] = []


def criterion(number: int, label: str):
    """Record and print a pass/fail line for one acceptance criterion."""

    def decorate(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                detail = func(*args, **kwargs)
            except BaseException as exc:
                line = f"ACCEPTANCE {number} [{label}]: FAIL ({type(exc).__name__})"
                ACCEPTANCE_RESULTS.append(line)
                print(line)
                raise
            line = f"ACCEPTANCE {number} [{label}]: PASS" + (f" ({detail})" if detail else "")
            ACCEPTANCE_RESULTS.append(line)
            print(line)

        return wrapper

    return decorate


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_RESULTS):
            terminalreporter.write_line(line)
