import re

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

_CRITERIA: dict[str, str] = {}


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion."""
    def record(label: str, passed: bool, note: str = "") -> None:
        line = f"{label}: {'PASS' if passed else 'FAIL'}" + (f" ({note})" if note else "")
        _CRITERIA[label] = line
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    def order(label):
        m = re.search(r"(\d+)(\w*)", label)
        return (int(m.group(1)), m.group(2)) if m else (0, label)
    for label in sorted(_CRITERIA, key=order):
        terminalreporter.write_line(_CRITERIA[label])
