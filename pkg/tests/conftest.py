from collections import defaultdict

import pytest
from hypothesis import settings

# exact arithmetic makes single examples slow on loaded machines
settings.register_profile("default", deadline=None)
settings.load_profile("default")

_CRITERIA = defaultdict(list)


@pytest.fixture
def criterion(request):
    """``criterion(i, ok, detail)`` records one check towards acceptance criterion ``i``."""

    def record(i, ok, detail=""):
        _CRITERIA[i].append((bool(ok), detail))
        print(f"criterion {i}: {'PASS' if ok else 'FAIL'} {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(_CRITERIA):
        checks = _CRITERIA[i]
        failed = [d for ok, d in checks if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {i}: {status} ({len(checks) - len(failed)}/{len(checks)} checks)"
        if failed:
            line += "; failing: " + "; ".join(failed)
        terminalreporter.write_line(line)
