import pytest

_RESULTS = []


class _Recorder:
    def __call__(self, number, ok, detail):
        _RESULTS.append((number, bool(ok), detail))
        return ok


@pytest.fixture
def record():
    """Collect one pass/fail line per acceptance criterion."""
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(_RESULTS):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
