import pytest


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for the acceptance summary."""
    lines = request.config.stash.setdefault(_KEY, [])

    def record(label: str, ok: bool, detail: str = "") -> bool:
        lines.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  [{detail}]" if detail else ""))
        return ok

    return record


_KEY = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
