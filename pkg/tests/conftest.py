import pytest

_ACCEPTANCE: dict[int, tuple[str, bool, float, float]] = {}


@pytest.fixture
def record():
    """Store one acceptance outcome; printed in the terminal summary."""

    def _record(number: int, name: str, metric: float, tolerance: float, ok: bool) -> None:
        _ACCEPTANCE[number] = (name, ok, metric, tolerance)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        name, ok, metric, tolerance = _ACCEPTANCE[number]
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'}  {number:2d}. {name:<28} metric={metric:.3e}  tolerance={tolerance:.1e}"
        )
