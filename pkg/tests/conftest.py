import pytest

ACCEPTANCE_RESULTS: dict[int, tuple[str, bool]] = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion under its number."""
    number, title = request.node.get_closest_marker("criterion").args

    class Recorder:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            ACCEPTANCE_RESULTS[number] = (title, exc_type is None)
            return False

    return Recorder()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, ok = ACCEPTANCE_RESULTS[number]
        terminalreporter.line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
