import pytest
from hypothesis import settings

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


class AcceptanceLog:
    """Collects one PASS/FAIL line per acceptance criterion for the
    terminal summary, so the verdicts are visible in one block even when a
    criterion's test fails part-way."""

    def __init__(self):
        self.lines = {}

    def note(self, cid, ok, detail):
        self.lines[cid] = (bool(ok), detail)


_LOG = AcceptanceLog()


@pytest.fixture(scope="session")
def acceptance_log():
    return _LOG


def pytest_terminal_summary(terminalreporter):
    if not _LOG.lines:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_LOG.lines):
        ok, detail = _LOG.lines[cid]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{cid}] {verdict} - {detail}")


@pytest.fixture(scope="session")
def city_csv(tmp_path_factory):
    from datasets import write_city_csv

    return write_city_csv(tmp_path_factory.mktemp("city") / "city_aps.csv")


@pytest.fixture(scope="session")
def campus_csv(tmp_path_factory):
    from datasets import write_campus_csv

    return write_campus_csv(tmp_path_factory.mktemp("campus") / "campus_aps.csv")
