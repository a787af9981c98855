import pytest

from wallguard import (
    StopList,
    bundled_corpus_path,
    default_stoplist_path,
    load_corpus,
)


@pytest.fixture(scope="session")
def stops():
    return StopList.from_path(default_stoplist_path())


@pytest.fixture(scope="session")
def sample_corpus():
    return load_corpus(bundled_corpus_path())


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if "test_acceptance" in report.nodeid and report.when == "call":
                rows.append((report.nodeid.split("::")[-1], report.passed))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed in sorted(rows):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}")
