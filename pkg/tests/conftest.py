"""Shared pytest plumbing: collects acceptance-criterion verdicts and
prints one line per criterion at the end of the run."""

import pytest

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def acceptance_record():
    """Callable (criterion, passed, detail) -> None used by the
    acceptance tests to register their verdict before asserting."""
    def record(criterion, passed, detail):
        _ACCEPTANCE.append((str(criterion), bool(passed), detail))
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    def key(item):
        digits = "".join(ch for ch in item[0] if ch.isdigit())
        return (int(digits) if digits else 0, item[0])
    for crit, passed, detail in sorted(_ACCEPTANCE, key=key):
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(
            f"ACCEPTANCE criterion {crit}: {verdict} - {detail}")
