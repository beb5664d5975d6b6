"""Shared pytest wiring for the suite.

The acceptance tests append one verdict line per criterion to
ACCEPTANCE_VERDICTS; printing them in the terminal summary keeps the
sign-off sheet visible even though pytest captures ordinary stdout.
"""

ACCEPTANCE_VERDICTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_VERDICTS:
        return
    terminalreporter.write_sep("-", "acceptance verdicts")
    for line in ACCEPTANCE_VERDICTS:
        terminalreporter.write_line(line)
