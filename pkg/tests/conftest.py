"""Prints the acceptance-criteria table after the run."""

import acceptance_log


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance_log.RESULTS:
        terminalreporter.write_line(line)
