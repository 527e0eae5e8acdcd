import _criteria


def pytest_terminal_summary(terminalreporter):
    if not _criteria.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in _criteria.lines():
        terminalreporter.write_line(line)
