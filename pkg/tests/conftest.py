import corpus


def pytest_terminal_summary(terminalreporter):
    if corpus.ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(corpus.ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
