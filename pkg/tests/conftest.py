import sys


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance._RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid in acceptance.CRITERIA:
        if cid in acceptance._RESULTS:
            terminalreporter.write_line(acceptance.summary_line(cid))
