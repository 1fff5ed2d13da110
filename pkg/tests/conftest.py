import sys


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(k for k in module.RESULTS if isinstance(k, int)):
        terminalreporter.write_line(module.RESULTS[key])
