"""Shared pytest hooks.

Tests named test_criterion_* are the acceptance checks; this prints a
one-line verdict for each of them at the end of the run so the overall
state is readable at a glance.
"""

_criterion_outcomes: dict[str, str] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call":
        _criterion_outcomes[name] = report.outcome
    elif report.when == "setup" and report.outcome != "passed":
        _criterion_outcomes[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _criterion_outcomes:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name in sorted(_criterion_outcomes):
        label = name.removeprefix("test_criterion_").replace("_", " ")
        verdict = "PASS" if _criterion_outcomes[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"  {verdict}  {label}")
