"""Collect acceptance outcomes and print one PASS/FAIL line per criterion."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

CRITERIA = {
    1: "bracket tables reproduce exactly",
    2: "coboundary tables match golden transcriptions",
    3: "cohomology dimensions and z+b accounting",
    4: "miniversal deformations with injected bases",
    5: "d1 deformation properties",
    6: "classification of canonical forms and random transforms",
    7: "codifferential test agrees with the Jacobi oracle",
    8: "structural invariants",
}

_outcomes: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): test belongs to acceptance criterion n")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or report.outcome != "passed":
        if hasattr(report, "wasxfail"):
            outcome = "xfail"
        else:
            outcome = report.outcome
        if report.when == "call" or outcome in ("failed", "skipped"):
            _outcomes.setdefault(crit, []).append((report.nodeid.split("::")[-1], outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        results = _outcomes.get(n)
        if not results:
            continue
        bad = [name for name, outcome in results if outcome != "passed"]
        status = "FAIL" if bad else "PASS"
        line = f"{status} criterion {n}: {title}"
        if bad:
            line += " (failing: " + ", ".join(bad) + ")"
        terminalreporter.write_line(line)
