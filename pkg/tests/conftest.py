import re

from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

_ACCEPTANCE = "test_acceptance.py"
_titles = {}
_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: one of the numbered acceptance criteria")


def pytest_collection_modifyitems(items):
    for item in items:
        if _ACCEPTANCE in item.nodeid:
            doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
            _titles[item.nodeid] = doc


def pytest_runtest_logreport(report):
    if report.nodeid not in _titles:
        return
    if report.when == "call" or report.failed or report.skipped:
        prev = _outcomes.get(report.nodeid, "passed")
        _outcomes[report.nodeid] = report.outcome if prev == "passed" else prev


def _criterion(title):
    m = re.match(r"(\d+)\s+(.*)", title)
    return (int(m.group(1)), m.group(2)) if m else (0, title)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    # group parametrized cases and sub-tests under their criterion number
    by_number = {}
    for nodeid, outcome in _outcomes.items():
        number, text = _criterion(_titles[nodeid])
        entry = by_number.setdefault(number, {"texts": [], "ok": True})
        if text not in entry["texts"]:
            entry["texts"].append(text)
        entry["ok"] = entry["ok"] and outcome == "passed"
    terminalreporter.section("acceptance criteria")
    for number in sorted(by_number):
        entry = by_number[number]
        status = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {'; '.join(entry['texts'])}")
    passed = sum(e["ok"] for e in by_number.values())
    terminalreporter.write_line(f"{passed}/{len(by_number)} criteria passed")

