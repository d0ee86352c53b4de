from pathlib import Path

import pytest

from diagonal_structures.groups import load_group

DATA = Path(__file__).resolve().parents[1] / "src" / "diagonal_structures" / "data"

_criteria: dict = {}


def bundled_group(name):
    return load_group(DATA / "groups" / f"{name}.group", name=name)


@pytest.fixture
def data_dir():
    return DATA


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1].split("[")[0]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.outcome != "passed":
        _, _, number, *words = name.split("_")
        entry = _criteria.setdefault(int(number), {"label": " ".join(words), "cases": 0, "failed": 0})
        entry["cases"] += 1
        entry["failed"] += report.outcome != "passed"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        e = _criteria[number]
        verdict = "FAIL" if e["failed"] else "PASS"
        cases = f" ({e['cases']} cases)" if e["cases"] > 1 else ""
        terminalreporter.write_line(f"criterion {number:>2} {verdict}  {e['label']}{cases}")
