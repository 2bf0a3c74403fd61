import re

import pytest

from helpers import build_toy_project

CRITERIA = {
    "1": "orthogonal map recovery within 1e-6, under 1 s",
    "2": "monolingual cosine invariance within 1e-6",
    "3": "detector matches brute-force oracle on randomized instances",
    "4": "average-linkage fixture heights and byte-exact tree text",
    "5": "confusion counts (3,4,1,2) render 70.00 / 75.00 / 60.00",
    "6": "property suites",
    "7": "full-scale Romance similarity means",
    "8": "full-scale curated es-pt evaluation",
    "9": "full-scale prix/prez verdict and correction",
}


@pytest.fixture()
def toy_project(tmp_path):
    return build_toy_project(tmp_path)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    groups: dict[str, set[str]] = {}
    for outcome in ("passed", "failed", "error", "skipped"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            if outcome in ("passed", "failed") and getattr(rep, "when", "call") != "call":
                continue
            match = re.search(r"test_c(\d+)", nodeid)
            if match:
                groups.setdefault(match.group(1), set()).add(outcome)
    if not groups:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(groups, key=int):
        outcomes = groups[num]
        if outcomes == {"skipped"}:
            status = "SKIP"
        elif outcomes <= {"passed", "skipped"}:
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(
            f"criterion {num}: {status} - {CRITERIA.get(num, '')}"
        )
