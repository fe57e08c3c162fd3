from __future__ import annotations

import pytest

from bistellar.certify import certify_A26, certify_A50, certify_perturbed, local_product_structure
from bistellar.constructions import build_repaired_A26


@pytest.fixture(scope="session")
def a50_report():
    return certify_A50()


@pytest.fixture(scope="session")
def a26_report():
    return certify_A26()


@pytest.fixture(scope="session")
def a26_repaired_report():
    return certify_A26(build_repaired_A26())


@pytest.fixture(scope="session")
def perturbed_reports():
    return {cid: certify_perturbed(cid) for cid in ("A50", "A26", "A26_REPAIRED")}


@pytest.fixture(scope="session")
def local_product():
    return local_product_structure()


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: dict[int, str] = {}


def record_criterion(number: int, ok: bool, text: str) -> None:
    line = f"CRITERION {number:>2}: {'PASS' if ok else 'FAIL'} - {text}"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
