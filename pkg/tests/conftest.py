import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from nart.algcore import FieldSpec, linear_quiver, nakayama_algebra, validate_algebra  # noqa: E402
from nart.catalog import load_catalog  # noqa: E402
from nart.homlab import knit_ar_quiver  # noqa: E402


@pytest.fixture(scope="session")
def a2():
    return load_catalog("a2").algebra


@pytest.fixture(scope="session")
def a3():
    return load_catalog("a3").algebra


@pytest.fixture(scope="session")
def a2_ar(a2):
    return knit_ar_quiver(a2)


@pytest.fixture(scope="session")
def a3_ar(a3):
    return knit_ar_quiver(a3)


@pytest.fixture(scope="session")
def a2_p3():
    return validate_algebra(linear_quiver(2), [], FieldSpec(3))


@pytest.fixture(scope="session")
def a3_p3():
    return validate_algebra(linear_quiver(3), [], FieldSpec(3))


@pytest.fixture(scope="session")
def nak32_p3():
    return nakayama_algebra(3, 2, 3)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        ok, detail = results[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
