from __future__ import annotations

from pathlib import Path

import pytest

import poisson3lie
from poisson3lie.constructions import graded_nambu, group_algebra_example, regular_hopf_module

DATA = Path(poisson3lie.__file__).parent / "data"

_acceptance: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n, title): test deciding acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    n, title = mark.args
    prev = _acceptance.get(n, (title, True))
    if rep.when == "call" or rep.failed:
        _acceptance[n] = (title, prev[1] and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_acceptance):
        title, ok = _acceptance[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def qc2():
    """``(A, φ)`` for ``A = H = Q[C2]`` with the regular coaction and ``φ = id``."""
    return group_algebra_example(2)


@pytest.fixture(scope="session")
def qc2_trivial():
    return group_algebra_example(2, coaction="trivial")


@pytest.fixture(scope="session")
def hh(qc2):
    """``H⊗H`` as a Hopf module over ``A = H = Q[C2]``."""
    return regular_hopf_module(qc2[0])


@pytest.fixture(scope="session")
def nambu():
    return graded_nambu(3)
