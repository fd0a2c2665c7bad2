import pytest

from cube_kappa.cube import build_kary_cube


@pytest.fixture(scope="session")
def q1():
    return build_kary_cube(3, 1)


@pytest.fixture(scope="session")
def q2():
    return build_kary_cube(3, 2)


@pytest.fixture(scope="session")
def q3():
    return build_kary_cube(3, 3)


@pytest.fixture(scope="session")
def q4():
    return build_kary_cube(3, 4)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, note = RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {note}")
