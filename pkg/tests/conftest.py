import pytest
from hypothesis import HealthCheck, settings

from dualpolar.verify import CHECKS, DEFAULT_MATRIX, Instance, InstanceSpec

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_CACHE = {}
# criterion -> {instance: status}, filled by test_acceptance
ACCEPTANCE = {}


def get_instance(family, d, r):
    key = (family, d, r)
    if key not in _CACHE:
        _CACHE[key] = Instance(InstanceSpec(family, d, r))
    return _CACHE[key]


@pytest.fixture(scope="session")
def c22():
    return get_instance("C", 2, 2)


@pytest.fixture(scope="session")
def c32():
    return get_instance("C", 3, 2)


@pytest.fixture(scope="session")
def d32():
    return get_instance("D", 3, 2)


@pytest.fixture(scope="session")
def a2even():
    return get_instance("2A_even", 2, 2)


@pytest.fixture(scope="session", params=DEFAULT_MATRIX, ids=lambda t: f"{t[0]}-{t[1]}-{t[2]}")
def matrix_instance(request):
    return get_instance(*request.param)


SMALL = [("C", 2, 2), ("B", 2, 3), ("D", 3, 2), ("2D", 2, 2), ("2A_even", 2, 2)]


@pytest.fixture(scope="session", params=SMALL, ids=lambda t: f"{t[0]}-{t[1]}-{t[2]}")
def small_instance(request):
    return get_instance(*request.param)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for i, (name, what) in enumerate(CHECKS, start=1):
        got = ACCEPTANCE.get(i, {})
        bad = [k for k, s in got.items() if s != "pass"]
        if bad:
            verdict = f"FAIL  {what}  failing: {bad}"
        elif len(got) == len(DEFAULT_MATRIX):
            verdict = f"PASS  {what}"
        else:
            verdict = f"INCOMPLETE  {what}  ({len(got)}/{len(DEFAULT_MATRIX)} instances run)"
        tr.write_line(f"criterion {i:2d} {name:17s} {verdict}")
