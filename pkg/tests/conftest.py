import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from camat import CircMatrix, CircScalar

settings.register_profile("camat", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("camat")

KS = [1, 2, 3, 4, 5, 8]
finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@st.composite
def params(draw, k=None, complex_=None):
    k = draw(st.sampled_from(KS)) if k is None else k
    cplx = draw(st.booleans()) if complex_ is None else complex_
    re = draw(st.lists(finite, min_size=k, max_size=k))
    if not cplx:
        return np.array(re)
    im = draw(st.lists(finite, min_size=k, max_size=k))
    return np.array(re) + 1j * np.array(im)


@st.composite
def scalars(draw, k=None, complex_=None):
    return CircScalar(draw(params(k, complex_)))


@st.composite
def scalar_tuples(draw, count, complex_=None):
    k = draw(st.sampled_from(KS))
    return tuple(draw(scalars(k, complex_)) for _ in range(count))


@st.composite
def vectors(draw, n, k, complex_=None):
    cplx = draw(st.booleans()) if complex_ is None else complex_
    re = draw(st.lists(finite, min_size=n * k, max_size=n * k))
    data = np.array(re).reshape(n, 1, k)
    if cplx:
        im = draw(st.lists(finite, min_size=n * k, max_size=n * k))
        data = data + 1j * np.array(im).reshape(n, 1, k)
    return CircMatrix(data)


def random_matrix(rng, m, n, k, complex_=False):
    data = rng.standard_normal((m, n, k))
    if complex_:
        data = data + 1j * rng.standard_normal((m, n, k))
    return CircMatrix(data)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


# -- acceptance reporting ------------------------------------------------------

CRITERIA = {
    "C1": "CFT and tcirc of the 2x2, k=3 example",
    "C2": "canonical eigendecomposition and enumeration",
    "C3": "power method on the diagonal example",
    "C4": "Arnoldi factorization",
    "C5": "Poisson power study N=16",
    "C6": "Poisson GMRES sudden drop",
    "C7": "algebra property suite",
    "C8": "eigenvalue counting",
}
# wall-clock budgets that apply to a whole criterion rather than one call
BUDGETS = {"C7": 30.0}
_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion covered by a test")


def pytest_runtest_logreport(report):
    crit = report.user_properties and dict(report.user_properties).get("criterion")
    if not crit:
        return
    entry = _outcomes.setdefault(crit, {"failed": [], "passed": 0, "seconds": 0.0})
    entry["seconds"] += report.duration
    if report.failed:
        entry["failed"].append(report.nodeid.split("::")[-1])
    elif report.when == "call" and report.passed:
        entry["passed"] += 1


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    marker = item.get_closest_marker("criterion")
    if marker:
        item.user_properties.append(("criterion", marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for crit, title in CRITERIA.items():
        entry = _outcomes.get(crit)
        if entry is None:
            continue
        over = entry["seconds"] > BUDGETS.get(crit, float("inf"))
        status = "FAIL" if entry["failed"] or over else "PASS"
        detail = f"{entry['passed']} passed"
        if entry["failed"]:
            detail += ", failed: " + ", ".join(entry["failed"])
        if over:
            detail += f", over the {BUDGETS[crit]:.0f}s budget"
        terminalreporter.write_line(
            f"{crit} {status}: {title} ({detail}; {entry['seconds']:.2f}s)")
