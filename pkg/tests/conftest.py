import time

import pytest
from hypothesis import HealthCheck, settings

from fanoforge.catalog import load_catalog
from fanoforge.classify.families import RHO4_BASES, RHO5_BASES, RHO6_BASES, double_constructions, \
    per_base_constructions
from fanoforge.classify.tables import generate_tables

settings.register_profile("suite", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def all_tables(catalog):
    return generate_tables("all", catalog)


@pytest.fixture(scope="session")
def constructions(catalog):
    """Every classified construction over a 3-fold base, doubles included."""
    cons = per_base_constructions(RHO4_BASES + RHO5_BASES + RHO6_BASES, catalog)
    flat = [c for b in cons for c in cons[b]]
    flat += [c for g in double_constructions(catalog) for c in g]
    return flat


RUNTIME_BUDGET = 10.0
_clock = {}


def pytest_sessionstart(session):
    _clock["start"] = time.perf_counter()


@pytest.hookimpl(tryfirst=True)
def pytest_sessionfinish(session, exitstatus):
    # the runtime criterion only makes sense for a run that includes the acceptance suite
    if not any(item.nodeid.startswith("tests/test_acceptance.py") for item in session.items):
        return
    elapsed = time.perf_counter() - _clock["start"]
    _clock["elapsed"] = elapsed
    if elapsed >= RUNTIME_BUDGET and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if "elapsed" in _clock:
        elapsed = _clock["elapsed"]
        status = "PASS" if elapsed < RUNTIME_BUDGET else "FAIL"
        terminalreporter.write_line(f"{status} runtime: whole suite in {elapsed:.2f} s (budget {RUNTIME_BUDGET:.0f} s)")
