import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("fast", max_examples=10, deadline=None)
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session", autouse=True)
def _private_cache(tmp_path_factory):
    """Keep calibration files out of the user's cache directory."""
    path = tmp_path_factory.mktemp("qhowe-cache")
    old = os.environ.get("QHOWE_CACHE_DIR")
    os.environ["QHOWE_CACHE_DIR"] = str(path)
    yield path
    if old is None:
        os.environ.pop("QHOWE_CACHE_DIR", None)
    else:
        os.environ["QHOWE_CACHE_DIR"] = old


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
