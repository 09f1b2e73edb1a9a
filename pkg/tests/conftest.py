import os
import sys

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--long", action="store_true", default=False,
                     help="run checks that take minutes (m(5,1), H_1(4,4))")


def long_enabled(config) -> bool:
    return config.getoption("--long") or os.environ.get("PRIMZONO_LONG", "") not in ("", "0")


def pytest_collection_modifyitems(config, items):
    if long_enabled(config):
        return
    skip = pytest.mark.skip(reason="needs --long or PRIMZONO_LONG=1")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("PRIMZONO_CACHE", str(d))
    return d


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results, key=lambda k: (int(k.split()[0]), k)):
        terminalreporter.write_line(results[key])
