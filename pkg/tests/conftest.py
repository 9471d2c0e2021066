import pytest

from complykit.catalog_io import fingerprint, serialize_catalog
from complykit.sample import sample_catalog

_ACCEPTANCE_RESULTS: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        name = report.nodeid.rsplit("::", 1)[-1]
        _ACCEPTANCE_RESULTS[name] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in _ACCEPTANCE_RESULTS.items():
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")


@pytest.fixture(scope="session")
def sample():
    return sample_catalog()


@pytest.fixture(scope="session")
def sample_bytes(sample):
    return serialize_catalog(sample)


@pytest.fixture(scope="session")
def sample_fingerprint(sample):
    return fingerprint(sample)
