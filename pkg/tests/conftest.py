import pytest

from trapbudget.rf_power import RFDrive
from trapbudget.trap_model import bundled_config_path, load_trap_description


@pytest.fixture(scope="session")
def solid():
    return load_trap_description(bundled_config_path("enchilada_solid"))


@pytest.fixture(scope="session")
def perforated():
    return load_trap_description(bundled_config_path("enchilada_perforated"))


@pytest.fixture
def table_drive():
    return RFDrive.from_hz(300.0, 50e6)


_criteria = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "passed": True, "tests": 0})
    entry["tests"] += 1
    if call.excinfo is not None:
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["passed"] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {entry['title']} ({entry['tests']} checks)")
