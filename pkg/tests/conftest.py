import pytest

from spectral_casimir import _jit
from spectral_casimir.materials import PRESETS

SPHERES = ("K", "Au", "Ag", "Al")
SUBSTRATES = ("Inf", "Al2O3", "TiO2")

# filled by tests/test_acceptance.py, printed after the run
ACCEPTANCE_LINES = []


@pytest.fixture(params=["numba", "numpy"])
def kernel_path(request, monkeypatch):
    """Run the test once through each kernel implementation."""
    if request.param == "numba" and not _jit.HAVE_NUMBA:
        pytest.skip("numba not installed")
    monkeypatch.setattr(_jit, "USE_NUMBA", request.param == "numba")
    return request.param


@pytest.fixture
def presets():
    return PRESETS


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
