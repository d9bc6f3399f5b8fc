import math

import numpy as np
import pytest

from uncq import _pykernels, states

try:
    from uncq import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None

KERNEL_MODULES = [pytest.param(_pykernels, id="python")]
if _ckernels is not None:
    KERNEL_MODULES.append(pytest.param(_ckernels, id="cython"))


@pytest.fixture(params=KERNEL_MODULES)
def kernels(request):
    return request.param


@pytest.fixture
def mmm_example():
    return states.mmm(0.5, -0.2, -0.3)


def H(p):
    """Independent binary entropy used as a test oracle."""
    if p <= 0 or p >= 1:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def random_unit(rng):
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        crit = name.split("_")[2] if name.startswith("test_criterion_") else name
        ok = _acceptance.get(crit, True) and report.outcome == "passed"
        _acceptance[crit] = ok


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_acceptance, key=lambda c: (len(c), c)):
        status = "PASS" if _acceptance[crit] else "FAIL"
        terminalreporter.write_line(f"criterion {crit}: {status}")
