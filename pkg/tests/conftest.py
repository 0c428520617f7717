import math

import numpy as np
import pytest

from qfbench import _pykernels
from qfbench.circuits import QubitPrepParams

try:
    from qfbench import _kernels as _ckernels
except ImportError:  # extension not built
    _ckernels = None

KERNEL_BACKENDS = [pytest.param(_pykernels, id="python")]
if _ckernels is not None:
    KERNEL_BACKENDS.append(pytest.param(_ckernels, id="cython"))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_state(rng, n):
    z = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return z / np.linalg.norm(z)


def random_qubit(rng):
    return QubitPrepParams(math.acos(1 - 2 * rng.random()), 2 * math.pi * rng.random())


def qubit_vector(p):
    """Direct construction of cos(t/2)|0> + e^{i phi} sin(t/2)|1>."""
    return np.array([math.cos(p.theta / 2), np.exp(1j * p.phi) * math.sin(p.theta / 2)])


#: (criterion number, title, passed, detail) appended by test_acceptance.py
ACCEPTANCE_RESULTS: list[tuple[int, str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, title, ok, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {n:>2}. {title}: {detail}")
