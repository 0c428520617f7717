"""Kernel backend selection.

The compiled Cython module is used when it was built; otherwise the numpy
fallback in :mod:`qfbench._pykernels` is loaded. Setting the environment
variable ``QFBENCH_PURE_PYTHON=1`` forces the fallback.
"""

import os

if os.environ.get("QFBENCH_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as _impl
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        from . import _pykernels as _impl
        BACKEND = "python"

apply_1q_sv = _impl.apply_1q_sv
apply_cnot_sv = _impl.apply_cnot_sv
apply_1q_dm = _impl.apply_1q_dm
apply_cnot_dm = _impl.apply_cnot_dm
dephase_dm = _impl.dephase_dm

__all__ = [
    "BACKEND",
    "apply_1q_sv",
    "apply_cnot_sv",
    "apply_1q_dm",
    "apply_cnot_dm",
    "dephase_dm",
]
