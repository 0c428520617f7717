"""Compare the compiled and numpy kernel backends.

Usage: ``python benchmarks/bench_kernels.py [--repeat N]``

Times single gates on state vectors and density matrices at several widths,
plus one full noisy campaign, under each available backend.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from qfbench import _pykernels
from qfbench.sim import RY

try:
    from qfbench import _kernels as _ckernels
except ImportError:
    _ckernels = None


def _state(n, rng):
    z = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return z / np.linalg.norm(z)


def bench_backend(mod, n, repeat):
    rng = np.random.default_rng(0)
    u = RY(0, 0.3).matrix().astype(np.complex128)
    sv = _state(n, rng)
    rho = np.outer(sv, sv.conj())
    q = n // 2
    t = {}
    t["1q sv"] = min(timeit.repeat(lambda: mod.apply_1q_sv(sv, n, q, u), number=200, repeat=repeat)) / 200
    t["cnot sv"] = min(timeit.repeat(lambda: mod.apply_cnot_sv(sv, n, 0, n - 1), number=200, repeat=repeat)) / 200
    t["1q dm"] = min(timeit.repeat(lambda: mod.apply_1q_dm(rho, n, q, u), number=20, repeat=repeat)) / 20
    t["cnot dm"] = min(timeit.repeat(lambda: mod.apply_cnot_dm(rho, n, 0, n - 1), number=20, repeat=repeat)) / 20
    t["dephase dm"] = min(timeit.repeat(lambda: mod.dephase_dm(rho, n, q, 0.98), number=20, repeat=repeat)) / 20
    return t


def bench_campaign(flag, repeat):
    import os
    import subprocess
    import sys

    code = (
        "import time\n"
        "from qfbench.harness.campaign import run_campaign\n"
        "from qfbench.harness.config import ExperimentConfig\n"
        "c = ExperimentConfig(test='kappa-n', n_paths=8, n_states=10, resamples=200, modes=('noisy-exact',))\n"
        "t = time.perf_counter(); run_campaign(c); print(time.perf_counter() - t)\n"
    )
    env = dict(os.environ, QFBENCH_PURE_PYTHON=flag)
    runs = [float(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                                 text=True, check=True).stdout) for _ in range(repeat)]
    return min(runs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--qubits", type=int, nargs="+", default=[2, 3, 6, 9])
    args = ap.parse_args(argv)
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    if _ckernels is None:
        print("compiled kernels not built; timing the numpy fallback only")
    print(f"{'kernel':<12}{'n':>3}" + "".join(f"{name:>14}" for name, _ in backends) + "   speedup")
    for n in args.qubits:
        rows = {name: bench_backend(mod, n, args.repeat) for name, mod in backends}
        for k in rows["python"]:
            cells = "".join(f"{rows[name][k] * 1e6:>12.2f}us" for name, _ in backends)
            speed = f"{rows['python'][k] / rows['cython'][k]:>9.1f}x" if _ckernels else ""
            print(f"{k:<12}{n:>3}{cells}{speed}")
    print()
    py = bench_campaign("1", args.repeat)
    line = f"noisy-exact kappa8 campaign (10 states): python {py:.3f}s"
    if _ckernels:
        cy = bench_campaign("0", args.repeat)
        line += f", cython {cy:.3f}s ({py / cy:.1f}x)"
    print(line)


if __name__ == "__main__":
    main()
