"""Peres and Sorkin foundations tests as benchmarks on a small noisy simulator."""

from .kernels import BACKEND
from .sim import (
    CNOT,
    RX,
    RY,
    RZ,
    Circuit,
    CountsTable,
    DensityMatrix,
    Gate,
    H,
    StateVector,
    apply_gate,
    exact_probabilities,
    inner_product,
    run_circuit,
    sample_counts,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CNOT",
    "Circuit",
    "CountsTable",
    "DensityMatrix",
    "Gate",
    "H",
    "RX",
    "RY",
    "RZ",
    "StateVector",
    "apply_gate",
    "exact_probabilities",
    "inner_product",
    "run_circuit",
    "sample_counts",
]
