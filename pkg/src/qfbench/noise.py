"""Dephasing and readout noise.

Dephasing is the phase-flip channel ``rho -> (1-p) rho + p Z rho Z`` applied to
every qubit a gate touched, right after the gate. Readout error is a
per-qubit confusion matrix applied to the final outcome distribution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import DimensionMismatchError, InvalidParameterError
from .sim import (
    Circuit,
    CountsTable,
    DensityMatrix,
    _apply_inplace,
    exact_probabilities,
    run_circuit,
    sample_counts,
)

_PAULI_Z = np.diag([1.0, -1.0]).astype(complex)


def _check_dephasing(p: float, name: str = "p") -> float:
    p = float(p)
    if not 0.0 <= p <= 0.5:
        raise InvalidParameterError(f"{name}={p!r} outside [0, 1/2]")
    return p


def dephasing_kraus(p: float) -> list[np.ndarray]:
    """Kraus pair ``{sqrt(1-p) I, sqrt(p) Z}`` of the phase-flip channel."""
    p = _check_dephasing(p)
    return [np.sqrt(1 - p) * np.eye(2, dtype=complex), np.sqrt(p) * _PAULI_Z]


@dataclass(frozen=True)
class ReadoutModel:
    """Per-qubit confusion matrices, ``M[i][j] = P(read j | true i)``."""

    matrices: tuple[np.ndarray, ...]

    def __post_init__(self):
        mats = []
        for m in self.matrices:
            m = np.array(m, dtype=float)
            if m.shape != (2, 2):
                raise InvalidParameterError("confusion matrices must be 2x2")
            if np.any(m < 0) or np.any(m > 1):
                raise InvalidParameterError("confusion matrix entries must lie in [0, 1]")
            if np.max(np.abs(m.sum(axis=1) - 1)) > 1e-12:
                raise InvalidParameterError("confusion matrix rows must sum to 1")
            m.setflags(write=False)
            mats.append(m)
        if not mats:
            raise InvalidParameterError("readout model needs at least one qubit")
        object.__setattr__(self, "matrices", tuple(mats))

    @classmethod
    def from_flips(cls, n_qubits: int, e01: float, e10: float | None = None) -> "ReadoutModel":
        """Identical qubits with ``P(read 1|0) = e01`` and ``P(read 0|1) = e10``."""
        e10 = e01 if e10 is None else e10
        m = np.array([[1 - e01, e01], [e10, 1 - e10]])
        return cls(tuple(m for _ in range(n_qubits)))

    @classmethod
    def identity(cls, n_qubits: int) -> "ReadoutModel":
        return cls.from_flips(n_qubits, 0.0, 0.0)

    @property
    def n_qubits(self) -> int:
        return len(self.matrices)

    @property
    def is_identity(self) -> bool:
        return all(np.array_equal(m, np.eye(2)) for m in self.matrices)


@dataclass(frozen=True)
class DephasingModel:
    p1: float = 0.0
    p2: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "p1", _check_dephasing(self.p1, "p1"))
        object.__setattr__(self, "p2", _check_dephasing(self.p2, "p2"))

    def for_arity(self, arity: int) -> float:
        return self.p1 if arity == 1 else self.p2


@dataclass(frozen=True)
class NoiseModel:
    readout: ReadoutModel
    dephasing: DephasingModel

    @classmethod
    def ideal(cls, n_qubits: int) -> "NoiseModel":
        return cls(ReadoutModel.identity(n_qubits), DephasingModel())

    @classmethod
    def uniform(cls, n_qubits: int, e01=0.0, e10=None, p1=0.0, p2=0.0) -> "NoiseModel":
        return cls(ReadoutModel.from_flips(n_qubits, e01, e10), DephasingModel(p1, p2))

    @property
    def n_qubits(self) -> int:
        return self.readout.n_qubits

    @property
    def is_trivial(self) -> bool:
        return self.readout.is_identity and self.dephasing.p1 == 0 and self.dephasing.p2 == 0


def apply_dephasing(rho: DensityMatrix, qubit: int, p: float) -> DensityMatrix:
    """Phase-flip channel on one qubit; coherences across that qubit shrink by ``1 - 2p``."""
    p = _check_dephasing(p)
    if not 0 <= qubit < rho.n_qubits:
        raise InvalidParameterError(f"qubit {qubit} out of range")
    out = rho.copy()
    if p:
        kernels.dephase_dm(out.matrix, out.n_qubits, qubit, 1.0 - 2.0 * p)
    return out


def apply_readout(dist: Sequence[float], model: ReadoutModel) -> np.ndarray:
    """Push a true-outcome distribution through the per-qubit confusion matrices."""
    p = np.asarray(dist, dtype=float).reshape(-1)
    n = model.n_qubits
    if p.shape[0] != 1 << n:
        raise DimensionMismatchError(
            f"distribution has {p.shape[0]} outcomes, readout model covers {n} qubit(s)"
        )
    if model.is_identity:
        return p.copy()
    t = p.reshape((2,) * n)
    for q, m in enumerate(model.matrices):
        # new[..., j, ...] = sum_i M[i, j] * old[..., i, ...]
        t = np.moveaxis(np.tensordot(m, t, axes=([0], [q])), 0, q)
    return t.reshape(-1)


def evolve_noisy(circuit: Circuit, dephasing: DephasingModel) -> DensityMatrix:
    """Density-matrix evolution from ``|0...0>`` with dephasing after each gate."""
    rho = DensityMatrix.zero(circuit.n_qubits)
    n = rho.n_qubits
    for g in circuit.gates:
        _apply_inplace(rho, g)
        p = dephasing.for_arity(g.arity)
        if p:
            for q in g.targets:
                kernels.dephase_dm(rho.matrix, n, q, 1.0 - 2.0 * p)
    return rho


def noisy_probabilities(circuit: Circuit, noise: NoiseModel) -> np.ndarray:
    """Exact outcome distribution of ``circuit`` under ``noise`` (no shot noise)."""
    if noise.n_qubits != circuit.n_qubits:
        raise DimensionMismatchError("noise model and circuit cover different qubit counts")
    if noise.dephasing.p1 == 0 and noise.dephasing.p2 == 0:
        probs = exact_probabilities(run_circuit(circuit))
    else:
        probs = exact_probabilities(evolve_noisy(circuit, noise.dephasing))
    return apply_readout(probs, noise.readout)


def run_noisy(circuit: Circuit, noise: NoiseModel, shots: int, seed) -> CountsTable:
    """Sample ``shots`` noisy measurements of ``circuit``."""
    return sample_counts(noisy_probabilities(circuit, noise), shots, seed)
