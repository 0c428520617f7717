"""Statevector and density-matrix simulation of small circuits.

Conventions
-----------
* Rotations are ``R_l(angle) = exp(-i * angle * sigma_l / 2)``.
* Qubit 0 is the leftmost label of a ket, so ``|01>`` means qubit 0 in
  ``|0>`` and qubit 1 in ``|1>``; the basis index is the big-endian
  integer reading of the label (``|01>`` -> 1, ``|10>`` -> 2).
* Global phases are never normalised away.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import (
    DimensionMismatchError,
    InvalidDistributionError,
    InvalidGateError,
    InvalidStateError,
)
from .rng import as_generator

MAX_QUBITS = 12
NORM_TOL = 1e-10

SINGLE_QUBIT_KINDS = ("RX", "RY", "RZ", "H")
ROTATION_KINDS = ("RX", "RY", "RZ")
GATE_KINDS = SINGLE_QUBIT_KINDS + ("CNOT",)

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def _check_n_qubits(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_QUBITS:
        raise InvalidStateError(f"n_qubits must be an integer in [1, {MAX_QUBITS}], got {n!r}")
    return int(n)


def _n_qubits_for_dim(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise DimensionMismatchError(f"dimension {dim} is not a power of two >= 2")
    return _check_n_qubits(n)


@dataclass(frozen=True)
class Gate:
    kind: str
    targets: tuple[int, ...]
    angle: float = 0.0

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise InvalidGateError(f"unsupported gate kind {self.kind!r}")
        targets = tuple(int(t) for t in self.targets)
        object.__setattr__(self, "targets", targets)
        arity = 2 if self.kind == "CNOT" else 1
        if len(targets) != arity:
            raise InvalidGateError(f"{self.kind} takes {arity} target(s), got {targets}")
        if len(set(targets)) != len(targets):
            raise InvalidGateError(f"repeated qubit in {self.kind}{targets}")
        if any(t < 0 for t in targets):
            raise InvalidGateError(f"negative qubit index in {self.kind}{targets}")
        if not math.isfinite(self.angle):
            raise InvalidGateError("gate angle must be finite")
        if self.kind not in ROTATION_KINDS and self.angle != 0.0:
            raise InvalidGateError(f"{self.kind} takes no angle")
        object.__setattr__(self, "angle", float(self.angle))

    @property
    def arity(self) -> int:
        return len(self.targets)

    def matrix(self) -> np.ndarray:
        """2x2 unitary of a single-qubit gate."""
        half = self.angle / 2
        c, s = math.cos(half), math.sin(half)
        if self.kind == "RX":
            return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
        if self.kind == "RY":
            return np.array([[c, -s], [s, c]], dtype=complex)
        if self.kind == "RZ":
            return np.array([[complex(c, -s), 0], [0, complex(c, s)]], dtype=complex)
        if self.kind == "H":
            return _H.copy()
        raise InvalidGateError("CNOT has no 2x2 matrix")

    def inverse(self) -> "Gate":
        if self.kind in ROTATION_KINDS:
            return Gate(self.kind, self.targets, -self.angle)
        return self

    def check(self, n_qubits: int) -> None:
        if any(t >= n_qubits for t in self.targets):
            raise InvalidGateError(f"{self.kind}{self.targets} out of range for {n_qubits} qubit(s)")


def RX(q: int, angle: float) -> Gate:
    return Gate("RX", (q,), angle)


def RY(q: int, angle: float) -> Gate:
    return Gate("RY", (q,), angle)


def RZ(q: int, angle: float) -> Gate:
    return Gate("RZ", (q,), angle)


def H(q: int) -> Gate:
    return Gate("H", (q,))


def CNOT(control: int, target: int) -> Gate:
    return Gate("CNOT", (control, target))


@dataclass
class Circuit:
    """Ordered gate list on ``n_qubits`` qubits. An empty circuit is the identity."""

    n_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        self.n_qubits = _check_n_qubits(self.n_qubits)
        self.gates = list(self.gates)
        for g in self.gates:
            g.check(self.n_qubits)

    def append(self, gate: Gate) -> "Circuit":
        gate.check(self.n_qubits)
        self.gates.append(gate)
        return self

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        for g in gates:
            self.append(g)
        return self

    def rx(self, q, angle):
        return self.append(RX(q, angle))

    def ry(self, q, angle):
        return self.append(RY(q, angle))

    def rz(self, q, angle):
        return self.append(RZ(q, angle))

    def h(self, q):
        return self.append(H(q))

    def cx(self, control, target):
        return self.append(CNOT(control, target))

    def inverse(self) -> "Circuit":
        return Circuit(self.n_qubits, [g.inverse() for g in reversed(self.gates)])

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n_qubits != self.n_qubits:
            raise DimensionMismatchError("cannot concatenate circuits of different width")
        return Circuit(self.n_qubits, self.gates + other.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)


class StateVector:
    """Pure state of ``n_qubits`` qubits."""

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes, *, check: bool = True):
        amps = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        _n_qubits_for_dim(amps.shape[0])
        if check:
            if not np.all(np.isfinite(amps)):
                raise InvalidStateError("amplitudes must be finite")
            norm = float(np.vdot(amps, amps).real)
            if abs(norm - 1.0) > NORM_TOL:
                raise InvalidStateError(f"state norm {norm!r} differs from 1")
        self.amplitudes = amps

    @classmethod
    def zero(cls, n_qubits: int) -> "StateVector":
        return cls.basis(n_qubits, 0)

    @classmethod
    def basis(cls, n_qubits: int, index: int) -> "StateVector":
        n = _check_n_qubits(n_qubits)
        if not 0 <= index < (1 << n):
            raise InvalidStateError(f"basis index {index} out of range")
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps, check=False)

    @classmethod
    def from_label(cls, label: str) -> "StateVector":
        return cls.basis(len(label), int(label, 2))

    @property
    def n_qubits(self) -> int:
        return self.amplitudes.shape[0].bit_length() - 1

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes.copy(), check=False)

    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def kron(self, other: "StateVector") -> "StateVector":
        """Tensor product with ``self`` as the leftmost qubits."""
        return StateVector(np.kron(self.amplitudes, other.amplitudes), check=False)

    def __repr__(self):
        return f"StateVector(n_qubits={self.n_qubits}, amplitudes={self.amplitudes!r})"


class DensityMatrix:
    """Mixed state of ``n_qubits`` qubits."""

    __slots__ = ("matrix",)

    def __init__(self, matrix, *, check: bool = True):
        m = np.array(matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidStateError("density matrix must be square")
        _n_qubits_for_dim(m.shape[0])
        self.matrix = np.ascontiguousarray(m)
        if check:
            self.validate()

    @classmethod
    def from_state(cls, state: StateVector) -> "DensityMatrix":
        a = state.amplitudes
        return cls(np.outer(a, a.conj()), check=False)

    @classmethod
    def zero(cls, n_qubits: int) -> "DensityMatrix":
        return cls.from_state(StateVector.zero(n_qubits))

    @property
    def n_qubits(self) -> int:
        return self.matrix.shape[0].bit_length() - 1

    def copy(self) -> "DensityMatrix":
        return DensityMatrix(self.matrix.copy(), check=False)

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def validate(self, tol: float = NORM_TOL, eig_tol: float = 1e-9) -> None:
        m = self.matrix
        if not np.all(np.isfinite(m)):
            raise InvalidStateError("density matrix entries must be finite")
        if np.max(np.abs(m - m.conj().T)) > tol:
            raise InvalidStateError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > tol:
            raise InvalidStateError("density matrix trace differs from 1")
        if np.linalg.eigvalsh(m).min() < -eig_tol:
            raise InvalidStateError("density matrix has a negative eigenvalue")

    def __repr__(self):
        return f"DensityMatrix(n_qubits={self.n_qubits})"


State = StateVector | DensityMatrix


def _apply_inplace(state: State, gate: Gate) -> None:
    n = state.n_qubits
    if isinstance(state, StateVector):
        if gate.kind == "CNOT":
            kernels.apply_cnot_sv(state.amplitudes, n, *gate.targets)
        else:
            kernels.apply_1q_sv(state.amplitudes, n, gate.targets[0], gate.matrix())
    else:
        if gate.kind == "CNOT":
            kernels.apply_cnot_dm(state.matrix, n, *gate.targets)
        else:
            kernels.apply_1q_dm(state.matrix, n, gate.targets[0], gate.matrix())


def apply_gate(state: State, gate: Gate) -> State:
    """Return ``state`` transformed by ``gate``; the input is not modified."""
    gate.check(state.n_qubits)
    out = state.copy()
    _apply_inplace(out, gate)
    return out


def run_circuit(circuit: Circuit, initial: State | None = None) -> State:
    """Apply every gate of ``circuit`` in order, starting from ``|0...0>`` by default."""
    if initial is None:
        initial = StateVector.zero(circuit.n_qubits)
    if initial.n_qubits != circuit.n_qubits:
        raise DimensionMismatchError(
            f"circuit acts on {circuit.n_qubits} qubit(s), state has {initial.n_qubits}"
        )
    out = initial.copy()
    for g in circuit.gates:
        _apply_inplace(out, g)
    return out


def exact_probabilities(state: State) -> np.ndarray:
    """Outcome distribution of a computational-basis measurement."""
    if isinstance(state, StateVector):
        a = state.amplitudes
        p = a.real**2 + a.imag**2
    else:
        p = np.clip(np.diagonal(state.matrix).real, 0.0, None)
    return p


def inner_product(bra: StateVector, ket: StateVector) -> complex:
    """``<bra|ket>``, conjugating the bra."""
    if bra.amplitudes.shape != ket.amplitudes.shape:
        raise DimensionMismatchError("inner product of states with different dimension")
    return complex(np.vdot(bra.amplitudes, ket.amplitudes))


@dataclass(frozen=True)
class CountsTable:
    """Observed shot counts keyed by basis index (zero counts omitted)."""

    n_qubits: int
    shots: int
    counts: Mapping[int, int]

    def __post_init__(self):
        if self.shots <= 0:
            raise InvalidDistributionError("shots must be positive")
        counts = {int(k): int(v) for k, v in sorted(self.counts.items()) if v}
        dim = 1 << self.n_qubits
        if any(v < 0 for v in counts.values()):
            raise InvalidDistributionError("negative count")
        if any(not 0 <= k < dim for k in counts):
            raise InvalidDistributionError("basis index out of range")
        if sum(counts.values()) != self.shots:
            raise InvalidDistributionError("counts do not sum to shots")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_array(cls, counts: Sequence[int]) -> "CountsTable":
        arr = np.asarray(counts, dtype=np.int64)
        n = _n_qubits_for_dim(arr.shape[0])
        return cls(n, int(arr.sum()), {i: int(c) for i, c in enumerate(arr) if c})

    def as_array(self) -> np.ndarray:
        arr = np.zeros(1 << self.n_qubits, dtype=np.int64)
        for k, v in self.counts.items():
            arr[k] = v
        return arr

    def frequencies(self) -> np.ndarray:
        return self.as_array() / self.shots

    def by_label(self) -> dict[str, int]:
        return {format(k, f"0{self.n_qubits}b"): v for k, v in self.counts.items()}

    def digest(self) -> str:
        text = ",".join(f"{k}:{v}" for k, v in self.counts.items())
        return hashlib.sha256(f"{self.n_qubits}|{self.shots}|{text}".encode()).hexdigest()[:16]


def _as_distribution(dist) -> np.ndarray:
    if isinstance(dist, Mapping):
        size = max(2, 1 << max(1, (max(dist) if dist else 0).bit_length()))
        arr = np.zeros(size)
        for k, v in dist.items():
            arr[int(k)] = v
        return arr
    return np.asarray(dist, dtype=float).reshape(-1)


def sample_counts(dist, shots: int, seed: int | np.random.Generator) -> CountsTable:
    """Multinomial draw of ``shots`` outcomes from ``dist``."""
    p = _as_distribution(dist)
    n = _n_qubits_for_dim(p.shape[0])
    if shots <= 0:
        raise InvalidDistributionError("shots must be positive")
    if not np.all(np.isfinite(p)) or np.any(p < -1e-12):
        raise InvalidDistributionError("distribution has negative or non-finite entries")
    total = p.sum()
    if abs(total - 1.0) > 1e-9:
        raise InvalidDistributionError(f"distribution sums to {total!r}")
    p = np.clip(p, 0.0, None)
    p = p / p.sum()
    draws = as_generator(seed).multinomial(int(shots), p)
    return CountsTable(n, int(shots), {i: int(c) for i, c in enumerate(draws) if c})
