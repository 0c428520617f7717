"""Circuit builders for the Peres, Sorkin and joint tests.

Path labelling
--------------
Each family of circuits works on its own set of interfering paths, always
exposed as a ``{path label: basis index}`` map so estimators never guess at
raw indices:

* :data:`PERES_PATHS`: the anti-correlated pair ``|01>`` (path 1) and
  ``|10>`` (path 2).
* :data:`SORKIN_PATHS`: the three-level register ``|00>, |10>, |11>``.
* :data:`JOINT_PATHS`: ``|00>, |01>, |10>`` of a product state.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import InvalidParameterError, UnsupportedError
from .sim import Circuit

TWO_PI = 2 * math.pi

PERES_PATHS = {1: 0b01, 2: 0b10}
SORKIN_PATHS = {1: 0b00, 2: 0b10, 3: 0b11}
JOINT_PATHS = {1: 0b00, 2: 0b01, 3: 0b10}
PATH_PAIRS = ((1, 2), (1, 3), (2, 3))

#: outcome of :func:`build_peres_pair` whose probability is ``|<Psi+|psi1 psi2>|^2``
PERES_PAIR_OUTCOME = 0b01


def _check_angle(value: float, low: float, high: float, name: str, closed_high=True):
    value = float(value)
    ok = low <= value <= high if closed_high else low <= value < high
    if not (math.isfinite(value) and ok):
        raise InvalidParameterError(f"{name}={value!r} outside its allowed range")
    return value


@dataclass(frozen=True)
class QubitPrepParams:
    """``cos(theta/2)|0> + exp(i phi) sin(theta/2)|1>``."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "theta", _check_angle(self.theta, 0.0, math.pi, "theta"))
        object.__setattr__(self, "phi", _check_angle(self.phi, 0.0, TWO_PI, "phi", False))

    @property
    def a(self) -> float:
        return math.cos(self.theta / 2)

    @property
    def b(self) -> float:
        return math.sin(self.theta / 2)

    def amplitudes(self) -> tuple[complex, complex]:
        return complex(self.a), self.b * complex(math.cos(self.phi), math.sin(self.phi))


@dataclass(frozen=True)
class SorkinPrepParams:
    theta1: float
    phi1: float
    theta2: float
    phi2: float

    def __post_init__(self):
        for name in ("theta1", "theta2"):
            object.__setattr__(self, name, _check_angle(getattr(self, name), 0.0, math.pi, name))
        for name in ("phi1", "phi2"):
            object.__setattr__(
                self, name, _check_angle(getattr(self, name), 0.0, TWO_PI, name, False)
            )

    def amplitudes(self) -> dict[int, complex]:
        """Amplitudes of the prepared state on ``|00>, |10>, |11>`` (including phases)."""
        c1, s1 = math.cos(self.theta1 / 2), math.sin(self.theta1 / 2)
        c2, s2 = math.cos(self.theta2 / 2), math.sin(self.theta2 / 2)

        def ph(x):
            return complex(math.cos(x), math.sin(x))

        return {
            0b00: c1 * ph(-self.phi1 / 2),
            0b10: s1 * ph(self.phi1 / 2) * c2 * ph(-self.phi2 / 2),
            0b11: s1 * ph(self.phi1 / 2) * s2 * ph(self.phi2 / 2),
        }


@dataclass(frozen=True)
class SuperpositionSpec:
    """Real positive weights of ``|Psi+> = alpha|01> + beta|10>``."""

    alpha: float = 1 / math.sqrt(2)

    def __post_init__(self):
        a = float(self.alpha)
        if not (math.isfinite(a) and 0.0 < a < 1.0):
            raise InvalidParameterError(f"alpha={a!r} must lie strictly inside (0, 1)")
        object.__setattr__(self, "alpha", a)

    @property
    def beta(self) -> float:
        return math.sqrt(1.0 - self.alpha**2)

    @property
    def theta_m(self) -> float:
        return 2 * math.acos(self.alpha)


# -- controlled rotations from the native gate set ---------------------------

def _controlled_ry(c: Circuit, control: int, target: int, angle: float) -> None:
    c.ry(target, angle / 2).cx(control, target).ry(target, -angle / 2).cx(control, target)


def _controlled_rz(c: Circuit, control: int, target: int, angle: float) -> None:
    c.rz(target, angle / 2).cx(control, target).rz(target, -angle / 2).cx(control, target)


def _anticontrolled_ry(c: Circuit, control: int, target: int, angle: float) -> None:
    # RY(angle) on target when control is |0>, identity when |1>
    c.ry(target, angle / 2).cx(control, target).ry(target, angle / 2).cx(control, target)


# -- Peres ------------------------------------------------------------------

def prep_single_qubit(params: QubitPrepParams, qubit: int = 0, n_qubits: int = 1) -> Circuit:
    """RY(theta) then RZ(phi): ``|0> -> cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`` up to phase."""
    return Circuit(n_qubits).ry(qubit, params.theta).rz(qubit, params.phi)


def build_peres_unentangled(psi1: QubitPrepParams, psi2: QubitPrepParams) -> Circuit:
    """Product preparation ``|psi1>|psi2>``; outcomes ``01`` and ``10`` give the single-path terms."""
    return prep_single_qubit(psi1, 0, 2) + prep_single_qubit(psi2, 1, 2)


def build_peres_pair(
    psi1: QubitPrepParams, psi2: QubitPrepParams, spec: SuperpositionSpec
) -> Circuit:
    """Product preparation followed by the projection onto ``alpha|01> + beta|10>``.

    The CNOT (qubit 0 controls qubit 1) maps ``|Psi+>`` to
    ``(alpha|0> + beta|1>)|1>``, and ``RY(-theta_m)`` on qubit 0 rotates that
    onto ``|01>``. The probability of outcome ``01`` is therefore exactly
    ``|<Psi+|psi1 psi2>|^2`` (no extra normalisation).
    """
    c = build_peres_unentangled(psi1, psi2)
    return c.cx(0, 1).ry(0, -spec.theta_m)


# -- Sorkin -----------------------------------------------------------------

def sorkin_unitary(t1: float, f1: float, t2: float, f2: float) -> Circuit:
    """Three-level preparation ``U(t1, f1, t2, f2)`` acting on ``|00>``."""
    c = Circuit(2).ry(0, t1).rz(0, f1)
    _controlled_ry(c, 0, 1, t2)
    _controlled_rz(c, 0, 1, f2)
    return c


def build_sorkin_prep(params: SorkinPrepParams) -> Circuit:
    """Prepare ``c1 e^{-i phi1/2}|00> + s1 e^{i phi1/2}(c2 e^{-i phi2/2}|10> + s2 e^{i phi2/2}|11>)``."""
    return sorkin_unitary(params.theta1, params.phi1, params.theta2, params.phi2)


def sorkin_setting(c00: float, c10: float, c11: float) -> tuple[float, float]:
    """``(t1, t2)`` with ``U(t1, 0, t2, 0)|00> = c00|00> + c10|10> + c11|11>``.

    Targets are real and non-negative; they are normalised here.
    """
    if min(c00, c10, c11) < 0:
        raise InvalidParameterError("projection targets must be non-negative")
    norm = math.sqrt(c00 * c00 + c10 * c10 + c11 * c11)
    if norm == 0:
        raise InvalidParameterError("zero projection target")
    c00, c10, c11 = c00 / norm, c10 / norm, c11 / norm
    t1 = 2 * math.acos(min(1.0, c00))
    t2 = 2 * math.atan2(c11, c10) if (c10 or c11) else 0.0
    return t1, t2


THREE_PATH_SETTING = (2 * math.acos(1 / math.sqrt(3)), 2 * math.acos(1 / math.sqrt(2)))
SINGLES_SETTING = (0.0, 0.0)


def two_path_settings() -> list[tuple[float, float]]:
    """``(t1, t2)`` for the pairs of :data:`PATH_PAIRS` over :data:`SORKIN_PATHS`."""
    settings = []
    for j, k in PATH_PAIRS:
        target = {idx: 0.0 for idx in SORKIN_PATHS.values()}
        target[SORKIN_PATHS[j]] = target[SORKIN_PATHS[k]] = 1.0
        settings.append(sorkin_setting(target[0b00], target[0b10], target[0b11]))
    return settings


def build_sorkin_measurement(prep: SorkinPrepParams, t1: float, t2: float) -> Circuit:
    """``U^dagger(t1, 0, t2, 0) U(prep)``; outcome ``00`` is the projection probability."""
    return build_sorkin_prep(prep) + sorkin_unitary(t1, 0.0, t2, 0.0).inverse()


# -- generic projections ------------------------------------------------------

def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def build_uniform_projection(n_paths: int, n_qubits: int) -> Circuit:
    """Hadamard on every qubit; outcome ``0...0`` projects onto the uniform superposition."""
    if not _is_power_of_two(n_paths) or n_paths < 2:
        raise UnsupportedError(f"uniform projection needs a power-of-two path count, got {n_paths}")
    if n_paths != 1 << n_qubits:
        raise UnsupportedError(f"{n_paths} paths do not fill {n_qubits} qubit(s)")
    c = Circuit(n_qubits)
    for q in range(n_qubits):
        c.h(q)
    return c


def build_pair_projection(n_qubits: int, j: int, k: int) -> tuple[Circuit, int]:
    """Circuit and outcome index projecting onto ``(|j> + |k>)/sqrt(2)``.

    CNOTs from a pivot qubit (where ``j`` and ``k`` differ) reduce the pair to
    states differing on the pivot alone; a Hadamard there then maps the
    equal-weight superposition onto a single basis state.
    """
    dim = 1 << n_qubits
    if not (0 <= j < dim and 0 <= k < dim) or j == k:
        raise InvalidParameterError(f"invalid basis pair ({j}, {k})")
    differ = [q for q in range(n_qubits) if (j ^ k) >> (n_qubits - 1 - q) & 1]
    if (j >> (n_qubits - 1 - differ[0])) & 1:
        j, k = k, j
    pivot = differ[0]
    c = Circuit(n_qubits)
    for q in differ[1:]:
        c.cx(pivot, q)
    c.h(pivot)
    # j has a 0 on the pivot, so the CNOTs leave it unchanged
    return c, j


def joint_preparation() -> Circuit:
    """``|00> -> (|00> + |01> + |10>)/sqrt(3)``."""
    c = Circuit(2).ry(0, 2 * math.acos(math.sqrt(2 / 3)))
    _anticontrolled_ry(c, 0, 1, math.pi / 2)
    return c


def build_joint_projection() -> Circuit:
    """Adjoint of :func:`joint_preparation`; outcome ``00`` projects onto the 3-path state."""
    return joint_preparation().inverse()


def joint_pair_projections() -> list[tuple[Circuit, int]]:
    """Pair projections of :data:`PATH_PAIRS` over :data:`JOINT_PATHS`."""
    return [build_pair_projection(2, JOINT_PATHS[j], JOINT_PATHS[k]) for j, k in PATH_PAIRS]


def all_pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))
