"""OpenQASM 2.0 export (and a loader for the same subset).

Qubit ``i`` of a :class:`~qfbench.sim.Circuit` is written as ``q[i]`` and
measured into ``c[i]``. Note that tools reading the classical register as a
little-endian integer will report outcome ``|01>`` as ``"10"``.
"""

from __future__ import annotations

import math
import re

from ..errors import InvalidGateError, UnsupportedError
from ..sim import Circuit, Gate

_HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'
_NAMES = {"RX": "rx", "RY": "ry", "RZ": "rz", "H": "h", "CNOT": "cx"}


def _angle(x: float) -> str:
    return format(x, ".17g")


def export_qasm(circuit: Circuit) -> str:
    lines = [_HEADER + f"qreg q[{circuit.n_qubits}];", f"creg c[{circuit.n_qubits}];"]
    for g in circuit.gates:
        name = _NAMES.get(g.kind)
        if name is None:
            raise UnsupportedError(f"gate {g.kind} has no QASM mapping")
        qubits = ",".join(f"q[{t}]" for t in g.targets)
        if g.kind in ("RX", "RY", "RZ"):
            lines.append(f"{name}({_angle(g.angle)}) {qubits};")
        else:
            lines.append(f"{name} {qubits};")
    for i in range(circuit.n_qubits):
        lines.append(f"measure q[{i}] -> c[{i}];")
    return "\n".join(lines) + "\n"


_GATE_RE = re.compile(r"^(rx|ry|rz|h|cx)\s*(?:\(([^)]*)\))?\s+(.+)$")
_QUBIT_RE = re.compile(r"^q\[(\d+)\]$")


def _eval_angle(text: str) -> float:
    expr = text.strip()
    if not re.fullmatch(r"[0-9eE+\-*/. ()pi]+", expr):
        raise InvalidGateError(f"unsupported angle expression {text!r}")
    return float(eval(expr, {"__builtins__": {}}, {"pi": math.pi}))  # noqa: S307


def load_qasm(text: str) -> Circuit:
    """Parse the QASM subset produced by :func:`export_qasm`."""
    body = re.sub(r"//[^\n]*", "", text)
    n_qubits = None
    gates = []
    inverse = {v: k for k, v in _NAMES.items()}
    for stmt in (s.strip() for s in body.split(";")):
        if not stmt or stmt.startswith(("OPENQASM", "include", "creg", "measure", "barrier")):
            continue
        m = re.fullmatch(r"qreg\s+q\[(\d+)\]", stmt)
        if m:
            n_qubits = int(m.group(1))
            continue
        m = _GATE_RE.match(stmt)
        if not m:
            raise UnsupportedError(f"unsupported QASM statement {stmt!r}")
        name, angle, args = m.groups()
        targets = []
        for a in args.split(","):
            qm = _QUBIT_RE.match(a.strip())
            if not qm:
                raise UnsupportedError(f"unsupported operand {a!r}")
            targets.append(int(qm.group(1)))
        kind = inverse[name]
        gates.append(Gate(kind, tuple(targets), _eval_angle(angle) if angle is not None else 0.0))
    if n_qubits is None:
        raise UnsupportedError("missing qreg declaration")
    return Circuit(n_qubits, gates)
