import math

import numpy as np
import pytest

from qfbench import circuits as C
from qfbench.errors import UnsupportedError
from qfbench.harness.qasm import export_qasm, load_qasm
from qfbench.rng import stream
from qfbench.sim import Circuit, exact_probabilities, run_circuit


def random_circuit(rng, n_qubits, depth):
    c = Circuit(n_qubits)
    for _ in range(depth):
        kind = rng.integers(5)
        q = int(rng.integers(n_qubits))
        if kind == 0:
            c.rx(q, float(rng.uniform(-2 * math.pi, 2 * math.pi)))
        elif kind == 1:
            c.ry(q, float(rng.uniform(-2 * math.pi, 2 * math.pi)))
        elif kind == 2:
            c.rz(q, float(rng.uniform(-2 * math.pi, 2 * math.pi)))
        elif kind == 3:
            c.h(q)
        elif n_qubits > 1:
            t = int((q + 1 + rng.integers(n_qubits - 1)) % n_qubits)
            c.cx(q, t)
    return c


def test_empty_circuit():
    assert export_qasm(Circuit(1)) == (
        'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[1];\ncreg c[1];\nmeasure q[0] -> c[0];\n'
    )


def test_h_cnot_mapping():
    text = export_qasm(Circuit(2).h(0).cx(0, 1))
    assert "h q[0];\ncx q[0],q[1];\nmeasure q[0] -> c[0];\nmeasure q[1] -> c[1];\n" in text


def test_angle_precision_and_stability():
    c = Circuit(1).ry(0, 1 / 3)
    text = export_qasm(c)
    assert "ry(0.33333333333333331) q[0];" in text
    assert export_qasm(c) == text
    assert load_qasm(text).gates[0].angle == 1 / 3


def test_internal_roundtrip():
    rng = stream(31)
    for _ in range(50):
        c = random_circuit(rng, int(rng.integers(1, 4)), 12)
        back = load_qasm(export_qasm(c))
        np.testing.assert_allclose(exact_probabilities(run_circuit(back)),
                                   exact_probabilities(run_circuit(c)), atol=1e-10)


def test_loader_rejects_unknown():
    with pytest.raises(UnsupportedError):
        load_qasm('OPENQASM 2.0;\nqreg q[1];\nu3(0,0,0) q[0];\n')
    with pytest.raises(UnsupportedError):
        load_qasm("h q[0];")


def _qiskit_probs(text, n_qubits):
    qiskit = pytest.importorskip("qiskit")
    from qiskit.quantum_info import Statevector

    qc = qiskit.QuantumCircuit.from_qasm_str(text)
    qc.remove_final_measurements()
    little = Statevector(qc).probabilities()
    # qiskit indexes qubit 0 as the least significant bit; ours is the most significant
    idx = np.arange(1 << n_qubits)
    rev = np.zeros_like(idx)
    for q in range(n_qubits):
        rev |= ((idx >> q) & 1) << (n_qubits - 1 - q)
    return little[rev]


def test_external_roundtrip_random():
    rng = stream(32)
    for _ in range(50):
        n = int(rng.integers(1, 4))
        c = random_circuit(rng, n, 15)
        np.testing.assert_allclose(_qiskit_probs(export_qasm(c), n),
                                   exact_probabilities(run_circuit(c)), atol=1e-10)


def test_external_roundtrip_builders():
    prep = C.SorkinPrepParams(1.0, 2.0, 0.5, 4.0)
    for c in (C.build_sorkin_measurement(prep, *C.THREE_PATH_SETTING), C.build_joint_projection(),
              C.build_peres_pair(C.QubitPrepParams(1, 2), C.QubitPrepParams(2, 1), C.SuperpositionSpec(0.6))):
        np.testing.assert_allclose(_qiskit_probs(export_qasm(c), c.n_qubits),
                                   exact_probabilities(run_circuit(c)), atol=1e-10)
