import itertools
import math

import numpy as np
import pytest

from qfbench import circuits as C
from qfbench.errors import InvalidParameterError, UnsupportedError
from qfbench.sim import Circuit, StateVector, exact_probabilities, run_circuit

from conftest import qubit_vector, random_qubit, random_state

SQ2 = 1 / math.sqrt(2)


def probs(c, initial=None):
    return exact_probabilities(run_circuit(c, initial))


def sorkin_direct(p):
    """Three-level state written out from its defining formula (no circuit)."""
    c1, s1 = math.cos(p.theta1 / 2), math.sin(p.theta1 / 2)
    c2, s2 = math.cos(p.theta2 / 2), math.sin(p.theta2 / 2)
    e = lambda x: np.exp(1j * x)  # noqa: E731
    return np.array([
        c1 * e(-p.phi1 / 2),
        0,
        s1 * e(p.phi1 / 2) * c2 * e(-p.phi2 / 2),
        s1 * e(p.phi1 / 2) * s2 * e(p.phi2 / 2),
    ])


def random_sorkin(rng):
    return C.SorkinPrepParams(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi),
                              rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))


# -- single-qubit preparation ---------------------------------------------------

def test_prep_poles():
    assert abs(probs(C.prep_single_qubit(C.QubitPrepParams(0, 1.3)))[0] - 1) < 1e-15
    assert abs(probs(C.prep_single_qubit(C.QubitPrepParams(math.pi, 0)))[1] - 1) < 1e-15


def test_prep_matches_direct_construction():
    p = C.QubitPrepParams(math.pi / 2, math.pi / 3)
    direct = StateVector([SQ2, np.exp(1j * math.pi / 3) * SQ2])
    out = run_circuit(C.prep_single_qubit(p))
    assert abs(abs(np.vdot(direct.amplitudes, out.amplitudes)) - 1) < 1e-14


def test_param_validation():
    with pytest.raises(InvalidParameterError):
        C.QubitPrepParams(-0.1, 0)
    with pytest.raises(InvalidParameterError):
        C.QubitPrepParams(1.0, 2 * math.pi)
    with pytest.raises(InvalidParameterError):
        C.SuperpositionSpec(1.0)
    with pytest.raises(InvalidParameterError):
        C.SorkinPrepParams(0, 0, 4, 0)


def test_superposition_spec():
    s = C.SuperpositionSpec(0.6)
    assert abs(s.alpha**2 + s.beta**2 - 1) < 1e-12
    assert abs(math.cos(s.theta_m / 2) - 0.6) < 1e-15


# -- Peres circuits -----------------------------------------------------------

def test_peres_pair_zero_states():
    z = C.QubitPrepParams(0, 0)
    for alpha in (0.2, SQ2, 0.9):
        assert probs(C.build_peres_pair(z, z, C.SuperpositionSpec(alpha)))[C.PERES_PAIR_OUTCOME] < 1e-30


def test_peres_pair_antialigned():
    # psi1 = |0>, psi2 = |1>: |<Psi+|01>|^2 = alpha^2 = 1/2
    p = probs(C.build_peres_pair(C.QubitPrepParams(0), C.QubitPrepParams(math.pi), C.SuperpositionSpec()))
    assert abs(p[C.PERES_PAIR_OUTCOME] - 0.5) < 1e-15


def test_peres_pair_oracle_sweep(rng):
    for _ in range(50):
        x, y = random_qubit(rng), random_qubit(rng)
        spec = C.SuperpositionSpec(rng.uniform(0.05, 0.95))
        psi = np.kron(qubit_vector(x), qubit_vector(y))
        target = np.array([0, spec.alpha, spec.beta, 0])
        expected = abs(np.vdot(target, psi)) ** 2
        got = probs(C.build_peres_pair(x, y, spec))[C.PERES_PAIR_OUTCOME]
        assert abs(got - expected) < 1e-10


def test_peres_unentangled_examples(rng):
    assert abs(probs(C.build_peres_unentangled(C.QubitPrepParams(0), C.QubitPrepParams(math.pi)))[1] - 1) < 1e-15
    half = C.QubitPrepParams(math.pi / 2, 0)
    p = probs(C.build_peres_unentangled(half, half))
    np.testing.assert_allclose(p[[1, 2]], [0.25, 0.25], atol=1e-15)
    for _ in range(20):
        x, y = random_qubit(rng), random_qubit(rng)
        p = probs(C.build_peres_unentangled(x, y))
        assert abs(p[0b01] - x.a**2 * y.b**2) < 1e-14
        assert abs(p[0b10] - x.b**2 * y.a**2) < 1e-14


# -- Sorkin circuits ----------------------------------------------------------

def test_sorkin_prep_examples():
    assert abs(probs(C.build_sorkin_prep(C.SorkinPrepParams(0, 0, 0, 0)))[0] - 1) < 1e-15
    assert abs(probs(C.build_sorkin_prep(C.SorkinPrepParams(math.pi, 0, math.pi, 0)))[3] - 1) < 1e-15
    p = probs(C.build_sorkin_prep(C.SorkinPrepParams(2 * math.acos(1 / math.sqrt(3)), 0, math.pi / 2, 0)))
    np.testing.assert_allclose(p[[0, 2, 3]], [1 / 3] * 3, atol=1e-14)


def test_sorkin_prep_matches_formula_and_has_no_01(rng):
    for _ in range(100):
        params = random_sorkin(rng)
        out = run_circuit(C.build_sorkin_prep(params)).amplitudes
        assert abs(out[0b01]) < 1e-12
        np.testing.assert_allclose(out, sorkin_direct(params), atol=1e-13)


def test_three_path_setting_target():
    t1, t2 = C.THREE_PATH_SETTING
    assert t1 == 2 * math.acos(1 / math.sqrt(3)) and t2 == 2 * math.acos(SQ2)
    target = run_circuit(C.sorkin_unitary(t1, 0, t2, 0)).amplitudes
    np.testing.assert_allclose(target, [1 / math.sqrt(3), 0, 1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)


def test_two_path_settings_closed_form():
    s = C.two_path_settings()
    assert len(s) == 3
    np.testing.assert_allclose(s[0], (2 * math.acos(SQ2), 0.0))  # |00> + |10>
    np.testing.assert_allclose(s[1], (2 * math.acos(SQ2), math.pi))  # |00> + |11>
    np.testing.assert_allclose(s[2], (math.pi, 2 * math.acos(SQ2)))  # |10> + |11>


def test_sorkin_measurement_oracle_sweep(rng):
    targets = {C.THREE_PATH_SETTING: np.array([1, 0, 1, 1]) / math.sqrt(3)}
    for (j, k), setting in zip(C.PATH_PAIRS, C.two_path_settings()):
        v = np.zeros(4)
        v[C.SORKIN_PATHS[j]] = v[C.SORKIN_PATHS[k]] = SQ2
        targets[setting] = v
    for _ in range(100):
        params = random_sorkin(rng)
        psi = sorkin_direct(params)
        for (t1, t2), target in targets.items():
            got = probs(C.build_sorkin_measurement(params, t1, t2))[0]
            assert abs(got - abs(np.vdot(target, psi)) ** 2) < 1e-10


def test_singles_setting_is_computational_basis(rng):
    params = random_sorkin(rng)
    p = probs(C.build_sorkin_measurement(params, *C.SINGLES_SETTING))
    np.testing.assert_allclose(p, np.abs(sorkin_direct(params)) ** 2, atol=1e-14)


def test_adjoint_grid():
    for t1, t2 in itertools.product(np.linspace(0, math.pi, 5), repeat=2):
        prep = C.SorkinPrepParams(t1, 0, t2, 0)
        assert abs(probs(C.build_sorkin_measurement(prep, t1, t2))[0] - 1) < 1e-12


def test_sorkin_setting_degenerate_first_amplitude():
    t1, t2 = C.sorkin_setting(0, 0, 1)
    target = run_circuit(C.sorkin_unitary(t1, 0, t2, 0)).amplitudes
    np.testing.assert_allclose(target, [0, 0, 0, 1], atol=1e-15)
    with pytest.raises(InvalidParameterError):
        C.sorkin_setting(0, 0, 0)


# -- uniform / pair / joint projections ---------------------------------------------

def test_uniform_projection_examples(rng):
    assert abs(probs(C.build_uniform_projection(2, 1), StateVector([SQ2, SQ2]))[0] - 1) < 1e-15
    assert abs(probs(C.build_uniform_projection(4, 2))[0] - 0.25) < 1e-15
    for n in (1, 2, 3):
        for _ in range(100):
            x = random_state(rng, n)
            got = probs(C.build_uniform_projection(1 << n, n), StateVector(x))[0]
            assert abs(got - abs(x.sum()) ** 2 / (1 << n)) < 1e-10


def test_uniform_projection_unsupported():
    with pytest.raises(UnsupportedError):
        C.build_uniform_projection(3, 2)
    with pytest.raises(UnsupportedError):
        C.build_uniform_projection(4, 3)


@pytest.mark.parametrize("n", [2, 3])
def test_pair_projection_oracle(n, rng):
    for j, k in itertools.combinations(range(1 << n), 2):
        circ, outcome = C.build_pair_projection(n, j, k)
        for _ in range(10):
            x = random_state(rng, n)
            got = probs(circ, StateVector(x))[outcome]
            assert abs(got - abs(x[j] + x[k]) ** 2 / 2) < 1e-10


def test_joint_projection_examples(rng):
    proj = C.build_joint_projection()
    assert probs(proj, StateVector.from_label("11"))[0] < 1e-30
    assert abs(probs(proj, StateVector.from_label("00"))[0] - 1 / 3) < 1e-15
    for _ in range(100):
        x, y = random_qubit(rng), random_qubit(rng)
        psi = np.kron(qubit_vector(x), qubit_vector(y))
        got = probs(C.build_peres_unentangled(x, y) + proj)[0]
        assert abs(got - abs(psi[0] + psi[1] + psi[2]) ** 2 / 3) < 1e-10


def test_joint_pair_projections_labels(rng):
    x, y = random_qubit(rng), random_qubit(rng)
    psi = np.kron(qubit_vector(x), qubit_vector(y))
    prep = C.build_peres_unentangled(x, y)
    for (j, k), (proj, outcome) in zip(C.PATH_PAIRS, C.joint_pair_projections()):
        a, b = C.JOINT_PATHS[j], C.JOINT_PATHS[k]
        assert abs(probs(prep + proj)[outcome] - abs(psi[a] + psi[b]) ** 2 / 2) < 1e-12


def test_circuit_widths():
    assert isinstance(C.build_joint_projection(), Circuit)
    assert C.build_sorkin_prep(C.SorkinPrepParams(1, 1, 1, 1)).n_qubits == 2
