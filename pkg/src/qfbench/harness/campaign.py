"""Experiment campaigns over random states.

Every state slot is an independent work item. Its randomness comes from
streams keyed by ``(seed, state index, purpose, ...)``, so a campaign is
bit-reproducible regardless of worker count or execution order.
"""

from __future__ import annotations

import dataclasses
import hashlib
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .. import circuits as C
from .. import estimators as E
from ..errors import CampaignAbortedError, UnstableStatisticError, UnsupportedError
from ..noise import noisy_probabilities
from ..rng import stream
from ..sim import Circuit, CountsTable, exact_probabilities, run_circuit, sample_counts
from ..stats import Estimate, bootstrap_many
from .config import MODES, NOISY_MODES, SAMPLED_MODES, ExperimentConfig

log = logging.getLogger(__name__)

MAX_STATE_ATTEMPTS = 100

# stream purposes
_STATE, _SHOTS, _BOOT = 0, 1, 2

HALF = 1 / math.sqrt(2)


def sample_haar_qubit(rng: np.random.Generator) -> C.QubitPrepParams:
    """Bloch-sphere uniform qubit: ``theta = arccos(1 - 2u)``, ``phi`` uniform."""
    u, v = rng.random(2)
    return C.QubitPrepParams(math.acos(1.0 - 2.0 * u), 2 * math.pi * v)


def sample_sorkin_params(rng: np.random.Generator) -> C.SorkinPrepParams:
    """Parameters of a Haar-random state on the three-level register.

    A normalised complex Gaussian triple on ``|00>, |10>, |11>`` is mapped
    onto the preparation angles (exact up to global phase).
    """
    z = rng.normal(size=3) + 1j * rng.normal(size=3)
    z /= np.linalg.norm(z)
    r0, r1, r2 = np.abs(z)
    a0, a1, a2 = np.angle(z)
    theta1 = 2 * math.acos(min(1.0, r0))
    theta2 = 2 * math.atan2(r2, r1)
    phi2 = (a2 - a1) % (2 * math.pi)
    phi1 = ((a1 + a2) / 2 - a0) % (2 * math.pi)
    # (a1 + a2)/2 is only defined mod pi; pick the branch reproducing a1 - a0
    if abs(np.exp(1j * (phi1 - phi2 / 2)) - np.exp(1j * (a1 - a0))) > 1e-6:
        phi1 = (phi1 + math.pi) % (2 * math.pi)
    return C.SorkinPrepParams(theta1, phi1 % (2 * math.pi), theta2, phi2)


def kappa_n_ansatz(rng: np.random.Generator, n_qubits: int) -> tuple[Circuit, dict]:
    """Random-state preparation for the n-path test.

    Fixed layout: sampled single-qubit preparations, a CNOT ladder
    ``0->1->...``, then a layer of uniformly sampled RZ rotations.
    """
    preps = [sample_haar_qubit(rng) for _ in range(n_qubits)]
    rz = [float(x) for x in 2 * math.pi * rng.random(n_qubits)]
    c = Circuit(n_qubits)
    for q, p in enumerate(preps):
        c.ry(q, p.theta).rz(q, p.phi)
    for q in range(n_qubits - 1):
        c.cx(q, q + 1)
    for q, angle in enumerate(rz):
        c.rz(q, angle)
    params = {"preps": [[p.theta, p.phi] for p in preps], "rz": rz}
    return c, params


# -- per-state plans ---------------------------------------------------------

StatBuilder = Callable[[float], dict[str, Callable]]


@dataclass
class StatePlan:
    """Everything needed to evaluate one state slot."""

    params: dict
    circuits: list[tuple[str, Circuit]]
    statistics: StatBuilder  # eps_den -> {name: statistic}
    targets: dict[str, tuple[float, ...]]
    kind: dict[str, str]  # statistic name -> "gamma" | "F" | "kappa"
    degenerate_log: list[str] = field(default_factory=list)


def _peres_pairs(triple):
    return [(triple[0], triple[1]), (triple[1], triple[2]), (triple[2], triple[0])]


def peres_plan(triple, alpha: float = HALF) -> StatePlan:
    """Plan for a fixed ``(psi1, psi2, psi3)`` triple."""
    spec = C.SuperpositionSpec(alpha)
    a, b = spec.alpha, spec.beta
    pairs = _peres_pairs(triple)
    names = ("12", "23", "31")
    circs = [(f"pair{n}", C.build_peres_pair(x, y, spec)) for n, (x, y) in zip(names, pairs)]
    circs += [(f"product{n}", C.build_peres_unentangled(x, y)) for n, (x, y) in zip(names, pairs)]
    i01, i10 = C.PERES_PATHS[1], C.PERES_PATHS[2]
    out = C.PERES_PAIR_OUTCOME

    def statistics(eps):
        def g(i):
            return lambda P: E.gamma_array(P[i][..., out], P[3 + i][..., i01], P[3 + i][..., i10], a, b, eps)

        g12, g23, g31 = g(0), g(1), g(2)
        return {
            "gamma12": g12,
            "gamma23": g23,
            "gamma31": g31,
            "F": lambda P: E.f_statistic(g12(P), g23(P), g31(P)),
        }

    params = {
        "states": [[p.theta, p.phi] for p in triple],
        "alpha": a,
    }
    targets = {"gamma12": (1.0, -1.0), "gamma23": (1.0, -1.0), "gamma31": (1.0, -1.0), "F": (1.0,)}
    kind = {"gamma12": "gamma", "gamma23": "gamma", "gamma31": "gamma", "F": "F"}
    return StatePlan(params, circs, statistics, targets, kind)


def _peres_degeneracy(triple, alpha):
    spec = C.SuperpositionSpec(alpha)
    for name, (x, y) in zip(("12", "23", "31"), _peres_pairs(triple)):
        p01, p10 = (x.a * y.b) ** 2, (x.b * y.a) ** 2
        den = float(E.gamma_denominator(p01, p10, spec.alpha, spec.beta))
        if den < E.EPS_DEN_SAMPLED:
            return f"pair {name} gamma denominator {den:.3g}"
    return None


def _resample(index, config, draw, degenerate):
    log_lines = []
    for attempt in range(MAX_STATE_ATTEMPTS):
        candidate = draw(stream(config.seed, index, _STATE, attempt))
        reason = degenerate(candidate)
        if reason is None:
            return candidate, log_lines
        log_lines.append(f"attempt {attempt}: {reason}; resampled")
        log.info("state %d %s", index, log_lines[-1])
    raise CampaignAbortedError(
        f"state {index}: no non-degenerate draw in {MAX_STATE_ATTEMPTS} attempts"
    )


def plan_peres(config: ExperimentConfig, index: int) -> StatePlan:
    def draw(rng):
        triple = [sample_haar_qubit(rng) for _ in range(3)]
        if config.real_only:
            triple = [C.QubitPrepParams(p.theta, 0.0) for p in triple]
        return triple

    triple, log_lines = _resample(index, config, draw, lambda t: _peres_degeneracy(t, config.alpha))
    plan = peres_plan(triple, config.alpha)
    plan.degenerate_log = log_lines
    return plan


def sorkin_plan(prep: C.SorkinPrepParams) -> StatePlan:
    settings = [C.THREE_PATH_SETTING, *C.two_path_settings()]
    names = ["three_path", "pair12", "pair13", "pair23"]
    circs = [(n, C.build_sorkin_measurement(prep, t1, t2)) for n, (t1, t2) in zip(names, settings)]
    circs.append(("singles", C.build_sorkin_measurement(prep, *C.SINGLES_SETTING)))
    s1, s2, s3 = (C.SORKIN_PATHS[k] for k in (1, 2, 3))

    def statistics(eps):
        def k3(P):
            S = P[4]
            return E.kappa3(P[0][..., 0], P[1][..., 0], P[2][..., 0], P[3][..., 0],
                            S[..., s1], S[..., s2], S[..., s3])

        return {"kappa3": k3}

    params = {"sorkin": [prep.theta1, prep.phi1, prep.theta2, prep.phi2]}
    return StatePlan(params, circs, statistics, {"kappa3": (0.0,)}, {"kappa3": "kappa"})


def plan_sorkin(config: ExperimentConfig, index: int) -> StatePlan:
    prep, _ = _resample(index, config, sample_sorkin_params, lambda p: None)
    return sorkin_plan(prep)


def joint_plan(psi1: C.QubitPrepParams, psi2: C.QubitPrepParams) -> StatePlan:
    prep = C.build_peres_unentangled(psi1, psi2)
    circs = [("singles", prep), ("three_path", prep + C.build_joint_projection())]
    outcomes = [None, 0]
    for (j, k), (proj, outcome) in zip(C.PATH_PAIRS, C.joint_pair_projections()):
        circs.append((f"pair{j}{k}", prep + proj))
        outcomes.append(outcome)
    j1, j2, j3 = (C.JOINT_PATHS[k] for k in (1, 2, 3))

    def statistics(eps):
        def parts(P):
            S = P[0]
            singles = S[..., j1], S[..., j2], S[..., j3]
            pairs = [P[i][..., outcomes[i]] for i in (2, 3, 4)]  # 12, 13, 23
            return singles, pairs, P[1][..., 0]

        def k3(P):
            (p1, p2, p3), (p12, p13, p23), p123 = parts(P)
            total = p1 + p2 + p3
            with np.errstate(divide="ignore", invalid="ignore"):
                k = E.kappa3(p123, p12, p13, p23, p1, p2, p3) / total
            return np.where(total >= eps, k, np.nan)

        def g(which):
            def stat(P):
                (p1, p2, p3), (p12, p13, p23), _ = parts(P)
                if which == "12":
                    return E.gamma_array(p12, p1, p2, HALF, HALF, eps)
                if which == "23":
                    return E.gamma_array(p23, p2, p3, HALF, HALF, eps)
                return E.gamma_array(p13, p3, p1, HALF, HALF, eps)

            return stat

        g12, g23, g31 = g("12"), g("23"), g("31")
        return {
            "kappa3": k3,
            "gamma12": g12,
            "gamma23": g23,
            "gamma31": g31,
            "F": lambda P: E.f_statistic(g12(P), g23(P), g31(P)),
        }

    params = {"states": [[psi1.theta, psi1.phi], [psi2.theta, psi2.phi]]}
    targets = {"kappa3": (0.0,), "F": (1.0,)}
    kind = {"kappa3": "kappa", "F": "F"}
    for name in ("gamma12", "gamma23", "gamma31"):
        targets[name] = (1.0, -1.0)
        kind[name] = "gamma"
    return StatePlan(params, circs, statistics, targets, kind)


def _joint_degeneracy(pair):
    psi1, psi2 = pair
    x = exact_probabilities(run_circuit(C.build_peres_unentangled(psi1, psi2)))
    p = [x[C.JOINT_PATHS[k]] for k in (1, 2, 3)]
    for name, (u, v) in (("12", (p[0], p[1])), ("23", (p[1], p[2])), ("31", (p[2], p[0]))):
        den = float(E.gamma_denominator(u, v, HALF, HALF))
        if den < E.EPS_DEN_SAMPLED:
            return f"pair {name} gamma denominator {den:.3g}"
    if sum(p) < E.EPS_DEN_SAMPLED:
        return "three-path subspace weight too small"
    return None


def plan_joint(config: ExperimentConfig, index: int) -> StatePlan:
    def draw(rng):
        pair = [sample_haar_qubit(rng) for _ in range(2)]
        if config.real_only:
            pair = [C.QubitPrepParams(p.theta, 0.0) for p in pair]
        return pair

    pair, log_lines = _resample(index, config, draw, _joint_degeneracy)
    plan = joint_plan(*pair)
    plan.degenerate_log = log_lines
    return plan


def kappa_n_plan(prep: Circuit, n_paths: int, params: dict | None = None) -> StatePlan:
    nq = prep.n_qubits
    if n_paths != 1 << nq:
        raise UnsupportedError(f"{n_paths} paths need {n_paths.bit_length() - 1} qubits")
    circs = [("uniform", prep + C.build_uniform_projection(n_paths, nq)), ("singles", prep)]
    outcomes = []
    for j, k in C.all_pairs(n_paths):
        proj, outcome = C.build_pair_projection(nq, j, k)
        circs.append((f"pair_{j}_{k}", prep + proj))
        outcomes.append(outcome)
    name = f"kappa{n_paths}"

    def statistics(eps):
        def kn(P):
            pairs = [P[2 + i][..., o] for i, o in enumerate(outcomes)]
            singles = [P[1][..., j] for j in range(n_paths)]
            return E.kappa_n(P[0][..., 0], pairs, singles, n_paths)

        return {name: kn}

    return StatePlan(params or {}, circs, statistics, {name: (0.0,)}, {name: "kappa"})


def plan_kappa_n(config: ExperimentConfig, index: int) -> StatePlan:
    nq = config.n_qubits_kappa
    (prep, params), _ = _resample(index, config, lambda rng: kappa_n_ansatz(rng, nq), lambda c: None)
    return kappa_n_plan(prep, config.n_paths, params)


PLANNERS = {
    "peres": plan_peres,
    "sorkin": plan_sorkin,
    "joint": plan_joint,
    "kappa-n": plan_kappa_n,
}


# -- evaluation --------------------------------------------------------------

@dataclass
class ResultRecord:
    test: str
    state_index: int
    params: dict
    estimates: dict[str, dict[str, Estimate]] = field(default_factory=dict)
    counts_digest: dict[str, str] = field(default_factory=dict)
    verdicts: dict[str, dict[str, str]] = field(default_factory=dict)
    compatible: dict[str, dict[str, bool]] = field(default_factory=dict)
    degenerate_log: list[str] = field(default_factory=list)
    errors: dict[str, str] = field(default_factory=dict)
    aborted: bool = False


def _verdict(kind: str, est: Estimate) -> str:
    if kind == "gamma":
        return E.classify_gamma([est])
    if kind == "F":
        return E.classify_peres([est])
    return E.classify_sorkin([est])


def _is_compatible(est: Estimate, targets) -> bool:
    lo, hi = est.sigma_interval()
    lo, hi = lo - E.CLASSIFY_ATOL, hi + E.CLASSIFY_ATOL
    return any(lo <= t <= hi for t in targets)


def mode_probabilities(circuit: Circuit, mode: str, config: ExperimentConfig) -> np.ndarray:
    if mode in NOISY_MODES:
        return noisy_probabilities(circuit, config.noise.model(circuit.n_qubits))
    return exact_probabilities(run_circuit(circuit))


def evaluate_plan(plan: StatePlan, config: ExperimentConfig, index: int, test: str) -> ResultRecord:
    record = ResultRecord(test, index, plan.params, degenerate_log=list(plan.degenerate_log))
    for mode in config.modes:
        m = MODES.index(mode)
        probs = [mode_probabilities(c, mode, config) for _, c in plan.circuits]
        try:
            if mode in SAMPLED_MODES:
                tables: list[CountsTable] = [
                    sample_counts(p, config.shots, stream(config.seed, index, _SHOTS, m, i))
                    for i, p in enumerate(probs)
                ]
                record.counts_digest[mode] = _combined_digest(tables)
                stats = plan.statistics(E.EPS_DEN_SAMPLED)
                ests = bootstrap_many(tables, stats, config.resamples, stream(config.seed, index, _BOOT, m))
            else:
                stats = plan.statistics(E.EPS_DEN_EXACT)
                ests = {}
                for name, fn in stats.items():
                    value = float(fn(probs))
                    if not math.isfinite(value):
                        raise UnstableStatisticError(f"{name} undefined on exact probabilities")
                    ests[name] = Estimate.exact(value)
        except UnstableStatisticError as exc:
            record.errors[mode] = str(exc)
            log.warning("state %d mode %s: %s", index, mode, exc)
            continue
        record.estimates[mode] = ests
        record.verdicts[mode] = {n: _verdict(plan.kind[n], e) for n, e in ests.items()}
        record.compatible[mode] = {n: _is_compatible(e, plan.targets[n]) for n, e in ests.items()}
    return record


def _combined_digest(tables) -> str:
    h = hashlib.sha256("|".join(t.digest() for t in tables).encode())
    return h.hexdigest()[:16]


def run_state(config: ExperimentConfig, index: int) -> ResultRecord:
    try:
        plan = PLANNERS[config.test](config, index)
    except CampaignAbortedError as exc:
        log.error("%s", exc)
        return ResultRecord(config.test, index, {}, errors={"plan": str(exc)}, aborted=True)
    return evaluate_plan(plan, config, index, config.test)


def _run_state_args(args):
    return run_state(*args)


def run_campaign(config: ExperimentConfig, workers: int | None = None) -> list[ResultRecord]:
    """Evaluate every state slot; results are ordered by state index."""
    workers = config.workers if workers is None else workers
    items = [(config, i) for i in range(config.n_states)]
    if workers <= 1:
        return [run_state(c, i) for c, i in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_state_args, items, chunksize=max(1, len(items) // (4 * workers))))


def _with_test(config: ExperimentConfig, test: str) -> ExperimentConfig:
    if config.test == test:
        return config
    return dataclasses.replace(config, test=test)


def run_peres(config: ExperimentConfig) -> list[ResultRecord]:
    return run_campaign(_with_test(config, "peres"))


def run_sorkin(config: ExperimentConfig) -> list[ResultRecord]:
    return run_campaign(_with_test(config, "sorkin"))


def run_joint(config: ExperimentConfig) -> list[ResultRecord]:
    return run_campaign(_with_test(config, "joint"))


def run_kappa_n(config: ExperimentConfig) -> list[ResultRecord]:
    return run_campaign(_with_test(config, "kappa-n"))


def summarize(records: list[ResultRecord]) -> dict[str, dict[str, str]]:
    """Campaign-wide verdicts per mode, pooling every state's estimates."""
    out: dict[str, dict[str, str]] = {}
    modes = [m for m in MODES if any(m in r.estimates for r in records)]
    for mode in modes:
        ests = [r.estimates[mode] for r in records if mode in r.estimates]
        summary = {}
        gammas = [e for d in ests for n, e in d.items() if n.startswith("gamma")]
        fs = [d["F"] for d in ests if "F" in d]
        kappas = [e for d in ests for n, e in d.items() if n.startswith("kappa")]
        if gammas:
            summary["gamma"] = E.classify_gamma(gammas)
        if fs:
            summary["F"] = E.classify_peres(fs)
        if kappas:
            summary["kappa"] = E.classify_sorkin(kappas)
        out[mode] = summary
    return out
