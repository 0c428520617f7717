import logging
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qfbench import circuits as C
from qfbench import estimators as E
from qfbench.errors import InvalidIntervalError, InvalidParameterError, UnstableStatisticError
from qfbench.harness.campaign import sample_sorkin_params
from qfbench.rng import stream
from qfbench.sim import CountsTable, exact_probabilities, run_circuit, sample_counts
from qfbench.stats import (
    THREE_SIGMA_LEVEL,
    Estimate,
    bootstrap,
    bootstrap_many,
    compatible,
    intervals_overlap,
    sigma_interval,
)

SQ2 = 1 / math.sqrt(2)


def p0(P):
    return P[0][..., 0]


def test_level():
    assert abs(THREE_SIGMA_LEVEL - 0.9973) < 1e-4


def test_degenerate_counts():
    e = bootstrap([CountsTable.from_array([10_000, 0])], p0, 1000, seed=1)
    assert (e.value, e.stderr, e.ci_low, e.ci_high) == (1.0, 0.0, 1.0, 1.0)


def test_constant_statistic():
    counts = sample_counts([0.4, 0.6], 500, 2)
    e = bootstrap([counts], lambda P: np.full(np.shape(P[0])[:-1], 0.25), 200, seed=0)
    assert e.stderr == 0 and e.value == 0.25


def test_determinism():
    counts = [sample_counts([0.2, 0.3, 0.4, 0.1], 1000, 4)]
    a = bootstrap(counts, p0, 500, seed=9)
    b = bootstrap(counts, p0, 500, seed=9)
    c = bootstrap(counts, p0, 500, seed=10)
    assert a == b and a != c


def test_vectorized_and_loop_paths_agree():
    counts = [sample_counts([0.2, 0.3, 0.4, 0.1], 1000, 4)]
    a = bootstrap(counts, p0, 300, seed=1)
    b = bootstrap(counts, p0, 300, seed=1, vectorized=False)
    assert a.value == b.value and a.stderr == pytest.approx(b.stderr, rel=1e-12)


def test_parameter_errors():
    c = [sample_counts([0.5, 0.5], 100, 0)]
    with pytest.raises(InvalidParameterError):
        bootstrap(c, p0, 50)
    with pytest.raises(InvalidParameterError):
        bootstrap([], p0, 100)


def test_discards_and_unstable():
    # statistic undefined whenever outcome 1 is absent from a resample
    c = [CountsTable.from_array([995, 5])]

    def ratio(P):
        q = P[0][..., 1]
        return np.where(q > 0, P[0][..., 0] / np.where(q > 0, q, 1), np.nan)

    e = bootstrap(c, ratio, 1000, seed=0)
    assert 0 < e.n_discarded <= 100 and e.n_resamples == 1000 - e.n_discarded
    with pytest.raises(UnstableStatisticError):
        bootstrap([CountsTable.from_array([999, 1])], ratio, 1000, seed=0)


def test_instability_warning_logged(caplog):
    c = [sample_counts([0.5, 0.5], 1000, 3)]
    # a statistic whose point value is far from every resample
    stat = lambda P: np.where(np.ndim(P[0]) == 1, 5.0, P[0][..., 0])  # noqa: E731
    with caplog.at_level(logging.WARNING):
        bootstrap(c, stat, 200, seed=0)
    assert "bootstrap instability" in caplog.text


def test_sigma_interval_examples():
    e = Estimate(1.0, 0.02, 0.95, 1.05)
    lo, hi = sigma_interval(e, 3)
    assert lo == pytest.approx(0.94) and hi == pytest.approx(1.06)
    assert sigma_interval(Estimate.exact(0.5)) == (0.5, 0.5)
    assert sigma_interval(e, 0) == (1.0, 1.0)
    with pytest.raises(InvalidParameterError):
        sigma_interval(Estimate(1.0, math.inf, 0, 2))


def test_compatible_examples():
    assert compatible((-0.01, 0.02), 0)
    assert compatible((0.94, 1.06), 1)
    assert not compatible((0.5, 0.8), 1)
    with pytest.raises(InvalidIntervalError):
        compatible((1, 0), 0.5)


def test_overlap():
    assert intervals_overlap((0, 1), (1, 2))
    assert not intervals_overlap((0, 1), (1.1, 2))
    with pytest.raises(InvalidIntervalError):
        intervals_overlap((2, 1), (0, 1))


@settings(max_examples=100, deadline=None)
@given(st.floats(-5, 5), st.floats(0, 2), st.floats(0, 6), st.floats(-10, 10))
def test_interval_properties(v, s, k, t):
    e = Estimate(v, s, v - s, v + s)
    lo, hi = sigma_interval(e, k)
    assert lo <= v <= hi
    assert compatible((lo, hi), t) == (lo <= t <= hi)


def test_coverage_bernoulli():
    hits = 0
    for trial in range(500):
        c = sample_counts([0.3, 0.7], 10_000, stream(11, trial))
        e = bootstrap([c], p0, 1000, seed=stream(12, trial))
        hits += e.ci_low <= 0.3 <= e.ci_high
    assert hits >= 495


def test_stderr_scaling_gamma():
    x, y = C.QubitPrepParams(1.1, 0.4), C.QubitPrepParams(2.0, 2.5)
    spec = C.SuperpositionSpec()
    pair = exact_probabilities(run_circuit(C.build_peres_pair(x, y, spec)))
    prod = exact_probabilities(run_circuit(C.build_peres_unentangled(x, y)))

    def g(P):
        return E.gamma_array(P[0][..., 1], P[1][..., 1], P[1][..., 2], spec.alpha, spec.beta)

    def mean_stderr(shots):
        out = []
        for s in range(50):
            tables = [sample_counts(pair, shots, stream(s, 0, shots)), sample_counts(prod, shots, stream(s, 1, shots))]
            out.append(bootstrap(tables, g, 300, seed=stream(s, 2, shots)).stderr)
        return float(np.mean(out))

    ratio = mean_stderr(10_000) / mean_stderr(40_000)
    assert 2 / 1.3 <= ratio <= 2 * 1.3


def test_kappa3_ci_contains_zero():
    hits = 0
    for trial in range(200):
        prep = sample_sorkin_params(stream(21, trial))
        settings_ = [C.THREE_PATH_SETTING, *C.two_path_settings(), C.SINGLES_SETTING]
        probs = [exact_probabilities(run_circuit(C.build_sorkin_measurement(prep, *s))) for s in settings_]
        tables = [sample_counts(p, 10_000, stream(22, trial, i)) for i, p in enumerate(probs)]
        s = [C.SORKIN_PATHS[j] for j in (1, 2, 3)]
        k3 = lambda P: E.kappa3(P[0][..., 0], P[1][..., 0], P[2][..., 0], P[3][..., 0],  # noqa: E731
                                P[4][..., s[0]], P[4][..., s[1]], P[4][..., s[2]])
        e = bootstrap(tables, k3, 1000, seed=stream(23, trial))
        hits += e.ci_low <= 0 <= e.ci_high
    assert hits >= 198


def test_bootstrap_many_shares_resamples():
    c = [sample_counts([0.5, 0.5], 1000, 0)]
    out = bootstrap_many(c, {"a": p0, "b": lambda P: 1 - P[0][..., 0]}, 400, seed=5)
    assert out["a"].stderr == pytest.approx(out["b"].stderr, rel=1e-12)
    assert out["a"].ci_low == pytest.approx(1 - out["b"].ci_high)
