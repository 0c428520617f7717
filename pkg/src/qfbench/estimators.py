"""Interference statistics: gamma, F, kappa_3 and kappa_n, plus verdicts.

The ``*_array`` variants accept broadcastable arrays (for bootstrap batches)
and return ``nan`` where a statistic is undefined; the scalar functions raise
instead.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import DegenerateStateError, DimensionMismatchError, InvalidParameterError
from .sim import StateVector

#: minimum gamma denominator for shot-based probabilities
EPS_DEN_SAMPLED = 1e-3
#: minimum gamma denominator for exact probabilities
EPS_DEN_EXACT = 1e-9
#: numerical slack used when classifying zero-width (exact) intervals
CLASSIFY_ATOL = 1e-9

COMPLEX_SUFFICIENT = "complex-sufficient"
QUATERNIONS_INDICATED = "quaternions-indicated"
SUPERPOSITION_VIOLATED = "superposition-violated"
REAL_SUFFICIENT = "real-sufficient"
COMPLEX_OR_QUATERNIONIC = "complex-or-quaternionic-needed"
INCONCLUSIVE = "inconclusive"
BORN_INTACT = "born-rule-intact"
BORN_VIOLATED = "born-rule-violated"


def gamma_denominator(p1, p2, alpha: float, beta: float):
    return 2.0 * alpha * beta * np.sqrt(np.clip(np.asarray(p1) * np.asarray(p2), 0.0, None))


def gamma_array(p12, p1, p2, alpha: float, beta: float, eps_den: float = EPS_DEN_SAMPLED):
    p12, p1, p2 = np.asarray(p12, float), np.asarray(p1, float), np.asarray(p2, float)
    den = gamma_denominator(p1, p2, alpha, beta)
    num = p12 - alpha**2 * p1 - beta**2 * p2
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(den >= eps_den, num / np.where(den > 0, den, 1.0), np.nan)


def gamma(p12: float, p1: float, p2: float, alpha: float, beta: float,
          eps_den: float = EPS_DEN_SAMPLED) -> float:
    """Normalised interference term ``(p12 - a^2 p1 - b^2 p2) / (2 a b sqrt(p1 p2))``.

    Never clamped: values outside ``[-1, 1]`` are the superposition-violation
    signal.
    """
    if alpha <= 0 or beta <= 0:
        raise InvalidParameterError("alpha and beta must be positive")
    den = float(gamma_denominator(p1, p2, alpha, beta))
    if den < eps_den:
        raise DegenerateStateError(f"gamma denominator {den:.3g} below {eps_den:g}")
    return (p12 - alpha**2 * p1 - beta**2 * p2) / den


def f_statistic(g12, g23, g31):
    """``g12^2 + g23^2 + g31^2 - 2 g12 g23 g31``; works elementwise on arrays."""
    return g12 * g12 + g23 * g23 + g31 * g31 - 2.0 * g12 * g23 * g31


def cos_phi_oracle(psi1: StateVector, psi2: StateVector, path_a: int = 0b01,
                   path_b: int = 0b10, tol: float = 1e-12) -> float:
    """Cosine of the relative phase of two path amplitudes of ``|psi1>|psi2>``.

    Computed from exact amplitudes as ``cos arg(<A|psi><psi|B>)``.
    """
    joint = psi1.kron(psi2).amplitudes
    xa, xb = joint[path_a], joint[path_b]
    if abs(xa) < tol or abs(xb) < tol:
        raise DegenerateStateError("path amplitude vanishes; relative phase undefined")
    return math.cos(cmath.phase(xa * xb.conjugate()))


@dataclass(frozen=True)
class PeresTriple:
    gamma12: float
    gamma23: float
    gamma31: float
    f: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "f", float(f_statistic(self.gamma12, self.gamma23, self.gamma31)))


def kappa3(p123, p12, p13, p23, p1, p2, p3):
    """Third-order interference ``3 p123 - 2(p12 + p13 + p23) + p1 + p2 + p3``."""
    return 3.0 * p123 - 2.0 * (p12 + p13 + p23) + (p1 + p2 + p3)


def kappa_n(p_all, p_pairs: Mapping[tuple[int, int], float] | Sequence, p_singles: Sequence,
            n: int):
    """n-th order interference from normalised path probabilities.

    ``p_all`` is the probability of the uniform n-path projection, ``p_pairs``
    those of the ``(|j> + |k>)/sqrt(2)`` projections (a mapping over
    ``(j, k)`` with ``j < k`` or a sequence in ``itertools.combinations``
    order) and ``p_singles`` the single-path probabilities. They are converted
    to squared sums: ``|sum x|^2 = n p_all``, ``|x_j + x_k|^2 = 2 p_jk``,
    ``|x_j|^2 = p_j``.
    """
    if n < 3:
        raise InvalidParameterError("kappa_n needs n >= 3")
    singles = list(p_singles)
    if len(singles) != n:
        raise DimensionMismatchError(f"expected {n} single-path probabilities, got {len(singles)}")
    if isinstance(p_pairs, Mapping):
        keys = list(itertools.combinations(range(n), 2))
        if set(p_pairs) != set(keys):
            raise DimensionMismatchError("pair map must cover every (j, k) with j < k")
        pairs = [p_pairs[key] for key in keys]
    else:
        pairs = list(p_pairs)
    if len(pairs) != n * (n - 1) // 2:
        raise DimensionMismatchError(f"expected {n * (n - 1) // 2} pair probabilities")
    return n * p_all - 2.0 * sum(pairs) + (n - 2) * sum(singles)


@dataclass(frozen=True)
class SorkinRecord:
    p_all: float
    p_pairs: dict
    p_singles: tuple
    kappa: float = field(init=False)

    def __post_init__(self):
        probs = [self.p_all, *self.p_pairs.values(), *self.p_singles]
        if any(not -1e-12 <= p <= 1 + 1e-12 for p in probs):
            raise InvalidParameterError("probabilities must lie in [0, 1]")
        n = len(self.p_singles)
        object.__setattr__(self, "kappa", float(kappa_n(self.p_all, self.p_pairs, self.p_singles, n)))


# -- verdicts -----------------------------------------------------------------

def _intervals(estimates, atol):
    if not estimates:
        raise InvalidParameterError("need at least one estimate to classify")
    out = []
    for e in estimates:
        lo, hi = e.sigma_interval()
        out.append((lo - atol, hi + atol))
    return out


def classify_peres(f_estimates, atol: float = CLASSIFY_ATOL) -> str:
    """Complex / quaternionic / violated verdict from 3-sigma intervals on F."""
    ivs = _intervals(f_estimates, atol)
    if any(hi < -1 or lo > 1 for lo, hi in ivs):
        return SUPERPOSITION_VIOLATED
    if any(lo > -1 and hi < 1 for lo, hi in ivs):
        return QUATERNIONS_INDICATED
    if all(lo <= 1 <= hi for lo, hi in ivs):
        return COMPLEX_SUFFICIENT
    return INCONCLUSIVE


def classify_gamma(gamma_estimates, atol: float = CLASSIFY_ATOL) -> str:
    """Real / complex-or-quaternionic / violated verdict from 3-sigma intervals on gamma."""
    ivs = _intervals(gamma_estimates, atol)
    if any(hi < -1 or lo > 1 for lo, hi in ivs):
        return SUPERPOSITION_VIOLATED
    if any(lo > -1 and hi < 1 for lo, hi in ivs):
        return COMPLEX_OR_QUATERNIONIC
    if all(lo <= 1 <= hi or lo <= -1 <= hi for lo, hi in ivs):
        return REAL_SUFFICIENT
    return INCONCLUSIVE


def classify_sorkin(kappa_estimates, atol: float = CLASSIFY_ATOL) -> str:
    ivs = _intervals(kappa_estimates, atol)
    return BORN_INTACT if all(lo <= 0 <= hi for lo, hi in ivs) else BORN_VIOLATED
