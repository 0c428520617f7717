"""Point estimates, bootstrap confidence intervals and interval tests."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import InvalidIntervalError, InvalidParameterError, UnstableStatisticError
from .rng import as_generator
from .sim import CountsTable

log = logging.getLogger(__name__)

DEFAULT_RESAMPLES = 1000
DEFAULT_SIGMA_K = 3.0
#: two-sided coverage of a 3-sigma normal interval
THREE_SIGMA_LEVEL = math.erf(3 / math.sqrt(2))
MAX_DISCARD_FRACTION = 0.10


@dataclass(frozen=True)
class Estimate:
    value: float
    stderr: float
    ci_low: float
    ci_high: float
    n_resamples: int = 0
    sigma_k: float = DEFAULT_SIGMA_K
    n_discarded: int = 0

    @classmethod
    def exact(cls, value: float, sigma_k: float = DEFAULT_SIGMA_K) -> "Estimate":
        """Zero-width estimate for a noiseless (exact-probability) value."""
        value = float(value)
        return cls(value, 0.0, value, value, 0, sigma_k, 0)

    def sigma_interval(self, k: float | None = None) -> tuple[float, float]:
        return sigma_interval(self, self.sigma_k if k is None else k)


def sigma_interval(e: Estimate, k: float = DEFAULT_SIGMA_K) -> tuple[float, float]:
    if not math.isfinite(e.stderr):
        raise InvalidParameterError("stderr must be finite")
    return e.value - k * e.stderr, e.value + k * e.stderr


def compatible(interval: tuple[float, float], target: float) -> bool:
    low, high = interval
    if low > high:
        raise InvalidIntervalError(f"interval ({low}, {high}) has low > high")
    return low <= target <= high


def intervals_overlap(a: tuple[float, float], b: tuple[float, float]) -> bool:
    for lo, hi in (a, b):
        if lo > hi:
            raise InvalidIntervalError(f"interval ({lo}, {hi}) has low > high")
    return a[0] <= b[1] and b[0] <= a[1]


Statistic = Callable[[list[np.ndarray]], "float | np.ndarray"]


def _evaluate(statistic: Statistic, probs: list[np.ndarray], batch: int | None, vectorized: bool):
    if batch is None:
        try:
            return float(np.asarray(statistic(probs), dtype=float))
        except ArithmeticError:
            return math.nan
    if vectorized:
        out = np.asarray(statistic(probs), dtype=float)
        return np.broadcast_to(out, (batch,)).astype(float)
    out = np.empty(batch)
    for r in range(batch):
        try:
            out[r] = float(statistic([p[r] for p in probs]))
        except ArithmeticError:
            out[r] = np.nan
    return out


def bootstrap_many(
    counts_set: Sequence[CountsTable],
    statistics: Mapping[str, Statistic],
    resamples: int = DEFAULT_RESAMPLES,
    seed: int | np.random.Generator = 0,
    *,
    level: float = THREE_SIGMA_LEVEL,
    sigma_k: float = DEFAULT_SIGMA_K,
    vectorized: bool = True,
) -> dict[str, Estimate]:
    """Percentile bootstrap of several statistics sharing the same resamples.

    Each statistic receives one frequency array per counts table, shaped
    ``(K,)`` for the point value and ``(resamples, K)`` for the batch. A
    non-finite result marks that resample as undefined; it is discarded.
    Raises :class:`UnstableStatisticError` if the point value is undefined or
    more than 10% of resamples are discarded.
    """
    if resamples < 100:
        raise InvalidParameterError("need at least 100 resamples")
    if not counts_set:
        raise InvalidParameterError("counts_set is empty")
    rng = as_generator(seed)
    freqs = [c.frequencies() for c in counts_set]
    batches = [rng.multinomial(c.shots, f, size=resamples) / c.shots for c, f in zip(counts_set, freqs)]
    tail = (1.0 - level) / 2.0

    results = {}
    for name, stat in statistics.items():
        value = _evaluate(stat, freqs, None, vectorized)
        if not math.isfinite(value):
            raise UnstableStatisticError(f"{name} undefined on the observed counts")
        draws = _evaluate(stat, batches, resamples, vectorized)
        ok = np.isfinite(draws)
        discarded = int(resamples - ok.sum())
        if discarded > MAX_DISCARD_FRACTION * resamples:
            raise UnstableStatisticError(
                f"{name}: {discarded}/{resamples} resamples undefined"
            )
        good = draws[ok]
        stderr = float(np.std(good, ddof=1))
        lo, hi = np.quantile(good, [tail, 1.0 - tail])
        lo, hi = float(lo), float(hi)
        if not lo <= value <= hi:
            log.warning("bootstrap instability: %s=%r outside percentile CI [%r, %r]", name, value, lo, hi)
        if discarded:
            log.info("%s: discarded %d/%d undefined resamples", name, discarded, resamples)
        results[name] = Estimate(value, stderr, lo, hi, int(ok.sum()), sigma_k, discarded)
    return results


def bootstrap(
    counts_set: Sequence[CountsTable],
    statistic: Statistic,
    resamples: int = DEFAULT_RESAMPLES,
    seed: int | np.random.Generator = 0,
    **kwargs,
) -> Estimate:
    """Single-statistic form of :func:`bootstrap_many`."""
    return bootstrap_many(counts_set, {"statistic": statistic}, resamples, seed, **kwargs)["statistic"]
