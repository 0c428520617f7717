"""Residuals of the algebraic identities behind the F and kappa statistics."""

from __future__ import annotations

import itertools

import numpy as np

from .estimators import f_statistic, kappa_n
from .rng import stream


def cosine_identity_residual(n: int = 100_000, seed: int = 0) -> float:
    """Max ``|cos^2 a + cos^2 b + cos^2 c - 2 cos a cos b cos c - 1|`` with ``c = -a - b``."""
    rng = stream(seed, 0)
    a, b = rng.uniform(-np.pi, np.pi, size=(2, n)) * 4
    c = -a - b
    return float(np.max(np.abs(f_statistic(np.cos(a), np.cos(b), np.cos(c)) - 1.0)))


def path_probabilities(x: np.ndarray) -> tuple[np.ndarray, list[np.ndarray], np.ndarray]:
    """Born-rule path probabilities of unnormalised amplitudes ``x`` (shape ``(..., n)``).

    Returns ``(p_all, pair list in combinations order, singles)`` with the
    normalised projections ``|sum x|^2 / n``, ``|x_j + x_k|^2 / 2``, ``|x_j|^2``.
    """
    n = x.shape[-1]
    p_all = np.abs(x.sum(axis=-1)) ** 2 / n
    pairs = [np.abs(x[..., j] + x[..., k]) ** 2 / 2 for j, k in itertools.combinations(range(n), 2)]
    singles = np.abs(x) ** 2
    return p_all, pairs, singles


def sorkin_identity_residual(n: int = 10_000, n_paths: int = 3, seed: int = 0) -> float:
    """Max ``|kappa_n|`` over random complex amplitude tuples normalised to unit norm."""
    rng = stream(seed, 1, n_paths)
    x = rng.normal(size=(n, n_paths)) + 1j * rng.normal(size=(n, n_paths))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    p_all, pairs, singles = path_probabilities(x)
    k = kappa_n(p_all, pairs, [singles[:, j] for j in range(n_paths)], n_paths)
    return float(np.max(np.abs(k)))
