"""Counter-based, splittable random streams.

Every stream is a Philox generator keyed by a campaign seed plus a tuple of
non-negative integers (state index, circuit index, repetition, ...). Two
calls with the same key always produce the same stream, independent of the
order in which streams are created, which is what makes parallel campaigns
bit-reproducible.
"""

from __future__ import annotations

import numpy as np


def stream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for ``(seed, *key)``."""
    if seed < 0 or any(k < 0 for k in key):
        raise ValueError("seed and key components must be non-negative")
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def as_generator(seed: int | np.random.Generator) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return stream(int(seed))
