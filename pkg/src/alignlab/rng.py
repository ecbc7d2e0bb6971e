"""Seed handling for reproducible sampling.

Every sampling entry point takes a ``SeedLike``: an integer, a numpy
``SeedSequence``, or an already-constructed ``Generator``.  Monte Carlo
consumers derive one child stream per trial from ``(master seed, index)`` so
results do not depend on how trials are batched across workers.
"""

from __future__ import annotations

import numpy as np

SeedLike = int | np.random.SeedSequence | np.random.Generator


def as_generator(seed: SeedLike) -> np.random.Generator:
    """Return a Generator for an int / SeedSequence / Generator seed value."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def spawn_generator(master_seed: int, index: int) -> np.random.Generator:
    """Deterministic per-trial child stream of a master integer seed."""
    ss = np.random.SeedSequence(entropy=int(master_seed), spawn_key=(int(index),))
    return np.random.Generator(np.random.PCG64(ss))
