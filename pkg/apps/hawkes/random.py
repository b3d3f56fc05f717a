"""Counter-based random streams keyed by (seed, *key)."""

import numpy as np


def rng_stream(seed: int, *key: int) -> np.random.Generator:
    """
    Independent Philox generator for one (seed, key) pair.

    Streams for different keys never overlap, so work split by key (agents,
    stages, rounds) draws the same numbers regardless of execution order.
    """
    sequence = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(sequence))
