"""Deterministic random number generation.

All randomness in the package flows through a counter-based Philox
generator keyed by an explicit 64-bit seed, so every sampling routine is a
pure function of its inputs.  Batch drivers derive one seed per work item
with :func:`mix_seed`, which makes results independent of execution order.
"""

from __future__ import annotations

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF


def make_generator(seed: int) -> np.random.Generator:
    """Philox generator keyed by a 64-bit unsigned seed."""
    if not 0 <= int(seed) <= _MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    return np.random.Generator(np.random.Philox(key=int(seed)))


def mix_seed(seed: int, index: int) -> int:
    """Derive the seed for work item `index` from a base seed.

    SplitMix64 finalizer over seed + (index+1)*golden-gamma; distinct
    (seed, index) pairs map to well-separated 64-bit keys.
    """
    z = (int(seed) + (int(index) + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64
