"""Monotone rearrangement and Grenander operators on finite sequences.

Both operators map an arbitrary real sequence to a non-increasing one with
the same total sum.  `rear` sorts; `gren` returns the left slopes of the
least concave majorant of the cumulative-sum graph anchored at (-1, 0),
computed with a single-pass monotone stack of hull segments (the pooled
form of the hull is exactly the pool-adjacent-violators fit).
"""

from __future__ import annotations

import numpy as np

from .pmf import MixingWeights, Pmf

#: Absolute tolerance used to detect equal values / hull contact.
FLAT_TOL = 1e-12


def rear(w) -> np.ndarray:
    """Values of w reordered to be non-increasing."""
    v = np.asarray(w, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("rear requires a non-empty 1-D sequence")
    return np.sort(v)[::-1].copy()


def pool_segments(values) -> tuple[list[float], list[int]]:
    """Hull segments of the least concave majorant of the running sums.

    Returns parallel lists (totals, lengths): segment i covers `lengths[i]`
    consecutive indices and has slope totals[i]/lengths[i].  Segments are
    pooled while a previous slope is strictly below the next one, so the
    emitted slopes are non-increasing.  Already non-increasing input is
    left untouched (every segment has length one).
    """
    totals: list[float] = []
    lengths: list[int] = []
    for x in values:
        t = float(x)
        c = 1
        # compare the divided means: they are what gets emitted, so the
        # output is non-increasing as floats, not just in exact arithmetic
        while totals and totals[-1] / lengths[-1] < t / c:
            t += totals.pop()
            c += lengths.pop()
        totals.append(t)
        lengths.append(c)
    return totals, lengths


def gren(w) -> np.ndarray:
    """Left slopes of the least concave majorant of the cumulative sums.

    The majorant is taken over the points {(j, sum_{i<=j} w_i): j=-1..K}
    with the empty sum at j=-1 equal to zero.  The output is non-increasing,
    sums to sum(w), and its partial sums dominate those of w.  Non-increasing
    input is returned bitwise unchanged.
    """
    v = np.asarray(w, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("gren requires a non-empty 1-D sequence")
    totals, lengths = pool_segments(v)
    out = np.empty_like(v)
    pos = 0
    for t, c in zip(totals, lengths):
        if c == 1:
            out[pos] = v[pos]  # untouched segment: keep the exact input value
        else:
            out[pos : pos + c] = t / c
        pos += c
    return out


def gren_oracle(w) -> np.ndarray:
    """Reference LCM slopes by explicit greedy chord construction, O(K^2).

    From each anchor point the next hull vertex is the point of maximal
    chord slope (farthest on ties).  Kept deliberately independent of
    `gren` so the two can cross-check each other.
    """
    v = np.asarray(w, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("gren_oracle requires a non-empty 1-D sequence")
    k = v.size - 1
    s = np.concatenate(([0.0], np.cumsum(v)))  # s[j+1] = sum_{i<=j} w_i
    out = np.empty_like(v)
    a = -1
    while a < k:
        best_b = a + 1
        best_slope = -np.inf
        for b in range(a + 1, k + 1):
            slope = (s[b + 1] - s[a + 1]) / (b - a)
            if slope >= best_slope:
                best_slope = slope
                best_b = b
        out[a + 1 : best_b + 1] = best_slope
        a = best_b
    return out


def constancy_blocks(p: Pmf) -> list[tuple[int, int]]:
    """Maximal index intervals [r, s] on which p is constant.

    Blocks are contiguous, ordered, and cover {0, ..., K}; across a block
    boundary the pmf strictly decreases.  Equality is detected with
    absolute tolerance 1e-12, which is exact for the package constructors.
    """
    if not p.monotone:
        raise ValueError("constancy blocks are defined for monotone pmfs")
    probs = p.probs
    blocks: list[tuple[int, int]] = []
    start = 0
    for x in range(1, probs.size):
        if abs(probs[x] - probs[x - 1]) > FLAT_TOL:
            blocks.append((start, x - 1))
            start = x
    blocks.append((start, probs.size - 1))
    return blocks


def limit_transform(y, blocks) -> tuple[np.ndarray, np.ndarray]:
    """Apply rear and gren within each block of a partition.

    Returns (y_rear, y_gren).  Singleton blocks are passed through
    unchanged, so for a strictly decreasing truth both outputs equal y.
    """
    v = np.asarray(y, dtype=float)
    if v.ndim != 1:
        raise ValueError("expected a 1-D sequence")
    expected_start = 0
    for r, s in blocks:
        if r != expected_start or s < r:
            raise ValueError("blocks must be contiguous, ordered, and disjoint")
        expected_start = s + 1
    if expected_start != v.size:
        raise ValueError("block partition does not cover the sequence")
    y_rear = v.copy()
    y_gren = v.copy()
    for r, s in blocks:
        if s > r:
            y_rear[r : s + 1] = rear(v[r : s + 1])
            y_gren[r : s + 1] = gren(v[r : s + 1])
    return y_rear, y_gren


def mixing_estimate(p) -> MixingWeights:
    """Mixing weights of the uniform-mixture representation.

    weights[x] = -(x+1) * (p[x+1] - p[x]) with p[K+1] = 0.  The weights
    telescope to sum(p) = 1; they are non-negative exactly when p is
    non-increasing, so the raw empirical plug-in may go negative.
    """
    probs = p.probs if isinstance(p, Pmf) else np.asarray(p, dtype=float)
    if probs.ndim != 1 or probs.size == 0:
        raise ValueError("expected a non-empty 1-D sequence")
    shifted = np.concatenate((probs[1:], [0.0]))
    weights = -(np.arange(probs.size) + 1.0) * (shifted - probs)
    return MixingWeights(weights)
