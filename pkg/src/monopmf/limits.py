"""Gaussian limit fluctuations of the three estimators and their closed forms.

The root-n fluctuation of the empirical pmf converges to a centered
Gaussian vector Y with covariance p_x d_{xx'} - p_x p_{x'}, realized here
as Y_x = W_x - p_x * sum(W) from independent W_x ~ N(0, p_x).  The
fluctuations of the rearrangement and Grenander estimators are obtained by
applying the corresponding operator to Y within each constancy block of
the truth.  Under a uniform truth the partial sums of Y form a discrete
Brownian bridge, whose least-concave-majorant geometry drives the
touchpoint and zero-majorant statistics below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .operators import constancy_blocks, gren, pool_segments
from .pmf import Pmf
from .rng import make_generator

#: Absolute tolerance for hull-contact detection.
CONTACT_TOL = 1e-12

_CHUNK = 1 << 15


@dataclass(frozen=True)
class LimitDraw:
    """One joint realization of the limit fluctuations (Y, Y^R, Y^G)."""

    y: np.ndarray
    y_rear: np.ndarray
    y_gren: np.ndarray
    truth: Pmf


@dataclass(frozen=True)
class AsymptoticReport:
    """Closed-form limit moments of the fluctuation processes at a truth p.

    e_sq_l2_*  : expected squared l2 norm of the fluctuation vector;
    e_hell_*   : expected weighted sum of squares sum_x Y_x^2 / p_x (the
                 empirical value is kappa, the largest support index);
    e_l1_emp   : expected l1 norm of the empirical fluctuation.
    The Grenander values are no larger, with equality exactly when p is
    strictly decreasing.
    """

    e_sq_l2_emp: float
    e_sq_l2_gren: float
    e_hell_emp: float
    e_hell_gren: float
    e_l1_emp: float


def draw_limit(p: Pmf, seed: int) -> LimitDraw:
    """One draw of (Y, Y^R, Y^G) at truth p; pure in (p, seed)."""
    y, y_rear, y_gren = draw_limit_batch(p, 1, seed)
    return LimitDraw(y[0], y_rear[0], y_gren[0], p)


def draw_limit_batch(p: Pmf, reps: int, seed: int):
    """Vectorized draws: three (reps, K+1) arrays (y, y_rear, y_gren)."""
    if not p.monotone:
        raise ValueError("limit draws require a monotone truth")
    if reps < 1:
        raise ValueError("reps must be positive")
    probs = p.probs
    blocks = constancy_blocks(p)
    rng = make_generator(seed)
    w = rng.standard_normal((int(reps), probs.size)) * np.sqrt(probs)
    y = w - probs * w.sum(axis=1, keepdims=True)
    y_rear = y.copy()
    y_gren = y.copy()
    for r, s in blocks:
        if s > r:
            seg = y[:, r : s + 1]
            y_rear[:, r : s + 1] = -np.sort(-seg, axis=1)
            y_gren[:, r : s + 1] = [gren(row) for row in seg]
    return y, y_rear, y_gren


def harmonic(k: int) -> float:
    """H_k = sum_{i=1}^{k} 1/i."""
    return float(sum(1.0 / i for i in range(1, int(k) + 1)))


def asymptotics(p: Pmf) -> AsymptoticReport:
    """Closed-form limit moments from the constancy-block decomposition.

    Over a block of size c at level theta the Grenander fluctuation
    contributes sum_{j=1}^{c} theta*(1/j - theta) to the squared l2 norm
    and sum_{j=1}^{c} (1/j - theta) to the weighted sum of squares.
    """
    if not p.monotone:
        raise ValueError("asymptotics require a monotone truth")
    probs = p.probs
    e_sq_l2_emp = float(np.sum(probs * (1.0 - probs)))
    e_l1_emp = float(math.sqrt(2.0 / math.pi) * np.sum(np.sqrt(probs * (1.0 - probs))))
    e_sq_l2_gren = 0.0
    e_hell_gren = 0.0
    for r, s in constancy_blocks(p):
        theta = float(probs[r])
        size = s - r + 1
        h = harmonic(size)
        e_sq_l2_gren += theta * (h - size * theta)
        e_hell_gren += h - size * theta
    return AsymptoticReport(
        e_sq_l2_emp=e_sq_l2_emp,
        e_sq_l2_gren=e_sq_l2_gren,
        e_hell_emp=float(p.support_max),
        e_hell_gren=e_hell_gren,
        e_l1_emp=e_l1_emp,
    )


def touch_count(z) -> int:
    """Number of contacts between the cumulative sums of z and their LCM.

    The walk starts at (0, 0); contacts are counted over j = 1..k (the
    endpoint always touches).  Hull segments come from the same pooling
    routine as `gren`; contact is |hull_j - S_j| <= 1e-12.
    """
    v = np.asarray(z, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("touch_count requires a non-empty 1-D sequence")
    sums = np.concatenate(([0.0], np.cumsum(v)))
    _, lengths = pool_segments(v)
    count = 0
    start = 0  # walk index of the current segment's left vertex
    for c in lengths:
        end = start + c
        slope = (sums[end] - sums[start]) / c
        for j in range(start + 1, end + 1):
            if abs(sums[start] + slope * (j - start) - sums[j]) <= CONTACT_TOL:
                count += 1
        start = end
    return count


def sparre_andersen_expectation(k: int) -> float:
    """Expected touchpoint count for k i.i.d. increments: H_k.

    Counts contacts over j = 1..k including the endpoint; the interior
    contacts j = 1..k-1 alone have mean H_k - 1.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    return harmonic(k)


def gren_zero_probability(y: int, reps: int, seed: int) -> float:
    """Monte Carlo estimate of P(gren(Y) == 0) under uniform truth on {0..y}.

    The event is that the discrete Brownian bridge (the cumulative sums of
    Y) stays at or below zero, in which case its least concave majorant is
    the zero line.
    """
    y = int(y)
    if y < 0:
        raise ValueError("y must be a non-negative integer")
    if reps < 1:
        raise ValueError("reps must be positive")
    if y == 0:
        return 1.0
    scale = math.sqrt(1.0 / (y + 1))
    rng = make_generator(seed)
    hits = 0
    remaining = int(reps)
    while remaining > 0:
        m = min(_CHUNK, remaining)
        w = rng.standard_normal((m, y + 1)) * scale
        fluct = w - w.mean(axis=1, keepdims=True)
        bridge = np.cumsum(fluct[:, :-1], axis=1)  # interior points; endpoint is 0
        hits += int(np.count_nonzero(bridge.max(axis=1) <= 0.0))
        remaining -= m
    return hits / float(reps)


def flat_block_gren_reference(theta: float, tau: int, reps: int, seed: int) -> np.ndarray:
    """Reference draws of the within-block Grenander limit on a flat block.

    Realizes sqrt(theta/tau) * (sqrt(1 - theta*tau) * Z + tau * gren(B))
    where Z is standard normal and B is the centered vector of tau i.i.d.
    N(0, 1/tau) variables (covariance delta/tau - 1/tau^2), independent of
    Z.  Distributionally equal to the block coordinates produced by
    `draw_limit`, but built by an unrelated route; used as a cross-check.
    """
    tau = int(tau)
    if tau < 1:
        raise ValueError("tau must be a positive integer")
    if not 0.0 < theta * tau <= 1.0 + 1e-12:
        raise ValueError("theta * tau must lie in (0, 1]")
    rng = make_generator(seed)
    z = rng.standard_normal(int(reps))
    w = rng.standard_normal((int(reps), tau)) / math.sqrt(tau)
    centered = w - w.mean(axis=1, keepdims=True)
    pooled = np.array([gren(row) for row in centered])
    slack = math.sqrt(max(1.0 - theta * tau, 0.0))
    return math.sqrt(theta / tau) * (slack * z[:, None] + tau * pooled)
