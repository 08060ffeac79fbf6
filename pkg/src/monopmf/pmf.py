"""Finite-support probability mass functions on {0, ..., K}.

A decreasing pmf on the non-negative integers is a mixture of discrete
uniforms; every constructor here either builds such a mixture directly or
truncates an infinite-support family to finite support.  The empirical
estimator is formed from observed counts and carries no shape guarantee.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import make_generator

#: Absolute tolerance for "sums to one" checks on probability vectors.
SUM_TOL = 1e-12

#: Default residual tail mass at which infinite-support families are truncated.
DEFAULT_TAIL_TOL = 1e-12


def _as_readonly(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("expected a non-empty 1-D sequence")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Pmf:
    """Probability mass function with support {0, ..., K}.

    `probs[x]` is the probability of x; the last entry must be positive so
    that K is the true support maximum.  `monotone` is set by constructors
    that guarantee a non-increasing mass function, in which case the
    mixture bound probs[x] <= 1/(x+1) also holds.
    """

    probs: np.ndarray
    monotone: bool = False

    def __post_init__(self):
        probs = _as_readonly(self.probs)
        object.__setattr__(self, "probs", probs)
        if np.any(probs < 0):
            raise ValueError("pmf entries must be non-negative")
        total = float(probs.sum())
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"pmf entries must sum to 1, got {total!r}")
        if probs[-1] <= 0:
            raise ValueError("trailing zero entries are not allowed; trim the support")
        if self.monotone:
            if np.any(np.diff(probs) > SUM_TOL):
                raise ValueError("monotone pmf must be non-increasing")
            bound = 1.0 / (np.arange(probs.size) + 1.0)
            if np.any(probs > bound + SUM_TOL):
                raise ValueError("monotone pmf must satisfy probs[x] <= 1/(x+1)")

    @property
    def support_size(self) -> int:
        return int(self.probs.size)

    @property
    def support_max(self) -> int:
        """Largest support point K."""
        return int(self.probs.size - 1)


@dataclass(frozen=True)
class Counts:
    """Observed frequencies per support point from an i.i.d. sample of size n."""

    counts: np.ndarray
    n: int

    def __post_init__(self):
        counts = _as_readonly(self.counts, dtype=np.int64)
        object.__setattr__(self, "counts", counts)
        if self.n < 1:
            raise ValueError("sample size n must be positive")
        if np.any(counts < 0):
            raise ValueError("counts must be non-negative")
        if int(counts.sum()) != self.n:
            raise ValueError("counts must sum to n")
        if counts[-1] == 0:
            raise ValueError("last count must be positive (K_obs is the max observed value)")


@dataclass(frozen=True)
class MixingWeights:
    """Weights of the uniform-mixture representation of a pmf.

    Entries sum to one by telescoping; they may be negative when derived
    from a non-monotone (raw empirical) pmf.
    """

    weights: np.ndarray

    def __post_init__(self):
        weights = _as_readonly(self.weights)
        object.__setattr__(self, "weights", weights)
        total = float(weights.sum())
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"mixing weights must sum to 1, got {total!r}")


def uniform_pmf(y: int) -> Pmf:
    """Uniform pmf on {0, ..., y}."""
    y = int(y)
    if y < 0:
        raise ValueError("y must be a non-negative integer")
    return Pmf(np.full(y + 1, 1.0 / (y + 1)), monotone=True)


def geometric_pmf(theta: float, tail_tol: float = DEFAULT_TAIL_TOL) -> Pmf:
    """Geometric pmf (1-theta)*theta**x, truncated and renormalized.

    Support is cut at the smallest K whose residual tail mass theta**(K+1)
    falls below `tail_tol`; the deficit is redistributed proportionally,
    which preserves monotonicity.
    """
    theta = float(theta)
    if not 0.0 <= theta < 1.0:
        raise ValueError("theta must lie in [0, 1)")
    if not 0.0 < tail_tol < 1.0:
        raise ValueError("tail_tol must lie in (0, 1)")
    if theta == 0.0:
        return Pmf(np.array([1.0]), monotone=True)
    # smallest K with theta**(K+1) < tail_tol
    k = max(0, math.ceil(math.log(tail_tol) / math.log(theta)) - 1)
    while theta ** (k + 1) >= tail_tol:
        k += 1
    x = np.arange(k + 1)
    probs = (1.0 - theta) * theta**x
    probs /= probs.sum()
    return Pmf(probs, monotone=True)


def mixture_of_uniforms(weights, ys) -> Pmf:
    """Pmf of the mixture sum_i weights[i] * uniform{0..ys[i]}.

    `ys` must be strictly increasing non-negative integers and `weights`
    positive reals summing to one.
    """
    w = np.asarray(weights, dtype=float)
    y = np.asarray(ys, dtype=np.int64)
    if w.ndim != 1 or y.ndim != 1 or w.size != y.size or w.size == 0:
        raise ValueError("weights and ys must be non-empty sequences of equal length")
    if np.any(w <= 0):
        raise ValueError("mixture weights must be positive")
    if abs(float(w.sum()) - 1.0) > SUM_TOL:
        raise ValueError("mixture weights must sum to 1")
    if np.any(y < 0) or np.any(np.diff(y) <= 0):
        raise ValueError("ys must be strictly increasing non-negative integers")
    probs = np.zeros(int(y[-1]) + 1)
    for wi, yi in zip(w, y):
        probs[: yi + 1] += wi / (yi + 1.0)
    return Pmf(probs, monotone=True)


def sample(p: Pmf, n: int, seed: int) -> Counts:
    """Draw n i.i.d. observations from p and tabulate them.

    Inverse-CDF sampling on a counter-based generator: identical
    (p, n, seed) triples produce identical counts on every platform.
    """
    if n < 1:
        raise ValueError("sample size n must be positive")
    rng = make_generator(seed)
    cum = np.cumsum(p.probs)
    cum[-1] = 1.0  # guard against float shortfall; uniforms are < 1
    idx = np.searchsorted(cum, rng.random(int(n)), side="right")
    counts = np.bincount(idx, minlength=p.support_size)
    k_obs = int(np.nonzero(counts)[0][-1])
    return Counts(counts[: k_obs + 1], n=int(n))


def empirical_pmf(c: Counts) -> Pmf:
    """Relative frequencies counts/n; interior zeros are retained."""
    return Pmf(c.counts / float(c.n), monotone=False)


# ---------------------------------------------------------------------------
# Text formats: one support point per line, "x<TAB>value", ascending x, no gaps.

def format_pmf(p: Pmf) -> str:
    return "".join(f"{x}\t{v:.17g}\n" for x, v in enumerate(p.probs))


def format_counts(c: Counts) -> str:
    return "".join(f"{x}\t{int(v)}\n" for x, v in enumerate(c.counts))


def _parse_table(text: str, label: str):
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"{label} line {lineno}: expected 'x<TAB>value'")
        try:
            x = int(parts[0])
        except ValueError:
            raise ValueError(f"{label} line {lineno}: bad support point {parts[0]!r}") from None
        if x != len(rows):
            raise ValueError(f"{label} line {lineno}: support points must be 0,1,... without gaps")
        rows.append(parts[1])
    if not rows:
        raise ValueError(f"{label}: no data lines")
    return rows


def parse_pmf(text: str, monotone: bool = False) -> Pmf:
    values = [float(v) for v in _parse_table(text, "pmf")]
    return Pmf(np.array(values), monotone=monotone)


def parse_counts(text: str) -> Counts:
    values = [int(v) for v in _parse_table(text, "counts")]
    arr = np.array(values, dtype=np.int64)
    return Counts(arr, n=int(arr.sum()))
