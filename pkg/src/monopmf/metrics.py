"""Distances between finite pmfs: Hellinger and the l_k family.

Sequences of unequal length are zero-padded on the right before the
distance is taken, so estimators with short observed support compare
cleanly against truths with longer support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class MetricKind:
    """Selector for a distance: Hellinger or l_k with k in [1, inf]."""

    name: str  # "hellinger" or "ell"
    k: float = math.nan

    def __post_init__(self):
        if self.name == "hellinger":
            return
        if self.name != "ell":
            raise ValueError(f"unknown metric {self.name!r}")
        if not (self.k >= 1.0):  # also rejects nan
            raise ValueError("l_k metrics require k >= 1")

    @staticmethod
    def hellinger() -> "MetricKind":
        return MetricKind("hellinger")

    @staticmethod
    def ell(k: float) -> "MetricKind":
        return MetricKind("ell", float(k))

    @staticmethod
    def parse(label: str) -> "MetricKind":
        """Parse a metric label: "hellinger", "l1", "l2", "linf", "l{k}"."""
        text = label.strip().lower()
        if text == "hellinger":
            return MetricKind.hellinger()
        if text.startswith("l"):
            body = text[1:]
            if body == "inf":
                return MetricKind.ell(math.inf)
            try:
                return MetricKind.ell(float(body))
            except ValueError:
                pass
        raise ValueError(f"unknown metric label {label!r}")

    @property
    def label(self) -> str:
        if self.name == "hellinger":
            return "hellinger"
        if math.isinf(self.k):
            return "linf"
        if self.k == int(self.k):
            return f"l{int(self.k)}"
        return f"l{self.k:g}"


def _padded(a, b) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    if x.ndim != 1 or y.ndim != 1:
        raise ValueError("distance expects 1-D sequences")
    n = max(x.size, y.size)
    if x.size < n:
        x = np.concatenate((x, np.zeros(n - x.size)))
    if y.size < n:
        y = np.concatenate((y, np.zeros(n - y.size)))
    return x, y


def distance(a, b, m: MetricKind) -> float:
    """Distance between sequences a and b under metric m.

    Hellinger returns H with H^2 = (1/2) * sum (sqrt(a) - sqrt(b))^2 and
    requires non-negative entries; ell(k) returns the k-norm of a - b and
    ell(inf) the sup norm.
    """
    x, y = _padded(a, b)
    if m.name == "hellinger":
        if np.any(x < 0) or np.any(y < 0):
            raise ValueError("Hellinger distance requires non-negative entries")
        return float(math.sqrt(0.5 * np.sum((np.sqrt(x) - np.sqrt(y)) ** 2)))
    diff = np.abs(x - y)
    if math.isinf(m.k):
        return float(diff.max())
    if m.k == 1.0:
        return float(diff.sum())
    if m.k == 2.0:
        return float(math.sqrt(np.sum(diff * diff)))
    return float(np.sum(diff**m.k) ** (1.0 / m.k))
