"""Closed Newton-Cotes rules, simple and composite, on uniform samples."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .core import SampleSet
from .exceptions import PanelMismatch, UnsupportedDegree

__all__ = ["RuleSpec", "SUPPORTED_DEGREES", "rule_weights", "simple_integral", "composite_integral"]

SUPPORTED_DEGREES = (1, 2, 3, 4)

_WEIGHTS = {
    1: (Fraction(1, 2), Fraction(1, 2)),
    2: (Fraction(1, 3), Fraction(4, 3), Fraction(1, 3)),
    3: (Fraction(3, 8), Fraction(9, 8), Fraction(9, 8), Fraction(3, 8)),
    4: (Fraction(14, 45), Fraction(64, 45), Fraction(24, 45), Fraction(64, 45), Fraction(14, 45)),
}

_SMOOTH_ORDER = {1: 2, 2: 4, 3: 4, 4: 6}

_NAMES = {1: "trapezoid", 2: "Simpson 1/3", 3: "Simpson 3/8", 4: "Boole"}


@dataclass(frozen=True)
class RuleSpec:
    """Degree-``n`` closed Newton-Cotes rule: ``h * sum(w_i f_i)`` over ``n`` intervals."""

    degree: int
    weights: tuple[Fraction, ...]
    smooth_order: int

    @property
    def panel_intervals(self) -> int:
        return self.degree

    @property
    def name(self) -> str:
        return _NAMES[self.degree]

    @property
    def float_weights(self) -> np.ndarray:
        return np.array([float(w) for w in self.weights])


@lru_cache(maxsize=None)
def rule_weights(n: int) -> RuleSpec:
    if n not in _WEIGHTS:
        raise UnsupportedDegree(f"rule degree must be one of {SUPPORTED_DEGREES}, got {n!r}")
    return RuleSpec(n, _WEIGHTS[n], _SMOOTH_ORDER[n])


def simple_integral(rule: RuleSpec, h: float, panel_values: Sequence[float]) -> float:
    values = np.asarray(panel_values, dtype=float)
    if values.shape != (rule.degree + 1,):
        raise ValueError(
            f"{rule.name} rule needs {rule.degree + 1} panel values, got {values.shape[0] if values.ndim else 0}"
        )
    if not h > 0:
        raise ValueError(f"h must be positive, got {h!r}")
    return h * math.fsum(rule.float_weights * values)


def composite_weights(rule: RuleSpec, m: int) -> np.ndarray:
    """Per-node weights of the composite rule on ``m`` intervals (factor ``h`` excluded)."""
    if m % rule.degree:
        raise PanelMismatch(
            f"{m} intervals cannot be split into {rule.name} panels of {rule.degree} interval(s)"
        )
    w = np.zeros(m + 1)
    fw = rule.float_weights
    for start in range(0, m, rule.degree):
        w[start : start + rule.degree + 1] += fw
    return w


def composite_integral(rule: RuleSpec, samples: SampleSet) -> float:
    """Sum of the simple rule over consecutive disjoint panels.

    Node contributions are accumulated with :func:`math.fsum` (correctly
    rounded), so the result does not depend on the number of panels through
    summation error.
    """
    w = composite_weights(rule, samples.grid.m)
    return samples.grid.h * math.fsum(w * samples.values)
