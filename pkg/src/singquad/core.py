"""Grid, sample and singularity data model shared by the other modules."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exceptions import InvalidGrid, MissingJumps, NodeCollision, OutOfRange

__all__ = [
    "DEFAULT_NODE_TOL",
    "UniformGrid",
    "SampleSet",
    "SingularitySpec",
    "SingularityLocation",
    "make_grid",
    "locate_singularity",
]

#: Fraction of ``h`` below which a singularity is considered to sit on a node.
DEFAULT_NODE_TOL = 1e-12


@dataclass(frozen=True)
class UniformGrid:
    """Uniform partition ``a + i*h``, ``i = 0..m``.

    Nodes are always derived from ``(a, h, m)``; they are never accumulated,
    so every consumer sees bit-identical abscissae.
    """

    a: float
    h: float
    m: int

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.h)):
            raise InvalidGrid(f"grid parameters must be finite, got a={self.a!r}, h={self.h!r}")
        if self.h <= 0:
            raise InvalidGrid(f"grid spacing must be positive, got h={self.h!r}")
        if int(self.m) != self.m or self.m < 1:
            raise InvalidGrid(f"grid needs at least one interval, got m={self.m!r}")
        object.__setattr__(self, "m", int(self.m))

    def node(self, i: int) -> float:
        return self.a + i * self.h

    @property
    def c(self) -> float:
        """Right endpoint, ``node(m)``."""
        return self.node(self.m)

    def nodes(self) -> np.ndarray:
        return self.a + np.arange(self.m + 1) * self.h


@dataclass(frozen=True)
class SampleSet:
    grid: UniformGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.shape[0] != self.grid.m + 1:
            raise InvalidGrid(
                f"expected {self.grid.m + 1} samples for a grid of {self.grid.m} intervals, "
                f"got shape {values.shape}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, grid: UniformGrid, func) -> SampleSet:
        return cls(grid, [func(x) for x in grid.nodes()])


@dataclass(frozen=True)
class SingularitySpec:
    """Singularity abscissa and the jumps ``[f^(k)] = f^(k)+ - f^(k)-`` at it."""

    xstar: float
    jumps: tuple[float, ...]

    def __post_init__(self):
        jumps = tuple(float(v) for v in self.jumps)
        if not jumps:
            raise MissingJumps("a singularity needs at least the jump in the function value")
        if not math.isfinite(self.xstar) or not all(math.isfinite(v) for v in jumps):
            raise InvalidGrid(f"singularity data must be finite: x={self.xstar!r}, jumps={jumps!r}")
        object.__setattr__(self, "jumps", jumps)
        object.__setattr__(self, "xstar", float(self.xstar))

    def require(self, order: int) -> tuple[float, ...]:
        """Jumps ``0..order``; longer vectors are truncated, shorter ones rejected."""
        if len(self.jumps) < order + 1:
            raise MissingJumps(
                f"singularity at x={self.xstar!r} provides {len(self.jumps)} jump(s), "
                f"{order + 1} required"
            )
        return self.jumps[: order + 1]


@dataclass(frozen=True)
class SingularityLocation:
    """Containing interval ``(x_j, x_j+1)`` and the distances to both nodes."""

    interval_index: int
    alpha_left: float
    alpha_right: float


def make_grid(a: float, c: float, m: int) -> UniformGrid:
    if not (math.isfinite(a) and math.isfinite(c)):
        raise InvalidGrid(f"endpoints must be finite, got [{a!r}, {c!r}]")
    if int(m) != m or m < 1:
        raise InvalidGrid(f"need at least one interval, got m={m!r}")
    if c <= a:
        raise InvalidGrid(f"empty interval [{a!r}, {c!r}]")
    return UniformGrid(float(a), (c - a) / m, int(m))


def locate_singularity(
    grid: UniformGrid, xstar: float, node_tol: float = DEFAULT_NODE_TOL
) -> SingularityLocation:
    """Find ``j`` with ``x_j < xstar <= x_j+1``.

    ``node_tol`` is a fraction of ``h``; a singularity closer than that to a
    node raises :class:`NodeCollision`. With ``node_tol=0`` a singularity
    exactly on a node is accepted and attributed to the interval on its left,
    i.e. the nodal sample is taken to belong to the right-hand branch.
    """
    if not 0 <= node_tol < 0.5:
        raise ValueError(f"node_tol must lie in [0, 0.5), got {node_tol!r}")
    if not (grid.a < xstar < grid.c):
        raise OutOfRange(f"singularity x={xstar!r} outside ({grid.a!r}, {grid.c!r})")

    j = min(max(int(math.floor((xstar - grid.a) / grid.h)), 0), grid.m - 1)
    while j > 0 and grid.node(j) >= xstar:
        j -= 1
    while j < grid.m - 1 and grid.node(j + 1) < xstar:
        j += 1

    left = xstar - grid.node(j)
    right = grid.node(j + 1) - xstar
    # derive the larger distance from the smaller so that left + right == h
    if left <= right:
        right = grid.h - left
    else:
        left = grid.h - right

    if min(left, right) < node_tol * grid.h:
        node = j if left < right else j + 1
        raise NodeCollision(
            f"singularity x={xstar!r} collides with node {node} (x={grid.node(node)!r})"
        )
    return SingularityLocation(j, left, right)
