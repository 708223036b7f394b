"""Grid-refinement experiments on the piecewise trigonometric test function.

Two protocols:

* simple rules: one panel on ``[a, c]``, singularity at ``(n_offset + d) h``;
  the interval is halved at every level;
* composite rules: a sequence of point counts over a fixed interval, with the
  singularity either following ``(n_offset + d) h`` or pinned per level.

Both produce a :class:`RefinementReport` whose CSV layout is fixed.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .core import DEFAULT_NODE_TOL, SampleSet, UniformGrid, make_grid
from .corrections import correct_precomputed
from .oracle import PiecewiseFunction, exact_integral, paper_test_function
from .rules import composite_integral, rule_weights

__all__ = [
    "CSV_HEADER",
    "FLOOR",
    "SimpleExperimentConfig",
    "CompositeExperimentConfig",
    "RefinementRow",
    "RefinementReport",
    "observed_order",
    "loglog_slope",
    "run_simple_refinement",
    "run_composite_refinement",
]

CSV_HEADER = ("level", "n", "h", "error_classical", "order_classical", "error_corrected", "order_corrected")

#: Order cell marker for errors at the roundoff floor.
FLOOR = "floor"

#: Relative error below which an order estimate is meaningless.
FLOOR_RTOL = 1e-15

FunctionFactory = Callable[[float, float, float], PiecewiseFunction]


def observed_order(E_i: float, E_next: float, n_i: float, n_next: float) -> float | None:
    """``ln(E_i / E_next) / ln(n_next / n_i)``; ``None`` when an error is not positive."""
    if n_i <= 0 or n_next <= 0 or n_i == n_next:
        raise ValueError(f"resolutions must be positive and distinct, got {n_i!r}, {n_next!r}")
    if not (E_i > 0 and E_next > 0):
        return None
    return math.log(E_i / E_next) / math.log(n_next / n_i)


def loglog_slope(h: Sequence[float], errors: Sequence[float], floor: float = 1e-12) -> float:
    """Least-squares slope of ``log(error)`` against ``log(h)`` over errors above ``floor``."""
    pts = [(math.log(x), math.log(e)) for x, e in zip(h, errors) if e > floor]
    if len(pts) < 2:
        raise ValueError("fewer than two errors above the floor")
    x, y = np.array(pts).T
    return float(np.polyfit(x, y, 1)[0])


@dataclass(frozen=True)
class SimpleExperimentConfig:
    degree: int = 1
    a: float = 0.0
    c: float = 0.5
    n_offset: int = 0
    d: float = 0.4
    levels: int = 10
    node_tol: float = DEFAULT_NODE_TOL
    function: FunctionFactory = paper_test_function

    def __post_init__(self):
        rule_weights(self.degree)
        if not 0 <= self.d <= 1:
            raise ValueError(f"d must lie in [0, 1], got {self.d!r}")
        if self.levels < 1:
            raise ValueError(f"need at least one level, got {self.levels!r}")
        if not 0 <= self.n_offset < self.degree:
            raise ValueError(f"n_offset must be in 0..{self.degree - 1} for a single panel")
        if not self.a < self.c:
            raise ValueError(f"empty interval [{self.a!r}, {self.c!r}]")


def default_points(degree: int, exponents: Sequence[int] = range(4, 14)) -> tuple[int, ...]:
    """``2**i`` points, or ``2**i + 1`` for Simpson 1/3 so the interval count is even."""
    return tuple(2**i + (1 if degree == 2 else 0) for i in exponents)


@dataclass(frozen=True)
class CompositeExperimentConfig:
    """Composite refinement setup.

    ``points`` lists node counts per level (intervals = points - 1). By
    default the singularity sits at ``a + (n_offset + d) h`` for each level's
    ``h``; ``xstar`` pins it instead, either to one abscissa or per level.
    ``trim_to_panels`` integrates only over the complete panels from ``a``
    and compares against the exact integral over that covered range, which
    is how point counts incompatible with the panel width are handled.
    """

    degree: int = 1
    a: float = 0.0
    c: float = 1.0
    points: tuple[int, ...] | None = None
    n_offset: int = 0
    d: float = 0.4
    xstar: float | tuple[float, ...] | None = None
    trim_to_panels: bool = False
    node_tol: float = DEFAULT_NODE_TOL
    function: FunctionFactory = paper_test_function

    def __post_init__(self):
        rule_weights(self.degree)
        if self.points is None:
            object.__setattr__(self, "points", default_points(self.degree))
        object.__setattr__(self, "points", tuple(int(p) for p in self.points))
        if isinstance(self.xstar, (list, tuple)):
            object.__setattr__(self, "xstar", tuple(float(x) for x in self.xstar))
            if len(self.xstar) != len(self.points):
                raise ValueError("per-level xstar needs one entry per level")
        if not self.points or min(self.points) < 2:
            raise ValueError("every level needs at least two points")
        if not 0 <= self.d <= 1:
            raise ValueError(f"d must lie in [0, 1], got {self.d!r}")
        if not self.a < self.c:
            raise ValueError(f"empty interval [{self.a!r}, {self.c!r}]")

    @classmethod
    def default(cls, degree: int, **overrides) -> CompositeExperimentConfig:
        """Moving-singularity setup; Simpson 3/8 trims to whole panels."""
        overrides.setdefault("trim_to_panels", degree == 3)
        return cls(degree=degree, **overrides)

    @classmethod
    def fixed_singularity(cls, degree: int, **overrides) -> CompositeExperimentConfig:
        """Singularity pinned at 0.4 on ``[0, 1]``.

        On this setup the singularity lands exactly on a node every fourth
        level; the nodal sample then belongs to the right branch, which needs
        ``node_tol = 0``.
        """
        overrides.setdefault("xstar", 0.4)
        overrides.setdefault("node_tol", 0.0)
        overrides.setdefault("trim_to_panels", degree == 3)
        return cls(degree=degree, **overrides)

    def singularity_at(self, level: int, grid: UniformGrid) -> float:
        if self.xstar is None:
            return self.a + (self.n_offset + self.d) * grid.h
        if isinstance(self.xstar, tuple):
            return self.xstar[level]
        return self.xstar


@dataclass(frozen=True)
class RefinementRow:
    level: int
    n: float
    h: float
    error_classical: float
    order_classical: float | str | None
    error_corrected: float
    order_corrected: float | str | None


@dataclass(frozen=True)
class RefinementReport:
    degree: int
    mode: str
    rows: tuple[RefinementRow, ...] = field(default_factory=tuple)

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in self.rows:
            writer.writerow([
                r.level,
                _fmt_n(r.n),
                repr(r.h),
                f"{r.error_classical:.16e}",
                _fmt_order(r.order_classical),
                f"{r.error_corrected:.16e}",
                _fmt_order(r.order_corrected),
            ])
        return buf.getvalue()

    def write_csv(self, path) -> None:
        Path(path).write_text(self.to_csv())

    def plot_data(self) -> dict[str, str]:
        """Two-column ``h error`` text per series, for external plotting."""
        out = {}
        for series in ("classical", "corrected"):
            errs = self.column(f"error_{series}")
            out[series] = "".join(f"{r.h!r} {e:.16e}\n" for r, e in zip(self.rows, errs))
        return out

    def write_plot_data(self, stem) -> list[Path]:
        paths = []
        for series, text in self.plot_data().items():
            p = Path(f"{stem}_{series}.dat")
            p.write_text(text)
            paths.append(p)
        return paths


def _fmt_n(n: float) -> str:
    return str(int(n)) if float(n).is_integer() else repr(n)


def _fmt_order(o) -> str:
    if o is None:
        return ""
    if isinstance(o, str):
        return o
    return f"{o:.6g}"


def _orders(errors, exacts, resolutions):
    orders = [None]
    for i in range(1, len(errors)):
        if errors[i] <= FLOOR_RTOL * abs(exacts[i]) or errors[i - 1] <= FLOOR_RTOL * abs(exacts[i - 1]):
            orders.append(FLOOR)
        else:
            orders.append(observed_order(errors[i - 1], errors[i], resolutions[i - 1], resolutions[i]))
    return orders


def _assemble(degree, mode, levels):
    res = [lv["n"] for lv in levels]
    exacts = [lv["exact"] for lv in levels]
    ec = [lv["classical"] for lv in levels]
    ek = [lv["corrected"] for lv in levels]
    oc = _orders(ec, exacts, res)
    ok = _orders(ek, exacts, res)
    rows = tuple(
        RefinementRow(i + 1, lv["n"], lv["h"], ec[i], oc[i], ek[i], ok[i])
        for i, lv in enumerate(levels)
    )
    return RefinementReport(degree, mode, rows)


def _level(rule, grid, pf, node_tol, lo, hi):
    samples = SampleSet(grid, pf.sample(grid.nodes()))
    classical = composite_integral(rule, samples)
    spec = [pf.singularity(rule.degree)] if lo < pf.xstar < hi else []
    corrected = correct_precomputed(classical, rule, grid, spec, node_tol)
    exact = exact_integral(pf, lo, hi)
    return classical, corrected, exact


def run_simple_refinement(cfg: SimpleExperimentConfig) -> RefinementReport:
    """One panel per level, interval halved between levels."""
    rule = rule_weights(cfg.degree)
    levels = []
    c = cfg.c
    for _ in range(cfg.levels):
        grid = make_grid(cfg.a, c, rule.degree)
        b = cfg.a + (cfg.n_offset + cfg.d) * grid.h
        pf = cfg.function(cfg.a, b, c)
        classical, corrected, exact = _level(rule, grid, pf, cfg.node_tol, cfg.a, c)
        levels.append({
            "n": 1.0 / (c - cfg.a), "h": grid.h, "exact": exact,
            "classical": abs(classical - exact), "corrected": abs(corrected - exact),
        })
        c = cfg.a + (c - cfg.a) / 2
    return _assemble(cfg.degree, "simple", levels)


def run_composite_refinement(cfg: CompositeExperimentConfig) -> RefinementReport:
    rule = rule_weights(cfg.degree)
    levels = []
    for level, points in enumerate(cfg.points):
        full = make_grid(cfg.a, cfg.c, points - 1)
        m = full.m
        if cfg.trim_to_panels:
            m -= m % rule.degree
        grid = UniformGrid(full.a, full.h, m)
        b = cfg.singularity_at(level, full)
        pf = cfg.function(cfg.a, b, cfg.c)
        classical, corrected, exact = _level(rule, grid, pf, cfg.node_tol, grid.a, grid.c)
        levels.append({
            "n": float(points), "h": grid.h, "exact": exact,
            "classical": abs(classical - exact), "corrected": abs(corrected - exact),
        })
    return _assemble(cfg.degree, "composite", levels)
