"""Singularity correction terms for Newton-Cotes rules.

A degree-``n`` rule applied to a panel containing a jump at ``x*`` commits an
error driven by the jumps ``[f], [f'], ..., [f^(n)]``. The correction ``C`` is
a polynomial in the offset ``alpha`` and the spacing ``h`` weighted by those
jumps; subtracting it from the classical value restores the smooth-case
accuracy::

    corrected = classical - C

:func:`generate_correction` builds ``C`` constructively with exact rational
arithmetic. The shipped closed forms used at run time are checked against it
in the test suite.
"""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .core import (
    DEFAULT_NODE_TOL,
    SampleSet,
    SingularityLocation,
    SingularitySpec,
    UniformGrid,
    locate_singularity,
)
from .exceptions import (
    InvalidVariant,
    MissingDerivativeBound,
    MissingJumps,
    NodeCollision,
    OutOfRange,
    SingquadError,
    TwoSingularitiesInOnePanel,
)
from .polynomial import RationalPoly, as_fraction
from .rules import RuleSpec, composite_integral, composite_weights, rule_weights, simple_integral

__all__ = [
    "AlphaConvention",
    "CorrectionPolynomial",
    "ErrorConstants",
    "PanelPlacement",
    "taylor_jump_shift",
    "generate_correction",
    "alpha_convention",
    "closed_form_correction",
    "correction_terms",
    "select_variant",
    "corrected_simple",
    "corrected_composite",
    "correct_precomputed",
    "singularity_corrections",
    "error_constants",
    "error_bound",
]


class AlphaConvention(enum.Enum):
    FROM_LEFT_NODE = "left"
    FROM_RIGHT_NODE = "right"


def alpha_convention(n: int, j: int) -> AlphaConvention:
    """Early intervals of a panel measure ``alpha`` from their left node, late ones from the right."""
    _check_variant(n, j)
    return AlphaConvention.FROM_LEFT_NODE if j <= (n + 1) // 2 else AlphaConvention.FROM_RIGHT_NODE


def _check_variant(n: int, j: int) -> None:
    rule_weights(n)
    if not (isinstance(j, int) and 1 <= j <= n):
        raise InvalidVariant(f"variant must be in 1..{n} for a degree-{n} rule, got {j!r}")


def taylor_jump_shift(spec: SingularitySpec, x: float, K: int) -> float:
    """``sum_k [f^(k)] (x - x*)^k / k!`` for ``k = 0..K``.

    Adding it to the left-branch extension at ``x`` gives the right-branch
    value (up to the truncated Taylor remainder).
    """
    jumps = spec.require(K)
    d = x - spec.xstar
    return math.fsum(jk * d**k / math.factorial(k) for k, jk in enumerate(jumps))


# ---------------------------------------------------------------------------
# constructive generator


@dataclass(frozen=True)
class CorrectionPolynomial:
    """``C = sum_k [f^(k)] * coeffs[k](alpha, h)`` for one ``(n, variant)``.

    ``coeffs[k]`` maps ``(alpha_power, h_power)`` to an exact coefficient.
    """

    degree: int
    variant: int
    alpha_convention: AlphaConvention
    coeffs: tuple[Mapping[tuple[int, int], Fraction], ...]

    def term(self, k: int, h: float, alpha: float) -> float:
        return math.fsum(float(c) * alpha**pa * h**ph for (pa, ph), c in self.coeffs[k].items())

    def evaluate(self, h: float, alpha: float, jumps: Sequence[float]) -> float:
        if len(jumps) < self.degree + 1:
            raise MissingJumps(f"degree-{self.degree} correction needs {self.degree + 1} jumps")
        return math.fsum(jumps[k] * self.term(k, h, alpha) for k in range(self.degree + 1))

    def evaluate_exact(self, h, alpha, jumps) -> Fraction:
        h, alpha = as_fraction(h), as_fraction(alpha)
        return sum(
            (as_fraction(jumps[k]) * c * alpha**pa * h**ph
             for k in range(self.degree + 1)
             for (pa, ph), c in self.coeffs[k].items()),
            Fraction(0),
        )

    def format_term(self, k: int) -> str:
        return format_bivariate(self.coeffs[k])


def format_bivariate(term: Mapping[tuple[int, int], Fraction]) -> str:
    """Render ``{(alpha_power, h_power): coeff}`` as a readable sum."""
    parts = []
    for (pa, ph), c in sorted(term.items(), key=lambda t: (-t[0][0], t[0][1])):
        mono = "*".join(f"{s}^{p}" if p > 1 else s for s, p in (("alpha", pa), ("h", ph)) if p)
        parts.append(f"({c})" + (f"*{mono}" if mono else ""))
    return " + ".join(parts) if parts else "0"


def _lagrange_basis(n: int) -> list[RationalPoly]:
    basis = []
    for i in range(n + 1):
        p = RationalPoly([1])
        for m in range(n + 1):
            if m != i:
                p = p * RationalPoly([Fraction(-m, i - m), Fraction(1, i - m)])
        basis.append(p)
    return basis


_GEN_CACHE: dict[tuple[int, int], CorrectionPolynomial] = {}
_GEN_LOCK = threading.Lock()


def generate_correction(n: int, j: int) -> CorrectionPolynomial:
    """Build the correction for a singularity in interval ``j`` of a degree-``n`` panel.

    Work in panel units ``mu = (x - x_0)/h`` with the singularity at ``s``.
    Nodes ``i >= j`` carry right-branch samples, ``f_i = f_i^- + ft_i``;
    nodes ``i < j`` carry left-branch ones, ``f_i = f_i^+ - ft_i``, where
    ``ft_i`` is the truncated Taylor jump shift. Substituting into the
    Lagrange form and integrating the jump-carrying residuals over the wrong
    side of ``s`` gives::

        C = int_0^s sum_{i>=j} ft_i L_i  -  int_s^n sum_{i<j} ft_i L_i

    which is then rewritten in ``alpha`` through ``s = j-1 + alpha/h`` or
    ``s = j - alpha/h`` depending on the variant's convention.
    """
    _check_variant(n, j)
    key = (n, j)
    cached = _GEN_CACHE.get(key)
    if cached is not None:
        return cached

    basis = _lagrange_basis(n)
    anti = [L.antiderivative() for L in basis]
    s = RationalPoly([0, 1])
    convention = alpha_convention(n, j)
    if convention is AlphaConvention.FROM_LEFT_NODE:
        shift, sign = j - 1, 1
    else:
        shift, sign = j, -1

    coeffs = []
    for k in range(n + 1):
        inv_fact = Fraction(1, math.factorial(k))
        p_k = RationalPoly([0])
        for i in range(n + 1):
            shift_k = (RationalPoly([i]) - s) ** k * inv_fact
            if i >= j:
                p_k = p_k + shift_k * anti[i]
            else:
                p_k = p_k - shift_k * (RationalPoly([anti[i](n)]) - anti[i])
        # C_k = h^(k+1) * p_k(s),  s = shift + sign * alpha/h
        q = p_k.compose_linear(shift, sign)
        if q.degree > k + 1:
            raise SingquadError(f"non-polynomial correction for n={n}, j={j}, k={k}")
        coeffs.append({(d, k + 1 - d): c for d, c in enumerate(q.coeffs) if c})

    poly = CorrectionPolynomial(n, j, convention, tuple(coeffs))
    with _GEN_LOCK:
        return _GEN_CACHE.setdefault(key, poly)


# ---------------------------------------------------------------------------
# shipped closed forms
#
# Each entry returns the per-jump-order terms (k = 0..n) for a singularity in
# interval j of the panel, alpha measured per ``alpha_convention(n, j)``.
# C_{2,1} and C_{2,2} carry the [f'] sign produced by the generator.

def _c11(h, a):
    return (a - h / 2, (h * a - a * a) / 2)


def _c21(h, a):
    return (a - h / 3, a * (2 * h - 3 * a) / 6, a * a * (a - h) / 6)


def _c22(h, a):
    return (h / 3 - a, a * (2 * h - 3 * a) / 6, a * a * (h - a) / 6)


def _c31(h, a):
    return (
        a - 3 * h / 8,
        3 * h * a / 8 - a * a / 2,
        a * a * (a / 6 - 3 * h / 16),
        a**3 * (h / 16 - a / 24),
    )


def _c32(h, a):
    return (
        a - h / 2,
        h * a / 2 - a * a / 2 - h * h / 8,
        a**3 / 6 - h * a * a / 4 + h * h * a / 8 - h**3 / 48,
        -(a**4) / 24 + h * a**3 / 12 - h * h * a * a / 16 + h**3 * a / 48 + h**4 / 48,
    )


def _c33(h, a):
    return (
        3 * h / 8 - a,
        3 * h * a / 8 - a * a / 2,
        a * a * (3 * h / 16 - a / 6),
        a**3 * (h / 16 - a / 24),
    )


def _c41(h, a):
    return (
        a - 14 * h / 45,
        14 * h * a / 45 - a * a / 2,
        a * a * (a / 6 - 7 * h / 45),
        a**3 * (7 * h / 135 - a / 24),
        a**4 * (a / 120 - 7 * h / 540),
    )


def _c42(h, a):
    return (
        a - 11 * h / 15,
        -17 * h * h / 90 + 11 * h * a / 15 - a * a / 2,
        h**3 / 90 + 17 * h * h * a / 90 - 11 * h * a * a / 30 + a**3 / 6,
        11 * h * a**3 / 90 - a**4 / 24 + 11 * h**4 / 1080 - h**3 * a / 90 - 17 * h * h * a * a / 180,
        17 * h * h * a**3 / 540 + h**3 * a * a / 180 - 11 * h * a**4 / 360
        - 11 * h**4 * a / 1080 - h**5 / 216 + a**5 / 120,
    )


def _c43(h, a):
    return (
        11 * h / 15 - a,
        -17 * h * h / 90 + 11 * h * a / 15 - a * a / 2,
        -(a**3) / 6 + 11 * h * a * a / 30 - 17 * h * h * a / 90 - h**3 / 90,
        11 * h * a**3 / 90 - a**4 / 24 + 11 * h**4 / 1080 - h**3 * a / 90 - 17 * h * h * a * a / 180,
        -17 * h * h * a**3 / 540 + 11 * h**4 * a / 1080 + 11 * h * a**4 / 360
        - h**3 * a * a / 180 + h**5 / 216 - a**5 / 120,
    )


def _c44(h, a):
    return (
        14 * h / 45 - a,
        14 * h * a / 45 - a * a / 2,
        a * a * (7 * h / 45 - a / 6),
        a**3 * (7 * h / 135 - a / 24),
        a**4 * (7 * h / 540 - a / 120),
    )


_CLOSED_FORMS = {
    (1, 1): _c11,
    (2, 1): _c21, (2, 2): _c22,
    (3, 1): _c31, (3, 2): _c32, (3, 3): _c33,
    (4, 1): _c41, (4, 2): _c42, (4, 3): _c43, (4, 4): _c44,
}


def correction_terms(n: int, j: int, h: float, alpha: float) -> tuple[float, ...]:
    """Per-jump-order coefficients of the closed-form correction."""
    _check_variant(n, j)
    if not 0 <= alpha <= h:
        raise OutOfRange(f"alpha={alpha!r} outside [0, h={h!r}]")
    return _CLOSED_FORMS[n, j](h, alpha)


def closed_form_correction(n: int, j: int, h: float, alpha: float, spec: SingularitySpec) -> float:
    """Closed-form correction ``C_{n,j}`` at ``(h, alpha)`` for the jumps in ``spec``."""
    terms = correction_terms(n, j, h, alpha)
    jumps = spec.require(n)
    return math.fsum(jk * tk for jk, tk in zip(jumps, terms))


# ---------------------------------------------------------------------------
# placement and corrected rules


@dataclass(frozen=True)
class PanelPlacement:
    """Where a singularity falls in the composite decomposition."""

    panel: int
    variant: int
    alpha: float
    location: SingularityLocation


def _place(rule: RuleSpec, grid: UniformGrid, loc: SingularityLocation) -> PanelPlacement:
    n = rule.degree
    panel, offset = divmod(loc.interval_index, n)
    if (panel + 1) * n > grid.m:
        raise OutOfRange(
            f"interval {loc.interval_index} is not covered by a complete {rule.name} panel"
        )
    j = offset + 1
    if alpha_convention(n, j) is AlphaConvention.FROM_LEFT_NODE:
        alpha = loc.alpha_left
    else:
        alpha = loc.alpha_right
    return PanelPlacement(panel, j, alpha, loc)


def select_variant(rule: RuleSpec, grid: UniformGrid, loc: SingularityLocation) -> tuple[int, float]:
    """Variant index ``j`` and the matching ``alpha`` for a located singularity."""
    p = _place(rule, grid, loc)
    return p.variant, p.alpha


def _placements(rule, grid, specs, node_tol):
    placements = []
    seen = {}
    for spec in specs:
        spec.require(rule.degree)
        loc = locate_singularity(grid, spec.xstar, node_tol)
        p = _place(rule, grid, loc)
        if p.panel in seen:
            raise TwoSingularitiesInOnePanel(
                f"singularities at x={seen[p.panel]!r} and x={spec.xstar!r} share panel {p.panel}"
            )
        seen[p.panel] = spec.xstar
        placements.append((spec, p))
    return placements


def singularity_corrections(
    rule: RuleSpec,
    grid: UniformGrid,
    specs: Sequence[SingularitySpec],
    node_tol: float = DEFAULT_NODE_TOL,
) -> list[tuple[SingularitySpec, PanelPlacement, float]]:
    """Placement and correction value for every singularity, in input order."""
    if grid.m % rule.degree:
        composite_weights(rule, grid.m)  # raises PanelMismatch
    return [
        (spec, p, closed_form_correction(rule.degree, p.variant, grid.h, p.alpha, spec))
        for spec, p in _placements(rule, grid, specs, node_tol)
    ]


def corrected_simple(
    rule: RuleSpec,
    h: float,
    panel_values: Sequence[float],
    panel_origin: float,
    spec: SingularitySpec,
    node_tol: float = DEFAULT_NODE_TOL,
) -> float:
    grid = UniformGrid(panel_origin, h, rule.degree)
    classical = simple_integral(rule, h, panel_values)
    (_, _, c), = singularity_corrections(rule, grid, [spec], node_tol)
    return classical - c


def correct_precomputed(
    I_classical: float,
    rule: RuleSpec,
    grid: UniformGrid,
    specs: Sequence[SingularitySpec],
    node_tol: float = DEFAULT_NODE_TOL,
) -> float:
    """Post-process a classical composite value with the singularity corrections."""
    corrections = singularity_corrections(rule, grid, specs, node_tol)
    if not corrections:
        return I_classical
    return I_classical - math.fsum(c for _, _, c in corrections)


def corrected_composite(
    rule: RuleSpec,
    samples: SampleSet,
    specs: Sequence[SingularitySpec],
    node_tol: float = DEFAULT_NODE_TOL,
) -> float:
    return correct_precomputed(composite_integral(rule, samples), rule, samples.grid, specs, node_tol)


# ---------------------------------------------------------------------------
# error constants and bounds


def _nodal_poly(n: int) -> RationalPoly:
    return RationalPoly.from_roots(range(n + 1))


@dataclass(frozen=True)
class ErrorConstants:
    """Integrals of the nodal polynomial ``mu(mu-1)...(mu-n)`` around offset ``s``.

    ``c1 = int_0^s w``, ``c2 = int_0^s w (mu - s)``, ``c3 = int_s^n w``,
    ``c4 = int_s^n w (mu - n)``.
    """

    n: int
    s: float
    c1: float
    c2: float
    c3: float
    c4: float


def error_constants(n: int, s) -> ErrorConstants:
    """Exact antiderivative evaluation; rational ``s`` gives :class:`Fraction` results."""
    rule_weights(n)
    exact = isinstance(s, (int, Fraction))
    sf = as_fraction(s)
    if not 0 < sf <= n:
        raise OutOfRange(f"offset s={s!r} outside (0, {n}]")
    w = _nodal_poly(n)
    c1 = w.integrate(0, sf)
    c2 = (w * RationalPoly([-sf, 1])).integrate(0, sf)
    c3 = w.integrate(sf, n)
    c4 = (w * RationalPoly([-n, 1])).integrate(sf, n)
    vals = (c1, c2, c3, c4)
    if not exact:
        vals = tuple(float(v) for v in vals)
    return ErrorConstants(n, s, *vals)


def _abs_integral(p: RationalPoly, lo: Fraction, hi: Fraction, breaks) -> Fraction:
    """``int_lo^hi |p|`` where ``breaks`` contains every sign change of ``p``."""
    cuts = [lo] + sorted(b for b in breaks if lo < b < hi) + [hi]
    return sum((abs(p.integrate(x0, x1)) for x0, x1 in zip(cuts, cuts[1:])), Fraction(0))


def error_bound(n: int, j: int, h: float, alpha: float, deriv_bounds: Sequence[float]) -> float:
    """Upper bound on ``|corrected - exact|`` over one panel.

    ``deriv_bounds = (M_minus, M_plus)`` bound ``|f^(n+1)|`` of the left and
    right branches, each extended smoothly across the whole panel. The bound
    adds the interpolation remainders of both one-sided interpolants over
    their own sub-ranges and the Taylor remainders of the truncated jump
    shifts at the nodes.
    """
    _check_variant(n, j)
    if deriv_bounds is None or len(deriv_bounds) < 2:
        raise MissingDerivativeBound(f"need |f^({n + 1})| bounds for both sides")
    m_minus, m_plus = (float(v) if v is not None else math.nan for v in deriv_bounds[:2])
    if not (math.isfinite(m_minus) and math.isfinite(m_plus)) or m_minus < 0 or m_plus < 0:
        raise MissingDerivativeBound(f"invalid derivative bounds {tuple(deriv_bounds)!r}")
    if not 0 <= alpha <= h:
        raise OutOfRange(f"alpha={alpha!r} outside [0, h={h!r}]")

    a = as_fraction(alpha) / as_fraction(h)
    s = (j - 1) + a if alpha_convention(n, j) is AlphaConvention.FROM_LEFT_NODE else j - a
    w = _nodal_poly(n)
    breaks = range(n + 1)
    fact = math.factorial(n + 1)
    smooth = (
        m_minus * float(_abs_integral(w, Fraction(0), s, breaks))
        + m_plus * float(_abs_integral(w, s, Fraction(n), breaks))
    ) * h ** (n + 2) / fact

    basis = _lagrange_basis(n)
    shift = 0.0
    for i, L in enumerate(basis):
        weight = L.integrate(0, s) if i >= j else L.integrate(s, n)
        taylor = (m_minus + m_plus) * float(abs(i - s)) ** (n + 1) / fact
        shift += taylor * abs(float(weight))
    shift *= h ** (n + 2)
    return smooth + shift
