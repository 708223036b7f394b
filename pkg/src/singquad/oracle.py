"""Ground-truth integrals for piecewise-smooth test functions.

Two independent routes are provided: closed-form antiderivatives for the
registered family of trigonometric polynomials (:class:`TrigPoly`), and an
adaptive reference integrator (QUADPACK through :func:`scipy.integrate.quad`)
that works for any callable branches. Both always split at the singularity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import Polynomial
from scipy import integrate

from .core import SingularitySpec
from .exceptions import ConvergenceError, OutOfRange, UnregisteredFunction

__all__ = [
    "TrigPoly",
    "PiecewiseFunction",
    "paper_test_function",
    "piecewise_polynomial",
    "exact_integral",
    "reference_integral",
]


@dataclass(frozen=True)
class TrigPoly:
    """``p(x) + sum_w (s_w sin(w x) + c_w cos(w x))``.

    Closed under differentiation and integration, which is all the oracle
    needs. ``waves`` holds ``(omega, sin_coeff, cos_coeff)`` triples with
    ``omega > 0``.
    """

    poly: Polynomial = field(default_factory=lambda: Polynomial([0.0]))
    waves: tuple[tuple[float, float, float], ...] = ()

    @classmethod
    def polynomial(cls, coeffs: Sequence[float]) -> TrigPoly:
        return cls(Polynomial(np.asarray(coeffs, dtype=float)))

    @classmethod
    def sin(cls, omega: float, amp: float = 1.0) -> TrigPoly:
        return cls(waves=((omega, amp, 0.0),))

    @classmethod
    def cos(cls, omega: float, amp: float = 1.0) -> TrigPoly:
        return cls(waves=((omega, 0.0, amp),))

    def __add__(self, other):
        if not isinstance(other, TrigPoly):
            other = TrigPoly(Polynomial([float(other)]))
        return TrigPoly(self.poly + other.poly, self.waves + other.waves)

    __radd__ = __add__

    def __mul__(self, k: float) -> TrigPoly:
        return TrigPoly(self.poly * k, tuple((w, s * k, c * k) for w, s, c in self.waves))

    __rmul__ = __mul__

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = self.poly(x)
        for w, s, c in self.waves:
            if s:
                out = out + s * np.sin(w * x)
            if c:
                out = out + c * np.cos(w * x)
        return float(out) if out.ndim == 0 else out

    def derivative(self, k: int = 1) -> TrigPoly:
        poly = self.poly.deriv(k) if k else self.poly
        waves = []
        for w, s, c in self.waves:
            for _ in range(k):
                s, c = -w * c, w * s
            waves.append((w, s, c))
        return TrigPoly(poly, tuple(waves))

    def antiderivative(self) -> TrigPoly:
        return TrigPoly(self.poly.integ(), tuple((w, c / w, -s / w) for w, s, c in self.waves))

    def integrate(self, lo: float, hi: float) -> float:
        """``int_lo^hi``, formed without subtracting nearly equal antiderivative values.

        Uses ``hi^k - lo^k = (hi - lo) sum hi^i lo^(k-1-i)`` and the
        sum-to-product identities, so short intervals keep full relative
        accuracy.
        """
        d = hi - lo
        terms = []
        for k, ck in enumerate(self.poly.integ().coef):
            if k and ck:
                terms.append(ck * d * math.fsum(hi**i * lo ** (k - 1 - i) for i in range(k)))
        for w, s, c in self.waves:
            half = math.sin(w * d / 2)
            mid = w * (hi + lo) / 2
            # antiderivative is (s/w)(-cos) + (c/w) sin
            terms.append(2 * s / w * math.sin(mid) * half)
            terms.append(2 * c / w * math.cos(mid) * half)
        return math.fsum(terms)

    def max_abs(self, lo: float, hi: float) -> float:
        """Upper bound of ``|f|`` on ``[lo, hi]`` (exact per term, summed)."""
        coef = self.poly.coef
        # drop negligible leading terms before root finding, and bound them separately
        big = np.flatnonzero(np.abs(coef) > 1e-13 * np.max(np.abs(coef)))
        keep = big[-1] + 1 if big.size else 1
        head, tail = Polynomial(coef[:keep]), coef[keep:]
        r = max(abs(lo), abs(hi))
        bound = math.fsum(abs(ck) * r ** (keep + i) for i, ck in enumerate(tail))
        pts = [lo, hi]
        if head.degree() > 1:
            # real parts of every critical point; spurious ones only add samples
            pts += [z.real for z in head.deriv().roots() if lo < z.real < hi]
        bound += max(abs(head(x)) for x in pts)
        for w, s, c in self.waves:
            amp = math.hypot(s, c)
            if amp == 0:
                continue
            # s sin + c cos = amp sin(w x + phi); |.| peaks where w x + phi = pi/2 + k pi
            phi = math.atan2(c, s)
            k_lo = math.ceil((w * lo + phi - math.pi / 2) / math.pi)
            if math.pi / 2 + k_lo * math.pi <= w * hi + phi:
                bound += amp
            else:
                bound += max(abs(s * math.sin(w * x) + c * math.cos(w * x)) for x in (lo, hi))
        return bound


@dataclass(frozen=True)
class PiecewiseFunction:
    """Two smooth branches joined at ``xstar``.

    ``left`` applies for ``x < xstar`` and ``right`` for ``x > xstar``.
    Branches are :class:`TrigPoly` for closed-form integration or any
    vectorised callable for the reference integrator; analytic jumps need
    ``derivative`` support.
    """

    left: Callable
    right: Callable
    xstar: float

    def __call__(self, x: float) -> float:
        if x == self.xstar:
            raise ValueError(f"piecewise function is two-valued at x*={self.xstar!r}")
        return float(self.left(x) if x < self.xstar else self.right(x))

    def sample(self, nodes) -> np.ndarray:
        """Nodal values; a node exactly at ``xstar`` takes the right branch."""
        nodes = np.asarray(nodes, dtype=float)
        out = np.empty_like(nodes)
        left = nodes < self.xstar
        if left.any():
            out[left] = self.left(nodes[left])
        if not left.all():
            out[~left] = self.right(nodes[~left])
        return out

    def jumps(self, K: int) -> tuple[float, ...]:
        """``[f^(k)]`` for ``k = 0..K`` from the analytic branch derivatives."""
        if not (hasattr(self.left, "derivative") and hasattr(self.right, "derivative")):
            raise UnregisteredFunction("analytic jumps need differentiable branches")
        return tuple(
            float(self.right.derivative(k)(self.xstar) - self.left.derivative(k)(self.xstar))
            for k in range(K + 1)
        )

    def singularity(self, K: int) -> SingularitySpec:
        return SingularitySpec(self.xstar, self.jumps(K))


def paper_test_function(a: float, b: float, c: float) -> PiecewiseFunction:
    """``cos(pi x) + 10`` on ``[a, b)`` and ``sin(pi x)`` on ``[b, c]``."""
    if not a < b < c:
        raise OutOfRange(f"need a < b < c, got {a!r}, {b!r}, {c!r}")
    return PiecewiseFunction(TrigPoly.cos(math.pi) + 10.0, TrigPoly.sin(math.pi), float(b))


def piecewise_polynomial(left: Sequence[float], right: Sequence[float], xstar: float) -> PiecewiseFunction:
    """Branches given by monomial coefficients, lowest degree first."""
    return PiecewiseFunction(TrigPoly.polynomial(left), TrigPoly.polynomial(right), float(xstar))


def _registered(branch) -> TrigPoly:
    if not isinstance(branch, TrigPoly):
        raise UnregisteredFunction(
            f"no closed-form antiderivative for {type(branch).__name__}; use reference_integral"
        )
    return branch


def exact_integral(pf: PiecewiseFunction, a: float, c: float) -> float:
    """Closed-form ``int_a^c f`` for registered branches."""
    if not a < c:
        raise ValueError(f"empty interval [{a!r}, {c!r}]")
    left, right = _registered(pf.left), _registered(pf.right)
    if pf.xstar <= a:
        return right.integrate(a, c)
    if pf.xstar >= c:
        return left.integrate(a, c)
    return left.integrate(a, pf.xstar) + right.integrate(pf.xstar, c)


def _quad(func, lo, hi, tol, rtol):
    value, abserr, info = integrate.quad(
        lambda x: float(func(x)), lo, hi, epsabs=tol, epsrel=rtol, limit=500, full_output=1
    )[:3]
    allowed = max(tol, rtol * abs(value))
    if abserr > allowed or not math.isfinite(value):
        raise ConvergenceError(
            f"adaptive quadrature on [{lo!r}, {hi!r}] stopped at error estimate {abserr:.3e} > {allowed:.3e}"
        )
    return value


def reference_integral(
    pf: PiecewiseFunction, a: float, c: float, tol: float = 1e-12, rtol: float = 1e-13
) -> float:
    """Adaptive Gauss-Kronrod integral with each smooth piece handled separately.

    Each piece must reach an error estimate within ``max(tol, rtol * |piece|)``;
    otherwise :class:`ConvergenceError` is raised.
    """
    if tol < 1e-14:
        raise ValueError(f"tol must be at least 1e-14, got {tol!r}")
    if not rtol >= 5e-15:
        raise ValueError(f"rtol must be at least 5e-15, got {rtol!r}")
    if not a < c:
        raise ValueError(f"empty interval [{a!r}, {c!r}]")
    if pf.xstar <= a:
        return _quad(pf.right, a, c, tol, rtol)
    if pf.xstar >= c:
        return _quad(pf.left, a, c, tol, rtol)
    return _quad(pf.left, a, pf.xstar, tol / 2, rtol) + _quad(pf.right, pf.xstar, c, tol / 2, rtol)
