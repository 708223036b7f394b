"""Exact univariate polynomials with :class:`fractions.Fraction` coefficients.

Only what the correction generator and the error constants need: ring
operations, antiderivatives, evaluation and composition with a linear map.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

__all__ = ["RationalPoly", "as_fraction"]


def as_fraction(value) -> Fraction:
    """Exact conversion; floats keep their full binary value."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    return Fraction(float(value))


class RationalPoly:
    """Polynomial ``sum(c[k] * x**k)`` with exact coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = (0,)):
        cs = [as_fraction(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs) if cs else (Fraction(0),)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> RationalPoly:
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots: Sequence) -> RationalPoly:
        p = cls([1])
        for r in roots:
            p = p * cls([-as_fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return -1 if self.is_zero() else len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def _coerce(self, other) -> RationalPoly:
        return other if isinstance(other, RationalPoly) else RationalPoly([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = RationalPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPoly([other])
        return isinstance(other, RationalPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Horner evaluation; exact for rational ``x``, float otherwise."""
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0.0
        x = float(x)
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def antiderivative(self) -> RationalPoly:
        """Antiderivative vanishing at 0."""
        return RationalPoly([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def integrate(self, lo, hi):
        F = self.antiderivative()
        return F(hi) - F(lo)

    def derivative(self) -> RationalPoly:
        return RationalPoly([k * c for k, c in enumerate(self.coeffs)][1:] or [0])

    def compose_linear(self, shift, scale=1) -> RationalPoly:
        """``p(shift + scale*x)``."""
        lin = RationalPoly([shift, scale])
        out = RationalPoly([0])
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"
