import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from singquad.core import SampleSet, UniformGrid, make_grid
from singquad.exceptions import PanelMismatch, UnsupportedDegree
from singquad.polynomial import RationalPoly
from singquad.rules import composite_integral, composite_weights, rule_weights, simple_integral


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_weights_sum_to_panel_width(n):
    assert sum(rule_weights(n).weights) == n


@pytest.mark.parametrize("n,order", [(1, 2), (2, 4), (3, 4), (4, 6)])
def test_rules_are_exact_on_monomials_up_to_their_order(n, order):
    w = rule_weights(n).weights
    for p in range(order):
        approx = sum(wi * Fraction(i) ** p for i, wi in enumerate(w))
        assert approx == Fraction(n ** (p + 1), p + 1)
    approx = sum(wi * Fraction(i) ** order for i, wi in enumerate(w))
    assert approx != Fraction(n ** (order + 1), order + 1)


def test_unsupported_degree():
    with pytest.raises(UnsupportedDegree):
        rule_weights(5)


def test_simple_values():
    assert simple_integral(rule_weights(1), 2.0, [1, 3]) == 4.0
    assert simple_integral(rule_weights(2), 0.5, [0, 0.25, 1]) == pytest.approx(1 / 3)
    with pytest.raises(ValueError):
        simple_integral(rule_weights(2), 0.5, [0, 1])


def test_composite_weights_and_mismatch():
    assert np.array_equal(composite_weights(rule_weights(2), 4), [1 / 3, 4 / 3, 2 / 3, 4 / 3, 1 / 3])
    with pytest.raises(PanelMismatch):
        composite_weights(rule_weights(3), 4)


def test_composite_trapezoid_on_sine_converges_at_second_order():
    errs = []
    for m in (16, 32, 64):
        g = make_grid(0, math.pi, m)
        errs.append(abs(composite_integral(rule_weights(1), SampleSet.from_function(g, math.sin)) - 2))
    assert math.log2(errs[0] / errs[1]) == pytest.approx(2, abs=0.01)
    assert math.log2(errs[1] / errs[2]) == pytest.approx(2, abs=0.01)


@given(
    n=st.sampled_from([1, 2, 3, 4]),
    panels=st.integers(1, 6),
    coeffs=st.lists(st.integers(-9, 9), min_size=1, max_size=6),
)
def test_composite_exact_on_polynomials_within_order(n, panels, coeffs):
    rule = rule_weights(n)
    coeffs = coeffs[: rule.smooth_order]
    p = RationalPoly(coeffs)
    g = UniformGrid(0.0, 0.25, n * panels)
    got = composite_integral(rule, SampleSet.from_function(g, lambda x: float(p(x))))
    exact = float(p.integrate(0, Fraction(g.m, 4)))
    assert got == pytest.approx(exact, rel=1e-13, abs=1e-12)
