"""Printed correction forms and their comparison with the generator.

``PRINTED_FORMS`` transcribes the published closed forms coefficient by
coefficient, with ``(alpha_power, h_power)`` keys. :func:`erratum_report`
compares each entry symbolically against :func:`generate_correction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F

from .corrections import format_bivariate, generate_correction

__all__ = ["PRINTED_FORMS", "EntryComparison", "compare_entry", "erratum_report"]

_JUMP_NAMES = ("[f]", "[f']", "[f'']", "[f''']", "[f^(4)]")

PRINTED_FORMS: dict[tuple[int, int], tuple[dict, ...]] = {
    (1, 1): (
        {(1, 0): F(1), (0, 1): F(-1, 2)},
        {(1, 1): F(1, 2), (2, 0): F(-1, 2)},
    ),
    (2, 1): (
        {(1, 0): F(1), (0, 1): F(-1, 3)},
        {(2, 0): F(1, 2), (1, 1): F(-1, 3)},
        {(3, 0): F(1, 6), (2, 1): F(-1, 6)},
    ),
    (2, 2): (
        {(1, 0): F(-1), (0, 1): F(1, 3)},
        {(2, 0): F(1, 2), (1, 1): F(-1, 3)},
        {(3, 0): F(-1, 6), (2, 1): F(1, 6)},
    ),
    (3, 1): (
        {(1, 0): F(1), (0, 1): F(-3, 8)},
        {(1, 1): F(3, 8), (2, 0): F(-1, 2)},
        {(2, 1): F(-3, 16), (3, 0): F(1, 6)},
        {(3, 1): F(1, 16), (4, 0): F(-1, 24)},
    ),
    (3, 2): (
        {(1, 0): F(1), (0, 1): F(-1, 2)},
        {(1, 1): F(1, 2), (2, 0): F(-1, 2), (0, 2): F(-1, 8)},
        {(2, 1): F(-1, 4), (0, 3): F(-1, 48), (1, 2): F(1, 8), (3, 0): F(1, 6)},
        {(1, 3): F(1, 48), (0, 4): F(1, 48), (4, 0): F(-1, 24), (2, 2): F(-1, 16), (3, 1): F(1, 12)},
    ),
    (3, 3): (
        {(1, 0): F(-1), (0, 1): F(3, 8)},
        {(2, 0): F(-1, 2), (1, 1): F(3, 8)},
        {(3, 0): F(-1, 6), (2, 1): F(3, 16)},
        {(4, 0): F(-1, 24), (3, 1): F(1, 16)},
    ),
    (4, 1): (
        {(0, 1): F(-14, 45), (1, 0): F(1)},
        {(2, 0): F(-1, 2), (1, 1): F(14, 45)},
        {(3, 0): F(1, 6), (2, 1): F(-7, 45)},
        {(4, 0): F(-1, 24), (3, 1): F(7, 135)},
        {(5, 0): F(1, 120), (4, 1): F(-7, 540)},
    ),
    (4, 2): (
        {(1, 0): F(1), (0, 1): F(-11, 15)},
        {(0, 2): F(-17, 90), (1, 1): F(11, 15), (2, 0): F(-1, 2)},
        {(0, 3): F(1, 90), (1, 2): F(17, 90), (2, 1): F(-11, 30), (3, 0): F(1, 6)},
        {(3, 1): F(11, 90), (4, 0): F(-1, 24), (0, 4): F(11, 1080), (1, 3): F(-1, 90),
         (2, 2): F(-17, 180)},
        {(3, 2): F(17, 540), (2, 3): F(1, 180), (4, 1): F(-11, 360), (1, 4): F(-11, 1080),
         (0, 5): F(-1, 216), (5, 0): F(1, 120)},
    ),
    (4, 3): (
        {(1, 0): F(-1), (0, 1): F(11, 15)},
        {(0, 2): F(-17, 90), (1, 1): F(11, 15), (2, 0): F(-1, 2)},
        {(3, 0): F(-1, 6), (2, 1): F(11, 30), (1, 2): F(-17, 90), (0, 3): F(-1, 90)},
        {(3, 1): F(11, 90), (4, 0): F(-1, 24), (0, 4): F(11, 1080), (1, 3): F(-1, 90),
         (2, 2): F(-17, 180)},
        {(3, 2): F(-17, 540), (1, 4): F(11, 1080), (4, 1): F(11, 360), (2, 3): F(-1, 180),
         (0, 5): F(1, 216), (5, 0): F(-1, 120)},
    ),
    (4, 4): (
        {(0, 1): F(14, 45), (1, 0): F(-1)},
        {(2, 0): F(-1, 2), (1, 1): F(14, 45)},
        {(3, 0): F(-1, 6), (2, 1): F(7, 45)},
        {(4, 0): F(-1, 24), (3, 1): F(7, 135)},
        {(5, 0): F(-1, 120), (4, 1): F(7, 540)},
    ),
}


@dataclass(frozen=True)
class EntryComparison:
    n: int
    j: int
    mismatched_orders: tuple[int, ...]

    @property
    def matches(self) -> bool:
        return not self.mismatched_orders


def compare_entry(n: int, j: int) -> EntryComparison:
    generated = generate_correction(n, j).coeffs
    printed = PRINTED_FORMS[n, j]
    bad = tuple(k for k in range(n + 1) if dict(generated[k]) != printed[k])
    return EntryComparison(n, j, bad)


def erratum_report() -> str:
    """Plain-text listing of every printed entry against the generator's form."""
    lines = [
        "Correction terms: printed closed forms vs constructive generator",
        "convention: corrected = classical - C",
        "",
    ]
    for (n, j) in sorted(PRINTED_FORMS):
        cmp = compare_entry(n, j)
        gen = generate_correction(n, j)
        status = "MATCH" if cmp.matches else "MISMATCH"
        lines.append(f"C_{{{n},{j}}}  alpha from {gen.alpha_convention.value} node  {status}")
        for k in range(n + 1):
            flag = "  <-- differs" if k in cmp.mismatched_orders else ""
            lines.append(f"  {_JUMP_NAMES[k]:8s} generator: {format_bivariate(gen.coeffs[k])}{flag}")
            if k in cmp.mismatched_orders:
                lines.append(f"  {'':8s} printed:   {format_bivariate(PRINTED_FORMS[n, j][k])}")
        lines.append("")
    return "\n".join(lines)
