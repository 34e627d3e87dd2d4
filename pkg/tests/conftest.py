"""Shared builders for the test suite."""

from __future__ import annotations

from fractions import Fraction

from nicholscy import builtin
from nicholscy.report import InputSpec


def frac_rows(rows) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in rows]


def diagonal_spec(qmatrix) -> InputSpec:
    return builtin("diagonal", {"qmatrix": qmatrix})


def qp2(lam) -> InputSpec:
    """Quantum plane: two generators, x y = lam * y x."""
    lam = Fraction(lam)
    return diagonal_spec([["1", str(lam)], [str(1 / lam), "1"]])


def qp3(a, b, c) -> InputSpec:
    """Quantum 3-space with parameters (q12, q13, q23) = (a, b, c)."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    return diagonal_spec(
        [
            ["1", str(a), str(b)],
            [str(1 / a), "1", str(c)],
            [str(1 / b), str(1 / c), "1"],
        ]
    )
