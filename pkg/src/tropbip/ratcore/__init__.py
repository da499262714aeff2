"""Exact rational substrate: matrices, linear algebra, feasibility, EGF series."""

import re
from fractions import Fraction

from .linalg import Matrix, affine_rank, rref, nullspace
from .lp import LinSystem, Feasible, Infeasible, lp_feasible, lp_maximize, implies
from .series import Egf3

Rat = Fraction

_RAT_RE = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")


def rat(value):
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction.

    Floats are refused: every quantity in this package is exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational")
        if not _RAT_RE.match(text):
            raise ValueError(f"malformed rational {value!r} (expected an integer or 'p/q')")
        q = Fraction(text)
        return q
    raise TypeError(f"cannot read {type(value).__name__} {value!r} as an exact rational")


def rat_str(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rat_json(q):
    """Integer when integral, else a ``"p/q"`` string."""
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


__all__ = [
    "Rat", "rat", "rat_str", "rat_json",
    "Matrix", "affine_rank", "rref", "nullspace",
    "LinSystem", "Feasible", "Infeasible", "lp_feasible", "lp_maximize", "implies",
    "Egf3",
]
