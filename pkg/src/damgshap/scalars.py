"""Scalars and module values.

Two scalar kinds exist: *exact* (``int`` or :class:`fractions.Fraction`) and
*float*. A module value is either a scalar or a :class:`Vector` of scalars.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Scalar = Union[int, Fraction, float]

EXACT = "exact"
FLOAT = "float"

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class Vector(tuple):
    """Fixed-length tuple with componentwise module arithmetic.

    ``sum()`` works because ``0 + v`` is treated as ``v``.
    """

    __slots__ = ()

    def __new__(cls, items: Iterable = ()):
        return super().__new__(cls, items)

    def _check(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        if len(other) != len(self):
            raise ValueError(f"vector length mismatch: {len(self)} vs {len(other)}")
        return other

    def __add__(self, other):
        if isinstance(other, (int, Fraction, float)) and other == 0:
            return self
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Vector(a + b for a, b in zip(self, other))

    def __radd__(self, other):
        if isinstance(other, (int, Fraction, float)) and other == 0:
            return self
        return NotImplemented

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Vector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Vector(-a for a in self)

    def __mul__(self, c):
        if isinstance(c, (int, Fraction, float)):
            return Vector(a * c for a in self)
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self):
        return f"Vector({list(self)!r})"


def scalar_kind(x) -> str:
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, float):
        return FLOAT
    if isinstance(x, Rational):
        return EXACT
    raise TypeError(f"not a scalar: {x!r}")


def value_kind(x) -> str:
    """Scalar kind of a module value (a scalar or a Vector)."""
    if isinstance(x, Vector):
        kinds = {scalar_kind(c) for c in x}
        if len(kinds) > 1:
            from .errors import MixedScalarError

            raise MixedScalarError("vector mixes exact and float components")
        return kinds.pop() if kinds else EXACT
    return scalar_kind(x)


def as_exact(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x)
    return Fraction(x)


def zero(dimension: int | None):
    return 0 if dimension is None else Vector([0] * dimension)


def is_zero(x) -> bool:
    if isinstance(x, Vector):
        return all(c == 0 for c in x)
    return x == 0


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or an integer literal exactly."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rationals must be strings like 'p/q', got {text!r}")
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_scalar(x, as_float: bool = False) -> str:
    if as_float:
        return f"{float(x):.12g}"
    if isinstance(x, float):
        return repr(x)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_value(x, as_float: bool = False):
    """JSON-ready rendering of a module value."""
    if isinstance(x, Vector):
        return [format_scalar(c, as_float) for c in x]
    return format_scalar(x, as_float)


def normalize(x):
    """Canonical exact form: ints stay ints, integral fractions collapse to int."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x
