"""Scalar values and the extended-real conventions used by the inefficiency measure.

Exact scalars are :class:`fractions.Fraction`; float scalars are ``float``.
Extended values add ``math.inf`` / ``-math.inf`` with the conventions

* ``negative / 0 = -inf``, ``positive / 0 = +inf``, ``0 / 0 = 0``
* ``inf * 0 = 0``, ``inf * a = inf`` for ``a > 0``
* ``a + (-inf) = -inf``; ``inf + (-inf)`` is a programming error.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

from .errors import ModeMismatch

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

#: absolute tolerance for zero tests and equality in float mode
FLOAT_TOL = 1e-9
#: tolerance on the total mass of a float-mode lottery
LOTTERY_SUM_TOL = 1e-12

INF = math.inf
NEG_INF = -math.inf

Scalar = Union[Fraction, float]
ExtendedScalar = Union[Fraction, float]


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ModeMismatch(f"unknown arithmetic mode {mode!r}; expected 'exact' or 'float'")
    return mode


def to_scalar(value, mode: str = EXACT, *, coerce: bool = False) -> Scalar:
    """Convert ``value`` to a scalar of the given mode.

    In exact mode, ints, Fractions and strings (``"p/q"`` or decimal literals) are
    converted exactly; a Python float is read through its shortest repr, so ``0.9``
    becomes ``9/10``. In float mode, string input is refused unless ``coerce`` is set.
    """
    check_mode(mode)
    if isinstance(value, bool):
        raise ModeMismatch(f"booleans are not utilities: {value!r}")
    if mode == EXACT:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, Rational):
            return Fraction(value.numerator, value.denominator)
        if isinstance(value, float):
            if not math.isfinite(value):
                raise ModeMismatch(f"non-finite value {value!r}")
            return Fraction(repr(value))
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ModeMismatch(f"not a rational literal: {value!r}") from exc
        raise ModeMismatch(f"cannot convert {type(value).__name__} to an exact scalar")
    if isinstance(value, str):
        if not coerce:
            raise ModeMismatch(f"rational literal {value!r} in float mode (use coercion to allow)")
        try:
            value = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ModeMismatch(f"not a rational literal: {value!r}") from exc
    if isinstance(value, (int, float, Rational)):
        out = float(value)
        if not math.isfinite(out):
            raise ModeMismatch(f"non-finite value {value!r}")
        return out
    raise ModeMismatch(f"cannot convert {type(value).__name__} to a float scalar")


def zero(mode: str) -> Scalar:
    return Fraction(0) if mode == EXACT else 0.0


def one(mode: str) -> Scalar:
    return Fraction(1) if mode == EXACT else 1.0


def is_infinite(v) -> bool:
    return isinstance(v, float) and math.isinf(v)


def is_zero(v, tol: float = 0.0) -> bool:
    if is_infinite(v):
        return False
    return v == 0 if tol == 0 else abs(v) <= tol


def ext_div(num, den, tol: float = 0.0):
    """Extended division with the 0/0 = 0 and sign/0 = +-inf conventions.

    ``tol`` is the zero threshold for both operands (0 in exact mode).
    """
    if is_zero(den, tol):
        if is_zero(num, tol):
            return num * 0
        return INF if num > 0 else NEG_INF
    if is_infinite(den):
        raise ArithmeticError("division by an infinite value is undefined here")
    return num / den


def ext_mul(a, b):
    """Extended product with ``inf * 0 = 0``."""
    if is_infinite(a) and is_infinite(b):
        return a * b
    if is_infinite(a):
        a, b = b, a
    if is_infinite(b):
        if a == 0:
            return a
        return b if a > 0 else -b
    return a * b


def ext_add(a, b):
    if is_infinite(a) and is_infinite(b) and a != b:
        raise ArithmeticError("inf + (-inf) is undefined")
    return a + b


def ext_sub(a, b):
    return ext_add(a, -b)


def ext_sum(values: Iterable, start=None):
    total = start
    for v in values:
        total = v if total is None else ext_add(total, v)
    if total is None:
        raise ValueError("ext_sum of an empty sequence needs a start value")
    return total


def format_scalar(v) -> str:
    """Render a scalar: ``p/q`` for exact values, ``inf``/``-inf`` for infinities."""
    if is_infinite(v):
        return "inf" if v > 0 else "-inf"
    if isinstance(v, Fraction):
        return str(v)
    return repr(float(v))
