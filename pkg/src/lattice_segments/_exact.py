"""Exact rational helpers: conversions, square-root brackets and directed rounding.

Everything here works on :class:`fractions.Fraction` and Python ints, so the
results are exact or rounded in an explicitly stated direction.
"""
from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction
from numbers import Rational

import mpmath

# Working precision (fractional bits) for square-root brackets.
SQRT_BITS = 160


def to_fraction(x) -> Fraction:
    """Convert ``x`` to an exact Fraction.

    Floats, Decimals and mpmath ``mpf`` values are binary/decimal rationals and
    convert without loss.  Strings may be ``"p/q"`` or decimal literals.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(x)
    if isinstance(x, Decimal):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, mpmath.mpf):
        if not mpmath.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        sign, man, exp, _ = x._mpf_
        v = Fraction(int(man)) * (Fraction(2) ** int(exp))
        return -v if sign else v
    # numpy scalars and the like
    if hasattr(x, "item"):
        return to_fraction(x.item())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def to_interval(x) -> tuple[Fraction, Fraction]:
    """Exact enclosure ``(lo, hi)`` of a real input.

    Point inputs give a degenerate interval; ``mpmath.iv.mpf`` values and
    ``(lo, hi)`` pairs give their endpoints.
    """
    if isinstance(x, tuple) and len(x) == 2:
        lo, hi = to_fraction(x[0]), to_fraction(x[1])
    elif hasattr(x, "a") and hasattr(x, "b") and type(x).__module__.startswith("mpmath"):
        lo, hi = to_fraction(mpmath.mpf(x.a)), to_fraction(mpmath.mpf(x.b))
    else:
        lo = hi = to_fraction(x)
    if lo > hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    return lo, hi


def floor_sqrt(q: Fraction) -> int:
    """floor(sqrt(q)) for a non-negative rational."""
    if q < 0:
        raise ValueError("square root of a negative number")
    return math.isqrt(q.numerator // q.denominator)


def ceil_sqrt(q: Fraction) -> int:
    f = floor_sqrt(q)
    return f if f * f == q else f + 1


def exact_sqrt(q: Fraction) -> Fraction | None:
    """sqrt(q) if it is rational, else None."""
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def sqrt_lower(q, bits: int = SQRT_BITS) -> Fraction:
    """Rational lower bound on sqrt(q), exact when sqrt(q) is rational."""
    q = to_fraction(q)
    r = exact_sqrt(q)
    if r is not None:
        return r
    scale = 1 << bits
    return Fraction(floor_sqrt(q * scale * scale), scale)


def sqrt_upper(q, bits: int = SQRT_BITS) -> Fraction:
    """Rational upper bound on sqrt(q), exact when sqrt(q) is rational."""
    q = to_fraction(q)
    r = exact_sqrt(q)
    if r is not None:
        return r
    scale = 1 << bits
    return Fraction(floor_sqrt(q * scale * scale) + 1, scale)


def signed_sqrt_ceil(sign: int, q: Fraction) -> int:
    """ceil(sign * sqrt(q)) for sign in {-1, 0, 1}."""
    if sign == 0 or q == 0:
        return 0
    return ceil_sqrt(q) if sign > 0 else -floor_sqrt(q)


def signed_sqrt_floor(sign: int, q: Fraction) -> int:
    if sign == 0 or q == 0:
        return 0
    return floor_sqrt(q) if sign > 0 else -ceil_sqrt(q)


def round_up(x: Fraction, bits: int) -> Fraction:
    """Smallest multiple of 2**-bits that is >= x."""
    scale = 1 << bits
    return Fraction(-((-x.numerator * scale) // x.denominator), scale)


def round_down(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction((x.numerator * scale) // x.denominator, scale)


def round_half_away(x: Fraction) -> int:
    """Nearest integer, ties away from zero."""
    if x >= 0:
        return math.floor(x + Fraction(1, 2))
    return -math.floor(-x + Fraction(1, 2))


def vector_gcd(v) -> int:
    g = 0
    for c in v:
        g = math.gcd(g, int(c))
    return g


def primitive(v) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = vector_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(int(c) // g for c in v)


def integer_multiple(v) -> tuple[int, ...]:
    """Smallest positive integer multiple of a rational vector, made primitive."""
    fr = [to_fraction(c) for c in v]
    den = 1
    for c in fr:
        den = math.lcm(den, c.denominator)
    return primitive([int(c * den) for c in fr])


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))
