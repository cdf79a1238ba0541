"""Spheres, directions, caps and segments, and the radius/angle/height conversions.

Only the squared radius ``n = R**2`` of a sphere is stored; ``R`` itself is
never materialised as a float in the core types.  Cap sizes are squared cap
radii ``rho = r**2`` held as exact rationals, and the base hyperplane of a cap
is described by the rational ``c = n - rho/2`` so that it reads
``beta . x = c / sqrt(n)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ._exact import dot, integer_multiple, primitive, sqrt_lower, sqrt_upper, to_fraction, vector_gcd
from .errors import DomainError

UNIT_TOL = 2.0 ** -40


@dataclass(frozen=True)
class SphereSpec:
    """The sphere of squared radius ``n`` in ``d`` dimensions."""

    d: int
    n: int

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.d!r}")
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"squared radius must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "n", int(self.n))

    @property
    def radius(self) -> float:
        """R as a float, for reporting only."""
        return math.sqrt(self.n)


@dataclass(frozen=True)
class Direction:
    """Unit direction of a cap or segment.

    A *rational* direction is a primitive integer vector ``b`` (the direction is
    ``b/|b|``).  A *real* direction keeps the vector ``raw`` it was built from,
    a nonzero multiple ``k beta`` read exactly from its float/Fraction
    entries, together with its unit float view ``v`` and an optional mask of
    coordinates of ``raw`` declared rational (index -> exact value).

    Exact computations treat a real direction as ``u/|u|`` where ``u`` is
    ``raw`` with the masked coordinates replaced by their declared values.
    """

    b: tuple[int, ...] | None = None
    v: tuple[float, ...] | None = None
    rational_mask: Mapping[int, Fraction] = field(default_factory=dict)
    raw: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if (self.b is None) == (self.v is None):
            raise DomainError("give exactly one of an integer vector b or a real vector v")
        if self.b is not None:
            b = tuple(int(c) for c in self.b)
            if any(c != bc for c, bc in zip(b, self.b)):
                raise DomainError("rational direction needs integer entries")
            if vector_gcd(b) != 1:
                raise DomainError(f"rational direction must be primitive and nonzero, got {b}")
            object.__setattr__(self, "b", b)
            object.__setattr__(self, "rational_mask", {})
            object.__setattr__(self, "raw", None)
            return
        v = tuple(float(c) for c in self.v)
        if len(v) < 2 or not all(math.isfinite(c) for c in v):
            raise DomainError("real direction needs at least two finite coordinates")
        if abs(math.fsum(c * c for c in v) - 1.0) > UNIT_TOL:
            raise DomainError("real direction must be unit length within 2**-40")
        raw = tuple(to_fraction(c) for c in (self.raw if self.raw is not None else v))
        if len(raw) != len(v):
            raise DomainError("raw vector length differs from v")
        k = math.sqrt(math.fsum(float(c) ** 2 for c in raw))
        if k == 0 or any(abs(float(r) - k * c) > UNIT_TOL * k for r, c in zip(raw, v)):
            raise DomainError("raw vector is not parallel to v")
        mask = {}
        for i, val in dict(self.rational_mask).items():
            if not 0 <= int(i) < len(v):
                raise DomainError(f"mask index {i} out of range")
            val = to_fraction(val)
            if abs(float(val) - float(raw[int(i)])) > UNIT_TOL * k:
                raise DomainError(f"mask value {val} does not match coordinate {i}")
            mask[int(i)] = val
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "raw", raw)
        object.__setattr__(self, "rational_mask", dict(sorted(mask.items())))

    @classmethod
    def rational(cls, b: Sequence[int]) -> "Direction":
        """Rational direction along the integer vector ``b`` (made primitive)."""
        return cls(b=primitive(b))

    @classmethod
    def real(cls, u: Sequence, rational: Mapping[int, object] | None = None) -> "Direction":
        """Real direction along the nonzero vector ``u``.

        ``u`` need not be unit: it plays the role of ``k beta``, and
        ``rational`` maps coordinate indices of ``u`` to their exact values.
        ``Direction.real([1, 1, 2 ** 0.5], rational={0: 1, 1: 1})`` is the
        direction ``(1, 1, sqrt 2)/2`` with two rational coordinates.
        """
        raw = tuple(to_fraction(c) for c in u)
        fl = [float(c) for c in raw]
        norm = math.sqrt(math.fsum(c * c for c in fl))
        if norm == 0:
            raise DomainError("zero vector has no direction")
        return cls(v=tuple(c / norm for c in fl), rational_mask=dict(rational or {}), raw=raw)

    @property
    def is_rational(self) -> bool:
        return self.b is not None

    @property
    def dim(self) -> int:
        return len(self.b if self.b is not None else self.v)

    @property
    def n_rational_quotients(self) -> int:
        """Declared number of rational quotients (mask size minus one)."""
        if self.b is not None:
            return self.dim - 1
        return len(self.rational_mask) - 1

    def exact_vector(self) -> tuple[Fraction, ...]:
        """Exact vector parallel to the direction (``b`` or the representative ``u``)."""
        if self.b is not None:
            return tuple(Fraction(c) for c in self.b)
        return tuple(self.rational_mask.get(i, c) for i, c in enumerate(self.raw))

    def integer_vector(self) -> tuple[int, ...]:
        """Primitive integer vector parallel to :meth:`exact_vector`."""
        return integer_multiple(self.exact_vector())

    def unit_floats(self) -> tuple[float, ...]:
        if self.b is not None:
            nb = math.sqrt(sum(c * c for c in self.b))
            return tuple(c / nb for c in self.b)
        return self.v

    def __neg__(self) -> "Direction":
        if self.b is not None:
            return Direction(b=tuple(-c for c in self.b))
        return Direction(v=tuple(-c for c in self.v),
                         rational_mask={i: -val for i, val in self.rational_mask.items()},
                         raw=tuple(-c for c in self.raw))


def _check_rho(sphere: SphereSpec, rho) -> Fraction:
    rho = to_fraction(rho)
    if rho < 0 or rho > 4 * sphere.n:
        raise DomainError(f"squared cap radius {rho} outside [0, 4n] = [0, {4 * sphere.n}]")
    return rho


def _check_dim(sphere: SphereSpec, direction: Direction):
    if direction.dim != sphere.d:
        raise DomainError(f"direction has dimension {direction.dim}, sphere has {sphere.d}")


@dataclass(frozen=True)
class Cap:
    """Points of the sphere within distance ``sqrt(rho)`` of ``R * beta``."""

    sphere: SphereSpec
    direction: Direction
    rho: Fraction

    def __post_init__(self):
        _check_dim(self.sphere, self.direction)
        object.__setattr__(self, "rho", _check_rho(self.sphere, self.rho))

    @property
    def offset(self) -> Fraction:
        return plane_offset(self.sphere, self.rho)


@dataclass(frozen=True)
class Segment:
    """Outer cap of squared radius ``rho1`` minus the inner cap of squared radius ``rho2``.

    With ``inner_empty`` the inner cap is removed altogether (``rho2`` must be
    0) and the segment is the whole outer cap, apex included.  Covering
    segments use this when the shrunken inner radius would be negative.
    """

    sphere: SphereSpec
    direction: Direction
    rho1: Fraction
    rho2: Fraction
    inner_empty: bool = False

    def __post_init__(self):
        _check_dim(self.sphere, self.direction)
        rho1 = _check_rho(self.sphere, self.rho1)
        rho2 = _check_rho(self.sphere, self.rho2)
        if not rho1 > rho2:
            raise DomainError(f"segment needs rho1 > rho2, got {rho1} <= {rho2}")
        if self.inner_empty and rho2 != 0:
            raise DomainError("an empty inner cap needs rho2 = 0")
        object.__setattr__(self, "rho1", rho1)
        object.__setattr__(self, "rho2", rho2)

    @property
    def outer(self) -> Cap:
        return Cap(self.sphere, self.direction, self.rho1)

    @property
    def inner(self) -> Cap:
        return Cap(self.sphere, self.direction, self.rho2)

    @property
    def opening_angle(self) -> float:
        return (angle_from_radius(self.sphere, self.rho1)
                - angle_from_radius(self.sphere, self.rho2))


def radius_from_angle(sphere: SphereSpec, theta: float) -> float:
    """Squared cap radius ``4 n sin(theta/4)**2`` of a cap with opening angle ``theta``."""
    theta = float(theta)
    if not 0.0 <= theta <= 2 * math.pi:
        raise DomainError(f"opening angle {theta} outside [0, 2pi]")
    return 4.0 * sphere.n * math.sin(theta / 4.0) ** 2


def angle_from_radius(sphere: SphereSpec, rho) -> float:
    """Opening angle ``4 asin(sqrt(rho / 4n))`` of a cap with squared radius ``rho``."""
    rho = _check_rho(sphere, rho)
    if rho == 0:
        return 0.0
    # atan2 of (sin, cos) of theta/4 stays well conditioned near theta = 2pi
    return 4.0 * math.atan2(math.sqrt(float(rho)), math.sqrt(float(4 * sphere.n - rho)))


def segment_height(seg: Segment) -> tuple[Fraction, float]:
    """Distance between the two base hyperplanes of a segment.

    Returns the exact squared height ``(rho1 - rho2)**2 / 4n`` and its float
    square root.
    """
    h2 = (seg.rho1 - seg.rho2) ** 2 / (4 * seg.sphere.n)
    return h2, math.sqrt(h2)


def base_radius_squared(sphere: SphereSpec, rho) -> Fraction:
    """Squared radius ``rho - rho**2 / 4n`` of the (d-2)-sphere bounding a cap."""
    rho = _check_rho(sphere, rho)
    if sphere.n == 0:
        return Fraction(0)
    return rho - rho * rho / (4 * sphere.n)


def plane_offset(sphere: SphereSpec, rho) -> Fraction:
    """Rational ``c = n - rho/2``; the cap's base lies on ``beta . x = c / sqrt(n)``."""
    rho = _check_rho(sphere, rho)
    return sphere.n - rho / 2


def unit_distance_sq_upper(direction: Direction, a: Sequence[int], bits: int = 160) -> Fraction:
    """Certified rational upper bound on ``|beta - a/|a||**2``.

    Exact (zero) when ``a`` is parallel to the exact representative of the
    direction.
    """
    u = direction.exact_vector()
    a = [int(c) for c in a]
    c = dot(u, a)
    p = dot(u, u) * sum(x * x for x in a)
    if p == 0:
        raise DomainError("zero vector")
    # |beta - a/|a||^2 = 2 - 2 c / sqrt(p); bound c / sqrt(p) from below
    if c >= 0:
        cos_lo = c / sqrt_upper(p, bits)
    else:
        cos_lo = c / sqrt_lower(p, bits)
    return max(Fraction(0), 2 - 2 * min(Fraction(1), cos_lo))
