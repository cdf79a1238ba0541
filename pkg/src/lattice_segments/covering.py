"""Covering a segment by one of integer direction, and the end-to-end bound.

Given a segment ``S = T1 \\ T2`` of direction ``beta`` and an integer vector
``a`` at angle ``phi`` from ``beta``, the segment ``S'`` of direction
``a/|a|`` with radii

    r1' ** 2 = r1 ** 2 + 4 R r1 sin(phi/2) + 4 R**2 sin(phi/2) ** 2
    r2'      = r2 - 2 R sin(phi/2)            (inner cap dropped if negative)

contains ``S``.  Both containments only get easier when ``sin(phi/2)`` is
replaced by a larger number, so a certified rational upper bound is used and
all radii stay exact rationals, rounded outward.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from ._exact import floor_sqrt, primitive, round_down, round_up, sqrt_upper
from .diophantine import (DirectionApproximation, approx_direction,
                          approx_direction_rational_quotients)
from .errors import DomainError
from .geometry import Direction, Segment, SphereSpec, angle_from_radius, unit_distance_sq_upper
from .lattice import SpherePointSet, enumerate_sphere, segment_mask
from .slicing import slab_offsets, slice

# dyadic precision used when rounding the covering radii outward
RADIUS_BITS = 96


@dataclass(frozen=True)
class CoveringSegment:
    """Segment ``covering`` of integer direction ``a`` containing ``original``."""

    original: Segment
    a: tuple[int, ...]
    sin_half_phi_upper: Fraction
    rho1_prime: Fraction
    rho2_prime: Fraction
    height_prime_bound: Fraction
    inner_empty: bool = False

    @property
    def covering(self) -> Segment:
        return Segment(self.original.sphere, Direction.rational(self.a), self.rho1_prime,
                       self.rho2_prime, inner_empty=self.inner_empty)


def covering_radii(sphere: SphereSpec, rho1: Fraction, rho2: Fraction,
                   s_bar: Fraction, inner_empty: bool = False) -> tuple[Fraction, Fraction, bool]:
    """Outer radius rounded up and inner radius rounded down, both squared.

    The flag is True when the inner cap vanishes (``r2 <= 2 R s_bar``).
    """
    n = sphere.n
    if s_bar == 0:
        return rho1, rho2, inner_empty
    r1p = rho1 + 4 * sqrt_upper(n * rho1) * s_bar + 4 * n * s_bar * s_bar
    r1p = min(Fraction(4 * n), round_up(r1p, RADIUS_BITS))
    if inner_empty or rho2 <= 4 * n * s_bar * s_bar:
        return r1p, Fraction(0), True
    else:
        # (sqrt(rho2) - 2 sqrt(n) s_bar)^2 with the cross term over-subtracted
        r2p = rho2 - 4 * sqrt_upper(n * rho2) * s_bar + 4 * n * s_bar * s_bar
        r2p = max(Fraction(0), round_down(r2p, RADIUS_BITS))
    return r1p, r2p, False


def build_covering(seg: Segment, a, sin_half_phi_upper: Fraction | None = None) -> CoveringSegment:
    """Covering segment of direction ``a`` for ``seg``.

    ``sin_half_phi_upper`` defaults to a certified bound computed from the
    exact representative of the segment's direction; any larger value is
    also valid and only enlarges the cover.
    """
    a = tuple(int(c) for c in a)
    if not any(a):
        raise DomainError("covering direction must be nonzero")
    if len(a) != seg.sphere.d:
        raise DomainError("covering direction has the wrong dimension")
    if sin_half_phi_upper is None:
        dist2 = unit_distance_sq_upper(seg.direction, a)
        s_bar = Fraction(0) if dist2 == 0 else round_up(sqrt_upper(dist2 / 4), RADIUS_BITS)
    else:
        s_bar = Fraction(sin_half_phi_upper)
        if s_bar < 0:
            raise DomainError("sin(phi/2) bound must be non-negative")
    r1p, r2p, empty = covering_radii(seg.sphere, seg.rho1, seg.rho2, s_bar, seg.inner_empty)
    h_up = sqrt_upper((r1p - r2p) ** 2 / (4 * seg.sphere.n)) if seg.sphere.n else Fraction(0)
    return CoveringSegment(seg, a, s_bar, r1p, r2p, h_up, empty)


@dataclass(frozen=True)
class HeightBound:
    numerator: Fraction   # h' = numerator / (2 sqrt(n))
    n: int
    upper: Fraction
    value: float
    formula_value: float  # unrounded height from the sine expression
    ratio: float          # h' / (R (theta + phi))


def height_bound(cov: CoveringSegment) -> HeightBound:
    """Height of the covering segment, exact and as floats for reporting."""
    seg = cov.original
    n = seg.sphere.n
    num = cov.rho1_prime - cov.rho2_prime
    R = math.sqrt(n)
    value = float(num) / (2 * R)
    t1 = angle_from_radius(seg.sphere, seg.rho1)
    t2 = angle_from_radius(seg.sphere, seg.rho2)
    sp = float(cov.sin_half_phi_upper)
    s1, s2 = math.sin(t1 / 4), math.sin(t2 / 4)
    formula = 2 * R * (s1 * s1 - s2 * s2) + 4 * R * sp * (s1 + s2)
    phi = 2 * math.asin(min(1.0, sp))
    denom = R * ((t1 - t2) + phi)
    ratio = value / denom if denom > 0 else math.inf
    return HeightBound(num, n, cov.height_prime_bound, value, formula, ratio)


@dataclass(frozen=True)
class BoundReport:
    """One instance of the end-to-end counting bound.

    ``holds_exact_chain`` records that every point of S lies in S' and that
    ``count_S <= count_Sprime <= kappa_b * slices_hit <= bound_value`` with
    ``slices_hit <= 1 + floor(|b| h')``, all in exact arithmetic.
    """

    d: int
    n: int
    theta: float
    direction: str
    mode: str
    s: int
    H: int
    a: tuple[int, ...]
    norm_a: float
    phi_upper: float
    count_S: int
    count_Sprime: int
    slices_hit: int
    kappa_b: int
    bound_value: int
    h_prime: float
    ratio_thm: float
    ratio_cover: float
    holds_exact_chain: bool

    CSV_FIELDS = ("d", "n", "theta", "direction", "mode", "s", "H", "a", "norm_a", "phi_upper",
                  "count_S", "count_Sprime", "slices_hit", "kappa_b", "bound_value", "h_prime",
                  "ratio_thm", "ratio_cover", "holds_exact_chain")

    def to_row(self) -> list[str]:
        out = []
        for name in self.CSV_FIELDS:
            v = getattr(self, name)
            if isinstance(v, bool):
                out.append("true" if v else "false")
            elif isinstance(v, float):
                out.append(repr(v))
            elif isinstance(v, tuple):
                out.append(" ".join(str(c) for c in v))
            else:
                out.append(str(v))
        return out


def describe_direction(direction: Direction) -> str:
    if direction.is_rational:
        return "b:" + " ".join(str(c) for c in direction.b)
    text = "v:" + " ".join(repr(c) for c in direction.v)
    if direction.rational_mask:
        text += " | q:" + " ".join(f"{i}={val}" for i, val in direction.rational_mask.items())
    return text


def choose_H(theta: float, exponent_den: int) -> int:
    """``ceil(theta ** (-1/exponent_den))``, at least 1."""
    if theta <= 0:
        raise DomainError("opening angle must be positive")
    return max(1, math.ceil(theta ** (-1.0 / exponent_den)))


def bound_pipeline(seg: Segment, mode: str = "generic", pts: SpherePointSet | None = None,
                   H: int | None = None) -> BoundReport:
    """Cover ``seg`` by an integer-direction segment and bound its point count.

    ``mode`` is ``"generic"`` (direction approximated with ``H = ceil(theta**(-1/d))``)
    or ``"rational_quotients"`` (uses the direction's declared rational
    coordinates, ``H = ceil(theta**(-1/(d-s)))``; with every quotient rational
    the direction is used as is).
    """
    sphere = seg.sphere
    d = sphere.d
    if pts is None:
        pts = enumerate_sphere(sphere)
    elif pts.sphere != sphere:
        raise DomainError("point set belongs to a different sphere")
    theta = seg.opening_angle
    direction = seg.direction

    if mode == "generic":
        s = 0
        if direction.is_rational:
            raise DomainError("generic mode expects a real direction")
        H = H or choose_H(theta, d)
        a = approx_direction(direction, H).a
    elif mode == "rational_quotients":
        s = direction.n_rational_quotients
        if s == d - 1:
            H = H or choose_H(theta, 1)
            a = direction.integer_vector()
        else:
            H = H or choose_H(theta, d - s)
            a = approx_direction_rational_quotients(direction, H).a
    else:
        raise DomainError(f"unknown mode {mode!r}")

    cov = build_covering(seg, a)
    cover = cov.covering
    b = cover.direction.b
    in_S = segment_mask(seg, pts, exact=True)
    in_Sp = segment_mask(cover, pts)
    count_S, count_Sp = int(in_S.sum()), int(in_Sp.sum())
    contained = bool(np.all(in_Sp[in_S]))

    kappa_b = slice(pts, b).max_count
    slices_hit = len(slab_offsets(cover))
    h2p = (cov.rho1_prime - cov.rho2_prime) ** 2 / (4 * sphere.n)
    norm_a2 = sum(c * c for c in a)
    bound_value = kappa_b * (1 + floor_sqrt(norm_a2 * h2p))
    slab_limit = 1 + floor_sqrt(sum(c * c for c in b) * h2p)
    holds = (contained and count_S <= count_Sp <= kappa_b * slices_hit <= bound_value
             and slices_hit <= slab_limit)

    R = math.sqrt(sphere.n)
    e = d - s
    hb = height_bound(cov)
    phi = 2 * math.asin(min(1.0, float(cov.sin_half_phi_upper)))
    denom = kappa_b * (1 + R * theta ** (1.0 / e))
    ratio_thm = count_S / denom if denom else 0.0
    denom2 = kappa_b * (1 + R * math.sqrt(norm_a2) * (theta + phi))
    ratio_l2 = count_S / denom2 if denom2 else 0.0

    return BoundReport(
        d=d, n=sphere.n, theta=theta, direction=describe_direction(direction), mode=mode, s=s,
        H=H, a=tuple(a), norm_a=math.sqrt(norm_a2), phi_upper=phi, count_S=count_S,
        count_Sprime=count_Sp, slices_hit=slices_hit, kappa_b=kappa_b, bound_value=bound_value,
        h_prime=hb.value, ratio_thm=ratio_thm, ratio_cover=ratio_l2, holds_exact_chain=holds,
    )
