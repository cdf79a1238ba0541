"""Simultaneous Diophantine approximation and integer approximations of directions.

``dirichlet_approx`` searches ``q = 1, 2, ..., H**m`` for the first
denominator with ``|xi_i - p_i/q| <= 1/(qH)`` for every target.  A float
pass screens each block of candidates with a generous slack, and only the
surviving ``q`` are decided in exact rational arithmetic against interval
enclosures of the targets.  Dirichlet's theorem guarantees a hit within the
range.

``approx_direction`` turns a unit vector into an integer vector ``a`` of norm
``O(H**(d-1))`` whose direction is within ``O(1/(|a| H))``;
``approx_direction_rational_quotients`` does better when some multiple of
the direction has several rational coordinates.  Both return the certified
squared bounds alongside ``a``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._exact import (round_half_away, sqrt_lower, sqrt_upper, to_fraction, to_interval)
from .errors import CertificationError, DomainError, PrecisionError
from .geometry import Direction, unit_distance_sq_upper

# q values screened per numpy block
_BLOCK = 1 << 16


@dataclass(frozen=True)
class DirichletResult:
    q: int
    p: tuple[int, ...]
    H: int

    def errors(self, xi) -> list[Fraction]:
        """Worst-case ``|xi_i - p_i/q|`` over each target's enclosure."""
        out = []
        for x, p in zip(xi, self.p):
            lo, hi = to_interval(x)
            r = Fraction(p, self.q)
            out.append(max(abs(lo - r), abs(hi - r)))
        return out


def verify_dirichlet(xi, res: DirichletResult) -> bool:
    """Re-check ``1 <= q <= H**m`` and ``|xi_i - p_i/q| <= 1/(qH)`` exactly."""
    m = len(res.p)
    if m != len(xi) or not 1 <= res.q <= res.H ** m:
        return False
    tol = Fraction(1, res.q * res.H)
    return all(e <= tol for e in res.errors(xi))


def _decide(q: int, H: int, enclosures) -> tuple[int, ...] | None:
    """Exact verdict for one q: the p vector if certified, None if certainly not.

    Raises PrecisionError if the enclosures straddle the boundary.
    """
    p_out = []
    uncertain = False
    tol = Fraction(1, H)
    for lo, hi in enclosures:
        qlo, qhi = q * lo, q * hi
        p = round_half_away((qlo + qhi) / 2)
        # every integer that could be within 1/H of some point of [qlo, qhi]
        cands = range(math.floor(qlo - tol), math.ceil(qhi + tol) + 1)
        if max(abs(qlo - p), abs(qhi - p)) <= tol:
            p_out.append(p)
            continue
        if any(c - tol <= qhi and qlo <= c + tol for c in cands):
            uncertain = True
            p_out.append(p)
            continue
        return None
    if uncertain:
        raise PrecisionError(f"target enclosures too wide to decide q={q} at H={H}")
    return tuple(p_out)


def dirichlet_approx(xi: Sequence, H: int) -> DirichletResult:
    """Smallest ``q <= H**m`` with integers ``p_i`` such that ``|xi_i - p_i/q| <= 1/(qH)``.

    Targets may be exact numbers (ints, Fractions, floats, mpmath values) or
    enclosures given as ``(lo, hi)`` pairs or ``mpmath.iv`` intervals.  Ties
    in rounding ``q xi_i`` go away from zero.
    """
    H = int(H)
    if H < 1:
        raise DomainError("H must be a positive integer")
    if len(xi) < 1:
        raise DomainError("need at least one target")
    enclosures = [to_interval(x) for x in xi]
    m = len(enclosures)
    q_max = H ** m
    mids = np.array([float((lo + hi) / 2) for lo, hi in enclosures])
    # float screen: generous slack covers rounding in q * xi and the enclosure width
    width = max(float(hi - lo) for lo, hi in enclosures)
    for start in range(1, q_max + 1, _BLOCK):
        qs = np.arange(start, min(start + _BLOCK, q_max + 1), dtype=np.float64)
        prod = qs[:, None] * mids[None, :]
        err = np.abs(prod - np.round(prod))
        slack = 1e-9 + qs * (width + 1e-12 * (1 + np.abs(mids).max()))
        ok = np.all(err <= 1.0 / H + slack[:, None], axis=1)
        for q in qs[ok].astype(np.int64):
            p = _decide(int(q), H, enclosures)
            if p is not None:
                return DirichletResult(int(q), p, H)
    raise CertificationError("no denominator found in the Dirichlet range")  # pragma: no cover


@dataclass(frozen=True)
class DifferenceBound:
    lhs_upper: Fraction
    rhs_lower: Fraction
    holds: bool


def normalized_difference_bound(alpha: Sequence, beta: Sequence) -> DifferenceBound:
    """Check ``|alpha/|alpha| - beta/|beta|| <= 2 |alpha - beta| / |alpha|``.

    Squared sides are bracketed in exact arithmetic with outward rounding, so
    ``holds`` is True only when the inequality really holds.  Returned values
    are the upper bound on the squared left side and the lower bound on the
    squared right side.
    """
    a = [to_fraction(x) for x in alpha]
    b = [to_fraction(x) for x in beta]
    if len(a) != len(b):
        raise DomainError("vectors differ in length")
    na2, nb2 = sum(x * x for x in a), sum(x * x for x in b)
    if na2 == 0 or nb2 == 0:
        raise DomainError("zero vector")
    ab = sum(x * y for x, y in zip(a, b))
    # |a/|a| - b/|b||^2 = 2 - 2 ab / sqrt(na2 nb2)
    p = na2 * nb2
    cos_lo = ab / sqrt_upper(p) if ab >= 0 else ab / sqrt_lower(p)
    lhs = max(Fraction(0), 2 - 2 * min(Fraction(1), cos_lo))
    rhs = 4 * sum((x - y) ** 2 for x, y in zip(a, b)) / na2
    return DifferenceBound(lhs, rhs, lhs <= rhs)


@dataclass(frozen=True)
class DirectionApproximation:
    """Integer vector ``a`` approximating a direction, with certified bounds.

    Bounds are stored squared so that they stay rational:
    ``|a|**2 <= norm_bound_sq`` and ``|beta - a/|a|| ** 2 <= angle_sq_upper
    <= angle_bound_sq``.  ``norm_constant_sq`` and ``angle_constant_sq`` are
    the squared constants ``C1**2`` and ``C2**2`` in ``|a| <= C1 H**exponent``
    and ``|beta - a/|a|| <= C2 / (|a| H)``.
    """

    a: tuple[int, ...]
    H: int
    q: int
    exponent: int
    norm_sq: int
    norm_bound_sq: Fraction
    angle_sq_upper: Fraction
    angle_bound_sq: Fraction
    norm_constant_sq: Fraction
    angle_constant_sq: Fraction

    @property
    def norm(self) -> float:
        return math.sqrt(self.norm_sq)

    @property
    def sin_half_phi_upper(self) -> Fraction:
        """Rational upper bound on ``sin(phi/2) = |beta - a/|a|| / 2``."""
        return sqrt_upper(self.angle_sq_upper / 4)

    @property
    def certified(self) -> bool:
        return self.norm_sq <= self.norm_bound_sq and self.angle_sq_upper <= self.angle_bound_sq


def _max_index(u) -> int:
    best = max(abs(c) for c in u)
    return next(i for i, c in enumerate(u) if abs(c) == best)


def approx_direction(beta: Direction, H: int) -> DirectionApproximation:
    """Integer ``a`` with ``|a| <= sqrt(4d-3) H**(d-1)`` and ``|beta - a/|a|| <= 2 sqrt(4d^2-7d+3)/(|a| H)``.

    The largest coordinate ``beta_j`` (lowest index on ties) is the pivot;
    the other coordinates divided by it are approximated simultaneously with
    a common denominator ``q``, which becomes ``a_j``.
    """
    if beta.is_rational:
        raise DomainError("direction is already rational")
    H = int(H)
    if H < 1:
        raise DomainError("H must be a positive integer")
    u = beta.exact_vector()
    d = len(u)
    j = _max_index(u)
    others = [i for i in range(d) if i != j]
    res = dirichlet_approx([u[i] / u[j] for i in others], H)
    a = [0] * d
    a[j] = res.q
    for i, p in zip(others, res.p):
        a[i] = p
    if u[j] < 0:
        a = [-c for c in a]
    a = tuple(a)
    norm_sq = sum(c * c for c in a)
    norm_c2 = Fraction(4 * d - 3)
    angle_c2 = Fraction(4 * (4 * d * d - 7 * d + 3))
    approx = DirectionApproximation(
        a=a, H=H, q=res.q, exponent=d - 1, norm_sq=norm_sq,
        norm_bound_sq=norm_c2 * H ** (2 * (d - 1)),
        angle_sq_upper=unit_distance_sq_upper(beta, a),
        angle_bound_sq=angle_c2 / (norm_sq * H * H),
        norm_constant_sq=norm_c2, angle_constant_sq=angle_c2,
    )
    if not (approx.certified and norm_sq <= norm_c2 * res.q ** 2):
        raise CertificationError(f"approximation {a} failed its certificate")
    return approx


@dataclass(frozen=True)
class RationalQuotientApproximation(DirectionApproximation):
    """Approximation for a direction with declared rational quotients.

    ``m`` is the product of the denominators of the declared rational
    coordinates and ``k_lower``/``k_upper`` bracket the scalar ``k`` with
    ``k beta`` equal to the exact representative.
    """

    m: int = 1
    s: int = 0
    q_prime: int = 1
    k_lower: Fraction = Fraction(1)
    k_upper: Fraction = Fraction(1)


def approx_direction_rational_quotients(beta: Direction, H: int) -> RationalQuotientApproximation:
    """Approximation exploiting ``s`` declared rational quotients (``1 <= s <= d-2``).

    Only the ``d-1-s`` irrational coordinates of ``k beta`` are approximated,
    with denominator ``q' <= H**(d-1-s)``.  With ``m`` the product of the
    rational coordinates' denominators and ``q = q' m``, the rational
    coordinates become ``q m_i/n_i`` and the others ``m p_i``.  Certified:
    ``|a| <= (1+|k|) d m H**(d-1-s)`` and
    ``|beta - a/|a|| <= 2 (1+|k|) d m sqrt(d-1-s) / (|k| |a| H)``.
    """
    if beta.is_rational:
        raise DomainError("direction is already rational")
    H = int(H)
    if H < 1:
        raise DomainError("H must be a positive integer")
    u = beta.exact_vector()
    d = len(u)
    s = beta.n_rational_quotients
    if s == d - 1:
        raise DomainError("all quotients rational: use the exact integer direction instead")
    if not 1 <= s <= d - 2:
        raise DomainError(f"number of rational quotients s={s} outside [1, d-2]")
    rat = sorted(beta.rational_mask)
    irr = [i for i in range(d) if i not in beta.rational_mask]
    m = math.prod(u[i].denominator for i in rat)
    res = dirichlet_approx([u[i] for i in irr], H)
    q = res.q * m
    a = [0] * d
    for i in rat:
        a[i] = int(q * u[i])
    for i, p in zip(irr, res.p):
        a[i] = m * p
    a = tuple(a)
    norm_sq = sum(c * c for c in a)
    # k beta = u exactly with k = |u|; bracket it
    u2 = sum(c * c for c in u)
    k_lo, k_hi = sqrt_lower(u2, 64), sqrt_upper(u2, 64)
    e = d - 1 - s
    norm_c2 = ((1 + k_hi) * d * m) ** 2
    angle_c2 = 4 * ((1 + k_lo) * d * m) ** 2 * e / (k_lo * k_lo)
    approx = RationalQuotientApproximation(
        a=a, H=H, q=q, exponent=e, norm_sq=norm_sq,
        norm_bound_sq=norm_c2 * H ** (2 * e),
        angle_sq_upper=unit_distance_sq_upper(beta, a),
        angle_bound_sq=angle_c2 / (norm_sq * H * H),
        norm_constant_sq=norm_c2, angle_constant_sq=angle_c2,
        m=m, s=s, q_prime=res.q, k_lower=k_lo, k_upper=k_hi,
    )
    if not approx.certified:
        raise CertificationError(f"approximation {a} failed its certificate")
    return approx
