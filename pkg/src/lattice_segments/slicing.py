"""Slicing sphere point sets by parallel rational hyperplanes.

Points of a sphere with integer normal ``b`` lie on the planes ``b . x = t``
for integers ``t``, consecutive planes being ``1/|b|`` apart.  A segment of
direction ``b/|b|`` and height ``h`` therefore meets at most
``1 + floor(|b| h)`` of them, each holding at most the per-normal slice
maximum.
"""
from __future__ import annotations

import csv
import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TextIO

import numpy as np

from ._exact import ceil_sqrt, floor_sqrt, primitive, vector_gcd
from .errors import BudgetError, DomainError
from .geometry import Segment, segment_height
from .lattice import SpherePointSet, _dot_rows, cap_threshold, count_segment, inner_threshold

DEFAULT_SWEEP_BUDGET = 200_000


@dataclass(frozen=True)
class SliceHistogram:
    """Point counts per offset ``t = b . x``, ascending in ``t``."""

    normal: tuple[int, ...]
    buckets: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.buckets.values())

    @property
    def max_count(self) -> int:
        return max(self.buckets.values(), default=0)

    def argmax(self) -> list[int]:
        m = self.max_count
        return [t for t, c in self.buckets.items() if c == m]


@dataclass(frozen=True)
class KappaEstimate:
    """Lower bound on the largest number of sphere points on one rational hyperplane.

    Obtained by sweeping all primitive normals with ``b . b <= max_normal_norm**2``.
    """

    value: int
    witnesses: list[tuple[tuple[int, ...], int]] = field(default_factory=list)
    candidate_bound: int = 1
    per_normal: dict[tuple[int, ...], int] = field(default_factory=dict, repr=False)

    def for_normal(self, b) -> int:
        b = _canonical(primitive(b))
        if b not in self.per_normal:
            raise KeyError(f"normal {b} was not swept")
        return self.per_normal[b]


def _canonical(b: tuple[int, ...]) -> tuple[int, ...]:
    """Representative of {b, -b} whose first nonzero entry is positive."""
    for c in b:
        if c:
            return b if c > 0 else tuple(-x for x in b)
    return b


def slice(pts: SpherePointSet, b) -> SliceHistogram:
    """Group the points by the value of ``b . x``."""
    b = tuple(int(c) for c in b)
    g = vector_gcd(b)
    if g == 0:
        raise DomainError("normal must be nonzero")
    if g != 1:
        warnings.warn(f"normal {b} is not primitive; dividing by {g}", stacklevel=2)
        b = tuple(c // g for c in b)
    if len(b) != pts.sphere.d:
        raise DomainError("normal dimension does not match the sphere")
    if len(pts) == 0:
        return SliceHistogram(b, {})
    t = np.asarray(_dot_rows(pts.points, b))
    values, counts = np.unique(t, return_counts=True)
    return SliceHistogram(b, {int(v): int(c) for v, c in zip(values, counts)})


def slab_offsets(seg: Segment, normal: tuple[int, ...] | None = None) -> range:
    """Integer offsets ``t`` whose plane ``b . x = t`` meets the segment.

    The segment is closed on its outer base and open on its inner one, so the
    offsets form the half-open range ``[ceil(|b| lambda_1), ceil(|b| lambda_2))``
    (closed at the apex when the inner cap is empty).
    """
    b = normal if normal is not None else seg.direction.b
    if b is None:
        raise DomainError("slab offsets need a rational direction")
    return range(cap_threshold(seg.outer, b), inner_threshold(seg, b))


def count_slices_hit(seg: Segment) -> int:
    """Number of integer plane offsets meeting a rational-direction segment."""
    return len(slab_offsets(seg))


def slab_bound(seg: Segment, normal=None) -> int:
    """``1 + floor(|b| h)`` computed exactly."""
    b = normal if normal is not None else seg.direction.b
    h2, _ = segment_height(seg)
    return 1 + floor_sqrt(sum(c * c for c in b) * h2)


def _primitive_normals(d: int, max_norm: int):
    """Canonical primitive vectors with ``b . b <= max_norm**2``, in a fixed order."""
    r = range(-max_norm, max_norm + 1)
    lim = max_norm * max_norm
    for b in itertools.product(r, repeat=d):
        if sum(c * c for c in b) > lim or vector_gcd(b) != 1:
            continue
        if _canonical(b) == b:
            yield b


def kappa_estimate(pts: SpherePointSet, max_normal_norm: int,
                   budget: int = DEFAULT_SWEEP_BUDGET) -> KappaEstimate:
    """Sweep all primitive normals up to the given Euclidean norm.

    The result is a certified lower bound for the true maximum over every
    rational hyperplane.
    """
    if max_normal_norm < 1:
        raise DomainError("max_normal_norm must be at least 1")
    d = pts.sphere.d
    if (2 * max_normal_norm + 1) ** d > budget:
        raise BudgetError(f"normal sweep of norm {max_normal_norm} in d={d} exceeds budget {budget}")
    per_normal = {}
    best, witnesses = 0, []
    for b in _primitive_normals(d, max_normal_norm):
        hist = slice(pts, b)
        m = hist.max_count
        per_normal[b] = m
        if m > best:
            best, witnesses = m, []
        if m == best and m > 0:
            witnesses.extend((b, t) for t in hist.argmax())
    return KappaEstimate(best, sorted(witnesses), max_normal_norm, per_normal)


@dataclass(frozen=True)
class SlabBoundReport:
    count: int
    kappa_b: int
    slices_hit: int
    bound: int
    bound_global: int | None
    holds: bool


def check_slab_bound(seg: Segment, pts: SpherePointSet, kappa: KappaEstimate | None = None) -> SlabBoundReport:
    """Check ``count <= kappa_b (1 + ceil(|b| h))`` for a rational-direction segment.

    ``kappa_b`` is the largest slice for the segment's own normal, which is
    all the slicing argument needs.  With ``kappa`` given, the bound with the
    swept global estimate is reported too.
    """
    b = seg.direction.b
    if b is None:
        raise DomainError("check_slab_bound needs a rational direction")
    count = count_segment(seg, pts)
    kappa_b = slice(pts, b).max_count
    h2, _ = segment_height(seg)
    bh_ceil = ceil_sqrt(sum(c * c for c in b) * h2)
    bound = kappa_b * (1 + bh_ceil)
    bound_global = None
    if kappa is not None:
        if _canonical(b) not in kappa.per_normal:
            raise DomainError(f"kappa sweep did not include the normal {b}")
        bound_global = kappa.value * (1 + bh_ceil)
    holds = count <= bound and (bound_global is None or count <= bound_global)
    return SlabBoundReport(count, kappa_b, count_slices_hit(seg), bound, bound_global, holds)


def write_histogram_csv(hists, fh: TextIO) -> None:
    """CSV with columns ``normal, t, count``; the normal is space separated."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["normal", "t", "count"])
    for hist in hists:
        label = " ".join(str(c) for c in hist.normal)
        for t, c in hist.buckets.items():
            w.writerow([label, t, c])
