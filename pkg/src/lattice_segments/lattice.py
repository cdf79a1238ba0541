"""Integer points on spheres and exact cap/segment membership.

Enumeration walks the coordinates in lexicographic order: the first ``d - 2``
coordinates are expanded level by level within the remaining square budget,
and the last two are read off a cached table of two-square decompositions.
Because every expansion step is emitted in ascending order, the result is
already sorted.

Membership in a cap of rational direction ``b`` reduces to comparing the
integer ``t = b . x`` against the integer threshold
``ceil(|b| c / sqrt(n))`` with ``c = n - rho/2``; the threshold is obtained
exactly by the squared comparison ``t**2 n`` versus ``(b . b) c**2``.
"""
from __future__ import annotations

import functools
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, TextIO

import numpy as np

from ._exact import dot, floor_sqrt, signed_sqrt_ceil
from .errors import BudgetError, DomainError
from .geometry import Cap, Direction, Segment, SphereSpec

# Default ceiling on the number of coordinate entries materialised by enumerate_sphere.
DEFAULT_BUDGET = 400_000_000

# Absolute tolerance for float membership tests on real directions.
FLOAT_TOL = 2.0 ** -30


@dataclass(frozen=True, eq=False)
class SpherePointSet:
    """All integer points of a sphere, sorted lexicographically.

    ``points`` is an ``(r, d)`` integer array; ``len()`` is ``r_d(n)``.
    """

    sphere: SphereSpec
    points: np.ndarray

    def __len__(self) -> int:
        return int(self.points.shape[0])

    def __iter__(self):
        for row in self.points:
            yield tuple(int(c) for c in row)

    def __eq__(self, other):
        if not isinstance(other, SpherePointSet):
            return NotImplemented
        return self.sphere == other.sphere and np.array_equal(self.points, other.points)

    def as_tuples(self) -> list[tuple[int, ...]]:
        return list(self)

    def validate(self) -> None:
        """Check |x|^2 = n on every row and strict lexicographic order."""
        pts = self.points.astype(np.int64)
        if pts.shape[1] != self.sphere.d:
            raise ValueError("point width does not match dimension")
        if len(pts) and not np.all((pts * pts).sum(axis=1) == self.sphere.n):
            raise ValueError("point off the sphere")
        if len(pts) > 1:
            order = np.lexsort(pts.T[::-1])
            if not np.array_equal(order, np.arange(len(pts))):
                raise ValueError("points not sorted")
            if np.any(np.all(pts[1:] == pts[:-1], axis=1)):
                raise ValueError("duplicate points")


def _dtype_for(n: int):
    return np.int16 if math.isqrt(n) < 2 ** 15 else np.int32 if math.isqrt(n) < 2 ** 31 else np.int64


@functools.lru_cache(maxsize=8)
def _two_square_table(limit: int):
    """CSR table of all (a, b) with a^2 + b^2 = m for 0 <= m <= limit.

    Returns ``(offsets, pairs)`` with pairs for m at ``pairs[offsets[m]:offsets[m+1]]``,
    sorted by (a, b).
    """
    s = math.isqrt(limit)
    r = np.arange(-s, s + 1, dtype=np.int64)
    a, b = np.meshgrid(r, r, indexing="ij")
    a, b = a.ravel(), b.ravel()
    m = a * a + b * b
    keep = m <= limit
    a, b, m = a[keep], b[keep], m[keep]
    order = np.lexsort((b, a, m))
    pairs = np.stack([a[order], b[order]], axis=1)
    counts = np.bincount(m, minlength=limit + 1)
    offsets = np.zeros(limit + 2, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    pairs.setflags(write=False)
    offsets.setflags(write=False)
    return offsets, pairs


def _table_limit(n: int) -> int:
    # round the table size up so neighbouring n share one cached table
    return 1 << max(4, n.bit_length()) if n < 1 << 16 else n


def _projected_size(d: int, n: int) -> float:
    """Rough upper estimate of r_d(n) * d plus the prefix count, for the budget guard."""
    if n == 0:
        return d
    # mean density of r_d near n is d/dn of the ball volume; allow 3x for fluctuation
    shell = math.pi ** (d / 2) / math.gamma(d / 2) * n ** ((d - 2) / 2)
    prefix = math.pi ** ((d - 2) / 2) / math.gamma((d - 2) / 2 + 1) * n ** ((d - 2) / 2)
    return 3 * shell * d + prefix * (d - 1)


def enumerate_sphere(sphere: SphereSpec, budget: int = DEFAULT_BUDGET) -> SpherePointSet:
    """Every integer point ``x`` with ``|x|^2 = n``, lexicographically sorted.

    Raises :class:`BudgetError` if the projected work exceeds ``budget``
    coordinate entries.
    """
    d, n = sphere.d, sphere.n
    if _projected_size(d, n) > budget:
        raise BudgetError(f"enumerating d={d}, n={n} exceeds the budget of {budget} entries")
    offsets, pairs = _two_square_table(_table_limit(n))

    prefix = np.zeros((1, 0), dtype=np.int64)
    remaining = np.array([n], dtype=np.int64)
    for _ in range(d - 2):
        bound = np.sqrt(remaining.astype(np.float64)).astype(np.int64)
        # correct float sqrt rounding at perfect squares
        bound -= bound * bound > remaining
        bound += (bound + 1) * (bound + 1) <= remaining
        width = 2 * bound + 1
        rows = np.repeat(np.arange(len(remaining)), width)
        starts = np.cumsum(width) - width
        x = np.arange(rows.size, dtype=np.int64) - np.repeat(starts, width) - np.repeat(bound, width)
        prefix = np.concatenate([prefix[rows], x[:, None]], axis=1)
        remaining = remaining[rows] - x * x
        if prefix.size > budget:
            raise BudgetError(f"enumerating d={d}, n={n} exceeds the budget of {budget} entries")

    lo, hi = offsets[remaining], offsets[remaining + 1]
    counts = hi - lo
    total = int(counts.sum())
    if total * d > budget:
        raise BudgetError(f"enumerating d={d}, n={n} exceeds the budget of {budget} entries")
    rows = np.repeat(np.arange(len(remaining)), counts)
    idx = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts) + np.repeat(lo, counts)
    dtype = _dtype_for(n)
    out = np.empty((total, d), dtype=dtype)
    out[:, : d - 2] = prefix[rows]
    out[:, d - 2:] = pairs[idx]
    out.setflags(write=False)
    return SpherePointSet(sphere, out)


def is_primitive_point(x) -> bool:
    """True when the coordinates of ``x`` have gcd 1."""
    g = 0
    for c in x:
        g = math.gcd(g, int(c))
    return g == 1


# ---------------------------------------------------------------- point-set text format

def write_points(pts: SpherePointSet, fh: TextIO) -> None:
    """Header ``d n count`` then one space-separated point per line."""
    fh.write(f"{pts.sphere.d} {pts.sphere.n} {len(pts)}\n")
    for row in pts.points:
        fh.write(" ".join(str(int(c)) for c in row))
        fh.write("\n")


def read_points(fh: TextIO) -> SpherePointSet:
    header = fh.readline().split()
    if len(header) != 3:
        raise ValueError("point file header must be 'd n count'")
    d, n, count = (int(c) for c in header)
    rows = [[int(c) for c in line.split()] for line in fh if line.strip()]
    if len(rows) != count:
        raise ValueError(f"header announces {count} points, found {len(rows)}")
    arr = np.array(rows, dtype=_dtype_for(n)).reshape(count, d)
    arr.setflags(write=False)
    pts = SpherePointSet(SphereSpec(d, n), arr)
    pts.validate()
    return pts


def points_to_text(pts: SpherePointSet) -> str:
    buf = io.StringIO()
    write_points(pts, buf)
    return buf.getvalue()


# ---------------------------------------------------------------- membership

class CountInterval(NamedTuple):
    """Count known only to lie in ``[lo, hi]`` (uncertain float verdicts)."""

    lo: int
    hi: int


def _integer_normal(direction: Direction) -> tuple[int, ...]:
    return direction.b if direction.is_rational else direction.integer_vector()


def cap_threshold(cap: Cap, normal: tuple[int, ...] | None = None) -> int:
    """Least integer ``t`` with ``t >= |b| c / sqrt(n)`` for the cap's integer normal ``b``.

    A lattice point ``x`` of the sphere lies in the cap exactly when
    ``b . x >= cap_threshold(cap)``.  The ceiling is computed exactly from the
    sign of ``c`` and the rational ``(b . b) c**2 / n``.
    """
    b = normal if normal is not None else _integer_normal(cap.direction)
    n = cap.sphere.n
    c = cap.offset
    if n == 0:
        return 0
    bb = sum(x * x for x in b)
    sign = (c > 0) - (c < 0)
    return signed_sqrt_ceil(sign, bb * c * c / n)


def inner_threshold(seg: Segment, normal: tuple[int, ...] | None = None) -> int:
    """Threshold of the inner cap; one past every sphere point when it is empty."""
    b = normal if normal is not None else _integer_normal(seg.direction)
    if seg.inner_empty:
        return floor_sqrt(Fraction(sum(x * x for x in b) * seg.sphere.n)) + 1
    return cap_threshold(seg.inner, b)


def _float_margin(cap: Cap, x) -> float:
    """beta . x - c / sqrt(n) in floats (real directions)."""
    beta = cap.direction.unit_floats()
    n = cap.sphere.n
    if n == 0:
        return 0.0
    return math.fsum(b * float(c) for b, c in zip(beta, x)) - float(cap.offset) / math.sqrt(n)


def cap_contains(cap: Cap, x, exact: bool = False) -> bool | None:
    """Whether the sphere point ``x`` lies in ``cap``.

    Rational directions are decided exactly.  Real directions use a float test
    with tolerance ``2**-30`` and return ``None`` when the point is within
    tolerance of the boundary; ``exact=True`` decides them exactly against the
    direction's exact representative instead.
    """
    if len(x) != cap.sphere.d:
        raise DomainError("point dimension does not match the sphere")
    if cap.direction.is_rational or exact:
        b = _integer_normal(cap.direction)
        return dot(b, (int(c) for c in x)) >= cap_threshold(cap, b)
    m = _float_margin(cap, x)
    if abs(m) <= FLOAT_TOL * max(1.0, math.sqrt(cap.sphere.n)):
        return None
    return m > 0


def _and_not(a: bool | None, b: bool | None) -> bool | None:
    if a is False or b is True:
        return False
    if a is True and b is False:
        return True
    return None


def segment_contains(seg: Segment, x, exact: bool = False) -> bool | None:
    """Membership in ``T1 \\ T2``: closed on the outer boundary, open on the inner one."""
    inner = False if seg.inner_empty else cap_contains(seg.inner, x, exact)
    return _and_not(cap_contains(seg.outer, x, exact), inner)


def _dot_rows(points: np.ndarray, b: tuple[int, ...]) -> np.ndarray:
    """Exact ``points @ b``; falls back to Python ints when int64 could overflow."""
    bound = max(abs(c) for c in b) * len(b) * int(np.abs(points).max(initial=0))
    if bound < 2 ** 62:
        return points.astype(np.int64) @ np.array(b, dtype=np.int64)
    return points.astype(object) @ np.array([int(c) for c in b], dtype=object)


def cap_mask(cap: Cap, pts: SpherePointSet, exact: bool = False) -> np.ndarray:
    """Boolean mask of points inside the cap (exact path only)."""
    if not (cap.direction.is_rational or exact):
        raise DomainError("cap_mask needs a rational direction or exact=True")
    b = _integer_normal(cap.direction)
    return _dot_rows(pts.points, b) >= cap_threshold(cap, b)


def segment_mask(seg: Segment, pts: SpherePointSet, exact: bool = False) -> np.ndarray:
    if not (seg.direction.is_rational or exact):
        raise DomainError("segment_mask needs a rational direction or exact=True")
    b = _integer_normal(seg.direction)
    t = _dot_rows(pts.points, b)
    return (t >= cap_threshold(seg.outer, b)) & (t < inner_threshold(seg, b))


def _float_verdicts(cap: Cap, pts: SpherePointSet) -> tuple[np.ndarray, np.ndarray]:
    beta = np.array(cap.direction.unit_floats())
    n = cap.sphere.n
    lam = float(cap.offset) / math.sqrt(n) if n else 0.0
    margin = pts.points.astype(np.float64) @ beta - lam
    tol = FLOAT_TOL * max(1.0, math.sqrt(n))
    return margin > tol, np.abs(margin) <= tol


def count_segment(seg: Segment, pts: SpherePointSet, exact: bool = False) -> int | CountInterval:
    """Number of points of ``pts`` inside the segment.

    Returns an int when every verdict is certain, otherwise a
    :class:`CountInterval`.
    """
    if pts.sphere != seg.sphere:
        raise DomainError("point set belongs to a different sphere")
    if seg.direction.is_rational or exact:
        return int(segment_mask(seg, pts, exact=True).sum())
    in1, unc1 = _float_verdicts(seg.outer, pts)
    if seg.inner_empty:
        in2 = unc2 = np.zeros(len(pts), dtype=bool)
    else:
        in2, unc2 = _float_verdicts(seg.inner, pts)
    sure = in1 & ~unc1 & ~in2 & ~unc2
    maybe = (in1 | unc1) & ~(in2 & ~unc2)
    lo, hi = int(sure.sum()), int(maybe.sum())
    return lo if lo == hi else CountInterval(lo, hi)


def iter_points(pts: SpherePointSet, mask: np.ndarray) -> Iterable[tuple[int, ...]]:
    for row in pts.points[mask]:
        yield tuple(int(c) for c in row)
