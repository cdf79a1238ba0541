"""Independent reference implementations used by the tests.

Nothing here calls into the library's membership or counting code.
"""
import math
from fractions import Fraction

import mpmath
import numpy as np


def in_rational_cap(x, b, n, rho):
    # |x - sqrt(n) b/|b||^2 <= rho  <=>  2 sqrt(n) (b.x) >= |b| (2n - rho)
    L = sum(int(p) * int(q) for p, q in zip(x, b))
    return rational_cap_test(L, sum(q * q for q in b), n, rho)


def rational_cap_test(L, b2, n, rho):
    c = 2 * n - Fraction(rho)
    if L >= 0 and c <= 0:
        return True
    if L < 0 and c > 0:
        return False
    lhs, rhs = 4 * L * L * n, b2 * c * c
    return lhs >= rhs if L >= 0 else lhs <= rhs


def in_rational_segment(x, b, n, rho1, rho2, inner_empty=False):
    if not in_rational_cap(x, b, n, rho1):
        return False
    return inner_empty or not in_rational_cap(x, b, n, rho2)


def smallest_dot_in_cap(b, n, rho):
    """Least integer L = b.x for which the cap condition holds (monotone in L)."""
    b2 = sum(q * q for q in b)
    lo, hi = -math.isqrt(b2 * n) - 2, math.isqrt(b2 * n) + 2
    if not rational_cap_test(hi, b2, n, rho):
        return hi + 1
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if rational_cap_test(mid, b2, n, rho):
            hi = mid
        else:
            lo = mid
    return hi


def to_mpf(q):
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator


def real_segment_mask(points, u, n, rho1, rho2):
    """Membership for a real direction ``u/|u|``: floats, then 80 digits near the boundary."""
    u = [Fraction(c) for c in u]
    uf = np.array([float(c) for c in u])
    beta = uf / np.linalg.norm(uf)
    P = np.asarray(points, dtype=np.float64)
    dist2 = ((P - math.sqrt(n) * beta) ** 2).sum(axis=1)
    r1, r2 = float(rho1), float(rho2)
    tol = 1e-6 * max(1, n)
    mask = (dist2 <= r1) & (dist2 > r2)
    near = np.flatnonzero((np.abs(dist2 - r1) < tol) | (np.abs(dist2 - r2) < tol))
    if len(near):
        with mpmath.workdps(80):
            mu = [to_mpf(c) for c in u]
            nu = mpmath.sqrt(sum(c * c for c in mu))
            R = mpmath.sqrt(n)
            m1, m2 = to_mpf(rho1), to_mpf(rho2)
            for i in near:
                dd = sum((int(xi) - R * c / nu) ** 2 for xi, c in zip(points[i], mu))
                mask[i] = bool(m2 < dd <= m1)
    return mask
