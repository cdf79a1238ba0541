import io
import itertools
import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lattice_segments import (BudgetError, Direction, Segment, SphereSpec, check_slab_bound,
                              count_segment, count_slices_hit, enumerate_sphere, kappa_estimate,
                              slice)
from lattice_segments._exact import vector_gcd
from lattice_segments.slicing import slab_bound, slab_offsets, write_histogram_csv


def brute_histogram(pts, b):
    return dict(sorted(Counter(sum(p * q for p, q in zip(x, b)) for x in pts).items()))


def test_circle_slices(circle25):
    hist = slice(circle25, (0, 1))
    assert hist.buckets == {-5: 1, -4: 2, -3: 2, 0: 2, 3: 2, 4: 2, 5: 1}
    assert hist.buckets == brute_histogram(circle25, (0, 1))
    assert hist.total == 12


def test_origin_sphere():
    hist = slice(enumerate_sphere(SphereSpec(4, 0)), (1, 0, 0, 0))
    assert hist.buckets == {0: 1}


def test_diagonal_slices_symmetric():
    pts = enumerate_sphere(SphereSpec(3, 2))
    hist = slice(pts, (1, 1, 1))
    assert hist.buckets == brute_histogram(pts, (1, 1, 1))
    assert hist.buckets == {-t: c for t, c in hist.buckets.items()}
    assert hist.total == 12


def test_non_primitive_normal_warns(circle25):
    with pytest.warns(UserWarning):
        hist = slice(circle25, (0, 2))
    assert hist.normal == (0, 1)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=3, max_size=3).filter(lambda b: vector_gcd(b) == 1),
       st.integers(0, 500))
def test_histogram_invariants(b, n):
    pts = enumerate_sphere(SphereSpec(3, n))
    hist = slice(pts, b)
    assert hist.buckets == brute_histogram(pts, b)
    assert hist.total == len(pts)
    bb = sum(c * c for c in b)
    assert all(t * t <= bb * n for t in hist.buckets)
    neg = slice(pts, [-c for c in b])
    assert neg.buckets == {-t: c for t, c in sorted(hist.buckets.items(), reverse=True)}


def test_slices_hit_full_circle():
    seg = Segment(SphereSpec(2, 25), Direction.rational((0, 1)), 100, 0)
    # offsets -5..4 meet S; the apex plane t = 5 holds only the removed apex
    assert list(slab_offsets(seg)) == list(range(-5, 5))
    assert count_slices_hit(seg) == 10 <= slab_bound(seg) == 11


def test_slices_hit_sphere9():
    seg = Segment(SphereSpec(3, 9), Direction.rational((0, 0, 1)), 18, 9)
    # base planes z = 0 and z = 3/2: integer offsets 0 and 1
    assert list(slab_offsets(seg)) == [0, 1]
    assert slab_bound(seg) == 2


def test_thin_slab_hits_at_most_one():
    sphere = SphereSpec(3, 50)
    seg = Segment(sphere, Direction.rational((1, 1, 0)), Fraction(100001, 1000), 100)
    assert count_slices_hit(seg) <= 1 == slab_bound(seg)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3).filter(lambda b: vector_gcd(b) == 1),
       st.integers(1, 400), st.fractions(0, 1, max_denominator=60),
       st.fractions(0, 1, max_denominator=60))
def test_slab_offsets_brute(b, n, f1, f2):
    if f1 == f2:
        return
    sphere = SphereSpec(3, n)
    seg = Segment(sphere, Direction.rational(b), 4 * n * max(f1, f2), 4 * n * min(f1, f2))
    # every integer t in [|b| l1, |b| l2) by direct squared comparisons
    bb = sum(c * c for c in b)
    c1, c2 = n - seg.rho1 / 2, n - seg.rho2 / 2

    def ge(t, c):  # t >= |b| c / sqrt(n)
        if t >= 0:
            return c <= 0 or t * t * n >= bb * c * c
        return c < 0 and t * t * n <= bb * c * c

    lim = math.isqrt(bb * n) + 2
    expected = [t for t in range(-lim, lim + 1) if ge(t, c1) and not ge(t, c2)]
    assert list(slab_offsets(seg)) == expected
    assert len(expected) <= slab_bound(seg)
    pts = enumerate_sphere(sphere)
    hist = slice(pts, b)
    assert count_segment(seg, pts) <= hist.max_count * len(expected)


def test_kappa_circle_at_most_two():
    for n in (1, 5, 25, 65, 325, 1105):
        est = kappa_estimate(enumerate_sphere(SphereSpec(2, n)), 3)
        assert est.value == 2


def test_kappa_sphere9(sphere9):
    est = kappa_estimate(sphere9, 1)
    expected = max(max(brute_histogram(sphere9, b).values()) for b in itertools.permutations((1, 0, 0)))
    assert est.value == expected == 8
    assert ((0, 0, 1), 2) in est.witnesses and ((0, 0, 1), -2) in est.witnesses


def test_kappa_empty_and_monotone():
    assert kappa_estimate(enumerate_sphere(SphereSpec(3, 7)), 2).value == 0
    pts = enumerate_sphere(SphereSpec(3, 99))
    values = [kappa_estimate(pts, k).value for k in (1, 2, 3)]
    assert values == sorted(values)


def test_kappa_budget():
    with pytest.raises(BudgetError):
        kappa_estimate(enumerate_sphere(SphereSpec(4, 10)), 10, budget=1000)


def test_check_slab_bound_examples(circle25, sphere9):
    seg = Segment(SphereSpec(2, 25), Direction.rational((0, 1)), 100, 0)
    rep = check_slab_bound(seg, circle25)
    assert (rep.count, rep.kappa_b, rep.bound, rep.holds) == (11, 2, 22, True)
    seg = Segment(SphereSpec(3, 9), Direction.rational((0, 0, 1)), 18, 9)
    kappa = kappa_estimate(sphere9, 1)
    rep = check_slab_bound(seg, sphere9, kappa)
    # z = 0 holds 4 points, z = 1 holds 4 (x^2 + y^2 = 8), z = 2 is cut off
    assert rep.count == 8 and rep.kappa_b == 8 and rep.holds
    assert rep.bound == 8 * (1 + 2) and rep.bound_global == 8 * 3
    # thin segment inside one slice
    seg = Segment(SphereSpec(3, 9), Direction.rational((0, 0, 1)), 18, Fraction(179, 10))
    assert check_slab_bound(seg, sphere9).count <= check_slab_bound(seg, sphere9).kappa_b


def test_histogram_csv(circle25):
    buf = io.StringIO()
    write_histogram_csv([slice(circle25, (0, 1))], buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "normal,t,count"
    assert lines[1] == "0 1,-5,1"
    assert len(lines) == 8
