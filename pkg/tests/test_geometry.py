import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lattice_segments import (Cap, Direction, DomainError, Segment, SphereSpec, angle_from_radius,
                              base_radius_squared, plane_offset, radius_from_angle, segment_height)


def test_radius_from_angle_examples():
    assert radius_from_angle(SphereSpec(2, 1), 0) == 0
    assert radius_from_angle(SphereSpec(2, 4), math.pi) == pytest.approx(8, rel=1e-15)
    assert radius_from_angle(SphereSpec(2, 25), 2 * math.pi) == pytest.approx(100, rel=1e-15)
    with pytest.raises(DomainError):
        radius_from_angle(SphereSpec(2, 4), 7.0)


def test_angle_from_radius_examples():
    assert angle_from_radius(SphereSpec(2, 1), 0) == 0
    assert angle_from_radius(SphereSpec(2, 4), 8) == pytest.approx(math.pi, rel=1e-15)
    assert angle_from_radius(SphereSpec(3, 9), 9) == pytest.approx(2 * math.pi / 3, rel=1e-15)
    with pytest.raises(DomainError):
        angle_from_radius(SphereSpec(2, 4), 17)


# within ~1e-4 of 2pi a float squared radius no longer pins the angle to 2**-40
@given(st.floats(1e-9, 2 * math.pi - 1e-4), st.integers(1, 10 ** 6))
def test_angle_round_trip(theta, n):
    sphere = SphereSpec(3, n)
    back = angle_from_radius(sphere, Fraction(radius_from_angle(sphere, theta)))
    assert abs(back - theta) <= 2 ** -40 * theta


@given(st.floats(0, 2 * math.pi - 1e-3), st.floats(1e-3, 1.0))
def test_radius_monotone(theta, step):
    sphere = SphereSpec(2, 7)
    hi = min(2 * math.pi, theta + step)
    assert radius_from_angle(sphere, theta) < radius_from_angle(sphere, hi)


def test_segment_height_examples():
    h2, h = segment_height(Segment(SphereSpec(2, 25), Direction.rational([1, 0]), 100, 0))
    assert h2 == 100 and h == 10
    sphere = SphereSpec(2, 4)
    seg = Segment(sphere, Direction.rational([1, 0]), 8, 2)
    h2, h = segment_height(seg)
    assert h2 == Fraction(36, 16) and h == 1.5
    # distance between base planes from the offsets: (c2 - c1)^2 / n
    c1, c2 = plane_offset(sphere, 8), plane_offset(sphere, 2)
    assert (c2 - c1) ** 2 / sphere.n == h2


def test_degenerate_inner_cap_height():
    seg = Segment(SphereSpec(3, 9), Direction.rational([0, 0, 1]), 5, 0)
    h2, _ = segment_height(seg)
    assert h2 == Fraction(25, 36)  # (rho1 / 2R)^2


def test_base_radius_examples():
    assert base_radius_squared(SphereSpec(2, 4), 0) == 0
    assert base_radius_squared(SphereSpec(2, 4), 16) == 0
    assert base_radius_squared(SphereSpec(2, 4), 8) == 4


def test_plane_offset_examples():
    assert plane_offset(SphereSpec(2, 25), 0) == 25
    assert plane_offset(SphereSpec(2, 25), 50) == 0
    assert plane_offset(SphereSpec(2, 25), 10) == 20
    # |x - R beta|^2 = 10 on the base: with R = 5, beta.x = (25 + 25 - 10) / 10 = 4 = c / R
    assert Fraction(25 + 25 - 10, 10) == plane_offset(SphereSpec(2, 25), 10) / 5


rhos = st.fractions(min_value=0, max_value=400, max_denominator=1000)


@given(rhos, rhos)
def test_height_matches_offsets(r1, r2):
    sphere = SphereSpec(3, 100)
    if r1 == r2:
        return
    r1, r2 = max(r1, r2), min(r1, r2)
    h2, _ = segment_height(Segment(sphere, Direction.rational([1, 2, 2]), r1, r2))
    assert h2 == (plane_offset(sphere, r1) - plane_offset(sphere, r2)) ** 2 / sphere.n


@given(rhos)
def test_base_radius_symmetry_and_max(rho):
    sphere = SphereSpec(4, 100)
    k2 = base_radius_squared(sphere, rho)
    assert k2 == base_radius_squared(sphere, 400 - rho)
    assert k2 <= base_radius_squared(sphere, 200) == 100


def test_type_invariants():
    with pytest.raises(DomainError):
        SphereSpec(1, 4)
    with pytest.raises(DomainError):
        SphereSpec(3, -1)
    with pytest.raises(DomainError):
        Direction(b=(2, 4))
    with pytest.raises(DomainError):
        Direction(b=(0, 0))
    with pytest.raises(DomainError):
        Direction(v=(1.0, 1.0))
    with pytest.raises(DomainError):
        Cap(SphereSpec(2, 4), Direction.rational([1, 0]), 17)
    with pytest.raises(DomainError):
        Segment(SphereSpec(2, 4), Direction.rational([1, 0]), 2, 2)
    with pytest.raises(DomainError):
        Segment(SphereSpec(2, 4), Direction.rational([1, 0, 0]), 2, 1)
    with pytest.raises(DomainError):
        Direction.real([1, 1], rational={0: 2})


def test_direction_representatives():
    d = Direction.real([1, 1, 2 ** 0.5], rational={0: 1, 1: 1})
    u = d.exact_vector()
    assert u[:2] == (1, 1)
    assert d.n_rational_quotients == 1
    assert Direction.rational([2, -4, 6]).b == (1, -2, 3)
    assert (-Direction.rational([1, 2])).b == (-1, -2)
    full = Direction.real([3, 4], rational={0: 3, 1: 4})
    assert full.integer_vector() == (3, 4)
