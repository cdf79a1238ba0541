"""
Counting points in caps and segments
====================================

A cap is the part of the sphere within distance r of the surface point
R*beta.  A segment is an outer cap with a smaller concentric cap removed.
For an integer direction every membership test is exact.
"""

from fractions import Fraction

from lattice_segments import (Direction, Segment, SphereSpec, count_segment, enumerate_sphere,
                              segment_height)
from lattice_segments.geometry import angle_from_radius, radius_from_angle
from lattice_segments.lattice import segment_mask

sphere = SphereSpec(2, 25)
pts = enumerate_sphere(sphere)

# Squared radii 50 and 2 around (5, 0): the inner cap holds only the apex,
# the outer cap reaches the two poles (0, +-5) exactly on its boundary.
seg = Segment(sphere, Direction.rational([1, 0]), 50, 2)
print("count", count_segment(seg, pts))
print([tuple(int(c) for c in x) for x, keep in zip(pts, segment_mask(seg, pts)) if keep])

# Opening angle and height, as floats for display.  The height is exact as a
# squared rational.
h2, h = segment_height(seg)
print("theta", seg.opening_angle, "h^2", h2, "h", h)

# Angles and squared radii convert both ways: r^2 = 4n sin(theta/4)^2.
rho = radius_from_angle(sphere, 1.0)
print(rho, angle_from_radius(sphere, rho))

# A direction given by floats cannot always be decided in floating point.
# Points too close to a boundary make the count an interval.
wobbly = Segment(sphere, Direction.real([0.0, 1.0]), 50, 0)
print("float direction:", count_segment(wobbly, pts))
print("exact path:     ", count_segment(wobbly, pts, exact=True))

# Segments of any direction and radius are fine, including rational radii.
tilted = Segment(SphereSpec(3, 101), Direction.rational([1, 2, 2]), Fraction(301, 2), Fraction(7, 3))
print("tilted count", count_segment(tilted, enumerate_sphere(tilted.sphere)))
