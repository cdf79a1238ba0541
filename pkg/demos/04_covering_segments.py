"""
Covering a segment by one of integer direction
==============================================

A segment of irrational direction beta fits inside a slightly larger
segment whose direction is an integer vector a.  The enlarged radii only
depend on an upper bound for sin(phi/2), phi being the angle between beta
and a, so they can be kept exact.
"""

import math

from lattice_segments import (Direction, Segment, SphereSpec, build_covering, enumerate_sphere,
                              height_bound)
from lattice_segments.geometry import radius_from_angle
from lattice_segments.lattice import segment_mask

sphere = SphereSpec(2, 25)
pts = enumerate_sphere(sphere)
beta = Direction.real([1, math.sqrt(3)])
seg = Segment(sphere, beta, radius_from_angle(sphere, 1.2), radius_from_angle(sphere, 0.3))

cov = build_covering(seg, (1, 2))
print("sin(phi/2) <=", float(cov.sin_half_phi_upper))
print("outer", float(seg.rho1), "->", float(cov.rho1_prime))
print("inner", float(seg.rho2), "->", float(cov.rho2_prime))

# Every point of S lies in S'.  S is tested with the exact representative of
# beta, S' with the integer direction.
in_S = segment_mask(seg, pts, exact=True)
in_Sp = segment_mask(cov.covering, pts)
print(int(in_S.sum()), "points in S,", int(in_Sp.sum()), "in S', contained:", bool(in_Sp[in_S].all()))

# When 2 R sin(phi/2) exceeds the inner radius the inner cap is dropped and
# S' is a full cap, apex included.
far = build_covering(seg, (0, 1))
print("inner cap dropped:", far.inner_empty)

# Heights: h' = (r1'^2 - r2'^2) / (2R), compared with R(theta + phi).
hb = height_bound(cov)
print("h' =", hb.value, "ratio to R(theta + phi) =", hb.ratio)
