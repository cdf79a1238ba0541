"""
Lattice points on spheres
=========================

Enumerate the integer points of x1^2 + ... + xd^2 = n and look at how they
sit on rational hyperplanes b.x = t.
"""

import numpy as np

from lattice_segments import SphereSpec, enumerate_sphere, kappa_estimate, slice

# The circle of radius 5 carries twelve points: the four axis points and the
# eight signed permutations of (3, 4).
circle = enumerate_sphere(SphereSpec(2, 25))
print(len(circle), circle.as_tuples())

# Counts r_d(n) for a few classical cases.  Numbers of the form 4^a(8k+7)
# are never sums of three squares, and r_4(2^m) is always 24.
for d, n in [(3, 7), (3, 28), (3, 9), (4, 2), (4, 1024)]:
    print(f"r_{d}({n}) = {len(enumerate_sphere(SphereSpec(d, n)))}")

# Points are returned sorted, in a compact integer dtype.
sphere = enumerate_sphere(SphereSpec(3, 2025))
print(sphere.points.dtype, sphere.points.shape)

# Slicing by a normal b groups the points by the value of b.x.
hist = slice(sphere, (1, 1, 1))
print("planes hit:", len(hist.buckets), "fullest plane holds", hist.max_count,
      "points at t =", hist.argmax())

# kappa_estimate scans every primitive normal up to a norm bound and reports
# the fullest plane it met.  It is a lower bound on the true maximum over all
# rational planes.
est = kappa_estimate(sphere, max_normal_norm=2)
print("kappa lower bound", est.value, "from", est.witnesses[:3])

# Coordinate planes are usually the fullest ones.
counts = np.array([slice(sphere, b).max_count for b in [(0, 0, 1), (0, 1, 1), (1, 1, 1), (1, 2, 2)]])
print(counts)
