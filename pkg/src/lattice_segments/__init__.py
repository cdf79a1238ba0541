"""Lattice points in d-dimensional spherical caps and segments.

Exact enumeration and counting, slicing by rational hyperplanes, Dirichlet
approximation of directions and the covering construction that bounds the
number of lattice points in a thin segment.
"""
from .covering import (BoundReport, CoveringSegment, HeightBound, bound_pipeline, build_covering,
                       height_bound)
from .diophantine import (DirectionApproximation, DirichletResult, RationalQuotientApproximation,
                          approx_direction, approx_direction_rational_quotients, dirichlet_approx,
                          normalized_difference_bound, verify_dirichlet)
from .errors import BudgetError, CertificationError, DomainError, PrecisionError
from .geometry import (Cap, Direction, Segment, SphereSpec, angle_from_radius, base_radius_squared,
                       plane_offset, radius_from_angle, segment_height)
from .lattice import (CountInterval, SpherePointSet, cap_contains, count_segment, enumerate_sphere,
                      read_points, segment_contains, write_points)
from .slicing import (KappaEstimate, SliceHistogram, check_slab_bound, count_slices_hit,
                      kappa_estimate, slice)

__version__ = "0.1.0"
