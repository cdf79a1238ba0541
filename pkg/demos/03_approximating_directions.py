"""
Approximating a direction by an integer vector
==============================================

Simultaneous Dirichlet approximation turns a real unit vector beta into an
integer vector a whose direction is close to beta, with explicit bounds on
|a| and on the angle between them.
"""

import math

from lattice_segments import (Direction, approx_direction, approx_direction_rational_quotients,
                              dirichlet_approx)

# Dirichlet: for H = 10 there is q <= H^2 with both |q xi_i - p_i| <= 1/H.
xi = [math.sqrt(2), math.pi]
res = dirichlet_approx(xi, 10)
print(res.q, res.p, [float(e) for e in res.errors(xi)])

# The search returns the smallest such q, so a single irrational gives a
# continued-fraction convergent.
print(dirichlet_approx([math.sqrt(2)], 100).q)

# Directions.  The certificate compares squared quantities exactly:
# |a|^2 <= (4d - 3) H^(2(d-1)) and |beta - a/|a||^2 <= 4(4d^2 - 7d + 3)/(|a| H)^2.
beta = Direction.real([0.3, -0.5, math.sqrt(0.66)])
for H in (1, 2, 4, 8, 16):
    ap = approx_direction(beta, H)
    print(H, ap.a, f"|a|={ap.norm:.2f}", f"sin(phi/2)<={float(ap.sin_half_phi_upper):.2e}",
          ap.certified)

# When some coordinates of k*beta are rational, fewer quantities need
# approximating.  Here (1, 1, sqrt 2) has two rational coordinates.
beta = Direction.real([1, 1, math.sqrt(2)], rational={0: 1, 1: 1})
ap = approx_direction_rational_quotients(beta, 5)
print(ap.a, "q' =", ap.q_prime, "m =", ap.m, "s =", ap.s, ap.certified)
