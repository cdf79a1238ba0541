"""
Checking the counting bound end to end
======================================

For a segment S of opening angle theta the pipeline picks H from theta,
approximates the direction, covers S by S', slices S' by hyperplanes a.x = t
and checks, in exact arithmetic,

    count(S) <= count(S') <= kappa_a * slices_hit <= kappa_a (1 + |a| h').

It also reports count(S) / (kappa (1 + R theta^(1/d))), the quantity whose
boundedness is the asymptotic claim.
"""

import json
import pathlib

from lattice_segments import Direction, Segment, SphereSpec, bound_pipeline, enumerate_sphere
from lattice_segments.geometry import radius_from_angle
from lattice_segments.harness import ExperimentConfig, run_verify

sphere = SphereSpec(3, 10 ** 4)
pts = enumerate_sphere(sphere)
beta = Direction.real([0.48, 0.6, 0.64])
for theta in (0.05, 0.1, 0.3, 0.6):
    rep = bound_pipeline(Segment(sphere, beta, radius_from_angle(sphere, theta), 0), pts=pts)
    print(f"theta={theta} H={rep.H} a={rep.a} count(S)={rep.count_S} count(S')={rep.count_Sprime} "
          f"kappa_a={rep.kappa_b} slices={rep.slices_hit} bound={rep.bound_value} "
          f"chain={rep.holds_exact_chain} ratio={rep.ratio_thm:.3f}")

# A small sweep from the bundled config.  The full grid used by the
# acceptance tests is the default ExperimentConfig.
cfg = ExperimentConfig.load(pathlib.Path(__file__).with_name("verify_config.json"))
rows, summary = run_verify(cfg)
print(json.dumps(summary["max_ratio_thm"], indent=2))
print(summary["rows"], "rows,", summary["chain_failures"], "chain failures")
