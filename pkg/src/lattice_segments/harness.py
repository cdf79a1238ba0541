"""Experiment sweeps, independent oracles and report writers.

``run_verify`` walks a grid of dimensions, squared radii and opening angles,
builds segments around sampled directions and runs :func:`bound_pipeline` on
each.  Every random choice is drawn from a generator seeded by
``(seed, d, n)``, so the rows do not depend on how the grid is scheduled.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import mpmath
import numpy as np

from .covering import BoundReport, bound_pipeline
from .errors import DomainError
from .geometry import Direction, Segment, SphereSpec, radius_from_angle
from .lattice import DEFAULT_BUDGET, CountInterval, enumerate_sphere

SCHEMA = "lattice-segments v1"


@dataclass
class ExperimentConfig:
    """Parameters of a verification sweep (loaded from JSON)."""

    seed: int
    dims: list[int] = field(default_factory=lambda: [3, 4])
    n_values: list[int] = field(default_factory=lambda: list(range(100, 2001, 100)))
    thetas: list[float] = field(default_factory=lambda: [0.05, 0.1, 0.2])
    modes: list[Any] = field(default_factory=lambda: ["generic"])
    lattice_directions: int = 2
    random_directions: int = 2
    segments_per_direction: int = 2
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    output: str | None = None
    summary: str | None = None

    def __post_init__(self):
        if self.seed is None:
            raise DomainError("a seed is mandatory")
        for name in ("dims", "n_values", "thetas", "modes"):
            if not getattr(self, name):
                raise DomainError(f"{name} must be non-empty")
        if any(d < 2 for d in self.dims):
            raise DomainError("dimensions must be at least 2")
        if any(not 0 < t < 2 * math.pi for t in self.thetas):
            raise DomainError("opening angles must lie in (0, 2pi)")
        for m in self.modes:
            _parse_mode(m)

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        raw = dict(raw)
        n = raw.pop("n", None)
        if n is not None:
            if isinstance(n, dict):
                raw["n_values"] = list(range(int(n["start"]), int(n["stop"]) + 1, int(n.get("step", 1))))
            else:
                raw["n_values"] = [int(v) for v in n]
        known = set(cls.__dataclass_fields__)
        unknown = set(raw) - known
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
        if "seed" not in raw:
            raise DomainError("a seed is mandatory")
        return cls(**raw)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def _parse_mode(mode) -> tuple[str, int | None]:
    """``"generic"`` or ``{"rational_quotients": s}``."""
    if mode == "generic":
        return "generic", None
    if isinstance(mode, dict) and set(mode) == {"rational_quotients"}:
        return "rational_quotients", int(mode["rational_quotients"])
    raise DomainError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------- direction samplers

def _random_unit(rng, d) -> np.ndarray:
    while True:
        v = rng.standard_normal(d)
        nv = np.linalg.norm(v)
        if nv > 1e-3:
            return v / nv


def _lattice_direction(x, mode: str) -> Direction:
    x = [int(c) for c in x]
    if mode == "generic":
        return Direction.real(x)
    return Direction.real(x, rational=dict(enumerate(x)))


def _quotient_direction(rng, d: int, s: int) -> Direction:
    """Random direction whose first s+1 coordinates (in random positions) are small rationals."""
    idx = sorted(rng.choice(d, size=s + 1, replace=False).tolist())
    u = [0.0] * d
    mask = {}
    for i in range(d):
        if i in idx:
            val = Fraction(int(rng.integers(-6, 7)) or 1, int(rng.integers(1, 6)))
            mask[i] = val
            u[i] = float(val)
        else:
            u[i] = float(rng.standard_normal())
    return Direction.real(u, rational=mask)


def _segments_for(rng, sphere: SphereSpec, direction: Direction, theta: float, count: int):
    """Segments of opening angle ``theta``: first a cap, then random inner angles."""
    out = []
    for k in range(count):
        t2 = 0.0 if k == 0 else float(rng.uniform(0.0, math.pi))
        t1 = min(2 * math.pi, t2 + theta)
        rho1 = min(Fraction(4 * sphere.n), Fraction(radius_from_angle(sphere, t1)))
        rho2 = Fraction(radius_from_angle(sphere, t2))
        if rho1 > rho2:
            out.append(Segment(sphere, direction, rho1, rho2))
    return out


def _run_sphere(args) -> list[BoundReport]:
    cfg, d, n = args
    sphere = SphereSpec(d, n)
    pts = enumerate_sphere(sphere, budget=cfg.budget)
    rng = np.random.default_rng(np.random.SeedSequence([int(cfg.seed), d, n]))
    reports = []
    for raw_mode in cfg.modes:
        mode, s = _parse_mode(raw_mode)
        directions = []
        if len(pts) and cfg.lattice_directions:
            pick = rng.choice(len(pts), size=min(cfg.lattice_directions, len(pts)), replace=False)
            directions += [_lattice_direction(pts.points[i], mode) for i in sorted(pick.tolist())]
        for _ in range(cfg.random_directions):
            if mode == "generic":
                directions.append(Direction.real(_random_unit(rng, d)))
            else:
                if not 1 <= s <= d - 1:
                    raise DomainError(f"rational_quotients s={s} invalid for d={d}")
                directions.append(_quotient_direction(rng, d, s))
        for theta in cfg.thetas:
            for direction in directions:
                for seg in _segments_for(rng, sphere, direction, theta, cfg.segments_per_direction):
                    reports.append(bound_pipeline(seg, mode=mode, pts=pts))
    return reports


def _sort_key(r: BoundReport):
    return (r.d, r.n, r.mode, r.s, r.theta, r.direction, r.count_S, r.to_row())


def run_verify(cfg: ExperimentConfig) -> tuple[list[BoundReport], dict]:
    """Run the sweep; return rows in canonical order and the summary."""
    tasks = [(cfg, d, n) for d in cfg.dims for n in cfg.n_values]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(_run_sphere, tasks))
    else:
        chunks = [_run_sphere(t) for t in tasks]
    rows = sorted((r for chunk in chunks for r in chunk), key=_sort_key)
    return rows, summarize(rows)


def summarize(rows: list[BoundReport]) -> dict:
    failures = [r for r in rows if not r.holds_exact_chain]
    max_ratio: dict[str, float] = {}
    psi: dict[str, int] = {}
    for r in rows:
        key = f"d={r.d},mode={r.mode}" + (f",s={r.s}" if r.mode != "generic" else "")
        max_ratio[key] = max(max_ratio.get(key, 0.0), r.ratio_thm)
        pk = f"d={r.d},n={r.n},theta={r.theta:.6g}"
        psi[pk] = max(psi.get(pk, 0), r.count_S)
    return {
        "schema": SCHEMA,
        "rows": len(rows),
        "chain_failures": len(failures),
        "max_ratio_thm": dict(sorted(max_ratio.items())),
        "empirical_psi": dict(sorted(psi.items())),
    }


def write_reports_csv(rows: list[BoundReport], fh) -> None:
    fh.write(f"# {SCHEMA}\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(BoundReport.CSV_FIELDS)
    for r in rows:
        w.writerow(r.to_row())


def reports_csv_text(rows: list[BoundReport]) -> str:
    buf = io.StringIO()
    write_reports_csv(rows, buf)
    return buf.getvalue()


# ---------------------------------------------------------------- independent oracles

def brute_force_points(sphere: SphereSpec) -> np.ndarray:
    """Points of the sphere by looping over the first d-1 coordinates and solving for the last."""
    d, n = sphere.d, sphere.n
    s = math.isqrt(n)
    r = np.arange(-s, s + 1, dtype=np.int64)
    grids = np.meshgrid(*([r] * (d - 1)), indexing="ij")
    head = np.stack([g.ravel() for g in grids], axis=1)
    rest = n - (head * head).sum(axis=1)
    ok = rest >= 0
    head, rest = head[ok], rest[ok]
    root = np.array([math.isqrt(int(m)) for m in rest], dtype=np.int64)
    square = root * root == rest
    out = []
    for h, z in zip(head[square], root[square]):
        out.append(tuple(h) + (int(-z),))
        if z:
            out.append(tuple(h) + (int(z),))
    return np.array(sorted(set(out)), dtype=np.int64).reshape(-1, d)


def _iv_direction(iv, direction: Direction):
    u = direction.exact_vector()
    comps = [iv.mpf(c.numerator) / c.denominator for c in u]
    norm = iv.sqrt(sum(c * c for c in comps))
    return [c / norm for c in comps]


def brute_force_segment_count_oracle(seg: Segment, points: np.ndarray | None = None,
                                     prec: int = 256) -> CountInterval:
    """Count of the segment's points from distances ``|x - R beta|**2`` directly.

    Clear cases are settled in floats; points within ``1e-6 n`` of either
    boundary are re-examined with 256-bit interval arithmetic.  The exact
    count must lie inside the returned interval.
    """
    sphere = seg.sphere
    if points is None:
        points = brute_force_points(sphere)
    if len(points) == 0:
        return CountInterval(0, 0)
    n = sphere.n
    R = math.sqrt(n)
    u = [float(c) for c in seg.direction.exact_vector()]
    nu = math.sqrt(math.fsum(c * c for c in u))
    beta = np.array(u) / nu
    dist2 = ((points.astype(np.float64) - R * beta) ** 2).sum(axis=1)
    tol = 1e-6 * max(1.0, n)
    r1, r2 = float(seg.rho1), float(seg.rho2)
    sure_in1, sure_out1 = dist2 < r1 - tol, dist2 > r1 + tol
    sure_in2, sure_out2 = dist2 < r2 - tol, dist2 > r2 + tol
    lo = int((sure_in1 & sure_out2).sum())
    hi = lo
    doubtful = ~((sure_in1 | sure_out1) & (sure_in2 | sure_out2))
    if doubtful.any():
        iv = type(mpmath.iv)()
        iv.prec = prec
        ib = _iv_direction(iv, seg.direction)
        iR = iv.sqrt(n)
        rho1 = iv.mpf(seg.rho1.numerator) / seg.rho1.denominator
        rho2 = iv.mpf(seg.rho2.numerator) / seg.rho2.denominator
        for x in points[doubtful]:
            dd = sum((int(c) - iR * b) ** 2 for c, b in zip(x, ib))
            in1 = True if dd.b <= rho1.a else False if dd.a > rho1.b else None
            in2 = True if dd.b <= rho2.a else False if dd.a > rho2.b else None
            if in1 is False or in2 is True:
                continue
            if in1 is True and in2 is False:
                lo += 1
            hi += 1
    return CountInterval(lo, hi)
