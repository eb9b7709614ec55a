"""Signed distances between world-space spheres and axis-aligned boxes."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .kinematics import Pose, vnorm, vsub
from .model import PartDecl


@dataclass(frozen=True)
class Sphere:
    center: tuple
    radius: float

    @property
    def lo(self):
        return tuple(c - self.radius for c in self.center)

    @property
    def hi(self):
        return tuple(c + self.radius for c in self.center)


@dataclass(frozen=True)
class Box:
    lo: tuple
    hi: tuple

    @property
    def center(self):
        return tuple((a + b) / 2.0 for a, b in zip(self.lo, self.hi))


def world_prim(part: PartDecl, pose: Pose):
    c = pose.transform(tuple(float(v) for v in part.offset))
    if part.shape == "sphere":
        return Sphere(c, float(part.size[0]))
    h = tuple(float(v) for v in part.size)
    return Box(tuple(c[i] - h[i] for i in range(3)), tuple(c[i] + h[i] for i in range(3)))


def box_sdf(p, box: Box) -> float:
    """Signed distance from point ``p`` to ``box`` (negative inside)."""
    q = [max(box.lo[i] - p[i], p[i] - box.hi[i]) for i in range(3)]
    outside = math.sqrt(sum(max(v, 0.0) ** 2 for v in q))
    inside = min(max(q), 0.0)
    return outside + inside


def signed_distance(a, b) -> float:
    """Surface separation; negative values are penetration depths."""
    if isinstance(a, Sphere) and isinstance(b, Sphere):
        return vnorm(vsub(a.center, b.center)) - a.radius - b.radius
    if isinstance(a, Sphere):
        return box_sdf(a.center, b) - a.radius
    if isinstance(b, Sphere):
        return box_sdf(b.center, a) - b.radius
    gaps = [max(b.lo[i] - a.hi[i], a.lo[i] - b.hi[i]) for i in range(3)]
    if any(g > 0 for g in gaps):
        return math.sqrt(sum(max(g, 0.0) ** 2 for g in gaps))
    return max(gaps)


def distance(a, b) -> float:
    return max(0.0, signed_distance(a, b))


def footprint(prims) -> tuple:
    """xy bounds and z extent of a set of primitives: (xlo, ylo, xhi, yhi, zlo, zhi)."""
    los = [p.lo for p in prims]
    his = [p.hi for p in prims]
    return (
        min(l[0] for l in los),
        min(l[1] for l in los),
        max(h[0] for h in his),
        max(h[1] for h in his),
        min(l[2] for l in los),
        max(h[2] for h in his),
    )
