"""Pose algebra and the motion generators that drive moving objects.

Generators are pure functions of the integer step index, so replaying an
episode never accumulates integration error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .model import MotionSpec

DEFAULT_DT = 0.02
DEFAULT_WAYPOINT_PERIOD = 50


def vadd(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def vsub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def vscale(a, s: float):
    return (a[0] * s, a[1] * s, a[2] * s)


def vdot(a, b) -> float:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def vcross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def vnorm(a) -> float:
    return math.sqrt(vdot(a, a))


def vunit(a):
    n = vnorm(a)
    if n == 0.0:
        raise ValueError("cannot normalize a zero vector")
    return (a[0] / n, a[1] / n, a[2] / n)


def as_vec(v) -> tuple:
    return (float(v[0]), float(v[1]), float(v[2]))


@dataclass(frozen=True)
class Quat:
    """Rotation quaternion, scalar first."""

    w: float = 1.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_axis_angle(cls, axis, angle: float) -> "Quat":
        ax = vunit(axis)
        s = math.sin(angle / 2.0)
        return cls(math.cos(angle / 2.0), ax[0] * s, ax[1] * s, ax[2] * s)

    @classmethod
    def from_rotvec(cls, v) -> "Quat":
        angle = vnorm(v)
        if angle < 1e-12:
            return cls()
        return cls.from_axis_angle(v, angle)

    @classmethod
    def from_matrix(cls, m) -> "Quat":
        """From a 3x3 rotation matrix given as rows."""
        tr = m[0][0] + m[1][1] + m[2][2]
        if tr > 0:
            s = 2.0 * math.sqrt(tr + 1.0)
            q = cls(0.25 * s, (m[2][1] - m[1][2]) / s, (m[0][2] - m[2][0]) / s, (m[1][0] - m[0][1]) / s)
        elif m[0][0] > m[1][1] and m[0][0] > m[2][2]:
            s = 2.0 * math.sqrt(1.0 + m[0][0] - m[1][1] - m[2][2])
            q = cls((m[2][1] - m[1][2]) / s, 0.25 * s, (m[0][1] + m[1][0]) / s, (m[0][2] + m[2][0]) / s)
        elif m[1][1] > m[2][2]:
            s = 2.0 * math.sqrt(1.0 + m[1][1] - m[0][0] - m[2][2])
            q = cls((m[0][2] - m[2][0]) / s, (m[0][1] + m[1][0]) / s, 0.25 * s, (m[1][2] + m[2][1]) / s)
        else:
            s = 2.0 * math.sqrt(1.0 + m[2][2] - m[0][0] - m[1][1])
            q = cls((m[1][0] - m[0][1]) / s, (m[0][2] + m[2][0]) / s, (m[1][2] + m[2][1]) / s, 0.25 * s)
        return q.normalized()

    def as_tuple(self) -> tuple:
        return (self.w, self.x, self.y, self.z)

    def norm(self) -> float:
        return math.sqrt(self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z)

    def normalized(self) -> "Quat":
        n = self.norm()
        return Quat(self.w / n, self.x / n, self.y / n, self.z / n)

    def conj(self) -> "Quat":
        return Quat(self.w, -self.x, -self.y, -self.z)

    def __neg__(self) -> "Quat":
        return Quat(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, o: "Quat") -> "Quat":
        return Quat(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )

    def dot(self, o: "Quat") -> float:
        return self.w * o.w + self.x * o.x + self.y * o.y + self.z * o.z

    def rotate(self, v) -> tuple:
        u = (self.x, self.y, self.z)
        t = vscale(vcross(u, v), 2.0)
        return vadd(vadd(v, vscale(t, self.w)), vcross(u, t))

    def angle(self) -> float:
        """Rotation angle in [0, pi]."""
        return 2.0 * math.atan2(math.sqrt(self.x**2 + self.y**2 + self.z**2), abs(self.w))

    def angle_to(self, o: "Quat") -> float:
        return (self.conj() * o).angle()


def slerp(a: Quat, b: Quat, t: float) -> Quat:
    """Shortest-arc spherical interpolation; ``t`` in [0, 1]."""
    d = a.dot(b)
    if d < 0.0:
        b, d = -b, -d
    d = min(d, 1.0)
    theta = math.acos(d)
    if theta < 1e-6:
        q = Quat(
            a.w + t * (b.w - a.w), a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.z + t * (b.z - a.z)
        )
        return q.normalized()
    s = math.sin(theta)
    wa = math.sin((1.0 - t) * theta) / s
    wb = math.sin(t * theta) / s
    q = Quat(wa * a.w + wb * b.w, wa * a.x + wb * b.x, wa * a.y + wb * b.y, wa * a.z + wb * b.z)
    return q.normalized()


def facing(direction, fallback: Quat) -> Quat:
    """Orientation whose local x axis points along ``direction`` with world z up."""
    if vnorm(direction) == 0.0:
        return fallback
    fx = vunit(direction)
    up = (0.0, 0.0, 1.0)
    if abs(vdot(fx, up)) > 1.0 - 1e-9:
        up = (0.0, -1.0, 0.0) if fx[2] > 0 else (0.0, 1.0, 0.0)
    fz = vunit(vsub(up, vscale(fx, vdot(up, fx))))
    fy = vcross(fz, fx)
    rows = ((fx[0], fy[0], fz[0]), (fx[1], fy[1], fz[1]), (fx[2], fy[2], fz[2]))
    return Quat.from_matrix(rows)


@dataclass(frozen=True)
class Pose:
    position: tuple = (0.0, 0.0, 0.0)
    orientation: Quat = field(default_factory=Quat)

    def transform(self, v) -> tuple:
        return vadd(self.position, self.orientation.rotate(v))


class MotionGenerator:
    """Binds a :class:`MotionSpec` to the pose captured at episode start."""

    def __init__(self, spec: MotionSpec, p0: Pose, dt: float = DEFAULT_DT):
        self.spec = spec
        self.p0 = p0
        self.dt = dt

    def pose_at(self, step: int) -> Pose:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec.object!r})"


class LinearMotion(MotionGenerator):
    """Triangle wave between p0 and p0 + travel * direction; out and back in one period."""

    def __init__(self, spec, p0, dt=DEFAULT_DT):
        super().__init__(spec, p0, dt)
        self.period = int(spec.period)
        self.offset = vscale(vunit(as_vec(spec.direction)), float(spec.travel_dist))

    def fraction(self, step: int) -> float:
        u = (step % self.period) / self.period
        return 2.0 * u if u <= 0.5 else 2.0 * (1.0 - u)

    def pose_at(self, step: int) -> Pose:
        f = self.fraction(step)
        return Pose(vadd(self.p0.position, vscale(self.offset, f)), self.p0.orientation)


class CircularMotion(MotionGenerator):
    """Uniform rotation about the vertical axis through the pivot; height is preserved."""

    def __init__(self, spec, p0, dt=DEFAULT_DT):
        super().__init__(spec, p0, dt)
        self.period = int(spec.period)
        self.center = as_vec(spec.center)
        self.rel = vsub(p0.position, self.center)

    @property
    def radius(self) -> float:
        return math.hypot(self.rel[0], self.rel[1])

    def pose_at(self, step: int) -> Pose:
        theta = 2.0 * math.pi * (step % self.period) / self.period
        c, s = math.cos(theta), math.sin(theta)
        ox, oy = self.rel[0], self.rel[1]
        pos = (self.center[0] + c * ox - s * oy, self.center[1] + s * ox + c * oy, self.p0.position[2])
        return Pose(pos, self.p0.orientation)


class WaypointMotion(MotionGenerator):
    """Piecewise-linear positions with SLERP orientations, ``period`` steps per segment.

    Holds the final waypoint once the path is exhausted.
    """

    def __init__(self, spec, p0, dt=DEFAULT_DT):
        super().__init__(spec, p0, dt)
        self.period = int(spec.period) if spec.period is not None else DEFAULT_WAYPOINT_PERIOD
        self.points = [as_vec(w[:3]) for w in spec.waypoints]
        quats = []
        prev = p0.orientation
        for w in spec.waypoints:
            prev = facing(as_vec(w[3:6]), prev)
            quats.append(prev)
        self.quats = quats

    def pose_at(self, step: int) -> Pose:
        nseg = len(self.points) - 1
        k, rem = divmod(step, self.period)
        if k >= nseg:
            return Pose(self.points[-1], self.quats[-1])
        t = rem / self.period
        a, b = self.points[k], self.points[k + 1]
        pos = vadd(a, vscale(vsub(b, a), t))
        return Pose(pos, slerp(self.quats[k], self.quats[k + 1], t))


class ProjectileMotion(MotionGenerator):
    """Ballistic position p0 + v0 t + g t^2 / 2 with t = step * dt."""

    def __init__(self, spec, p0, dt=DEFAULT_DT):
        super().__init__(spec, p0, dt)
        d = as_vec(spec.direction)
        speed = float(spec.initial_speed)
        self.v0 = vscale(vunit(d), speed) if speed != 0.0 else (0.0, 0.0, 0.0)
        self.g = as_vec(spec.gravity)

    def pose_at(self, step: int) -> Pose:
        t = step * self.dt
        pos = vadd(vadd(self.p0.position, vscale(self.v0, t)), vscale(self.g, 0.5 * t * t))
        return Pose(pos, self.p0.orientation)


_GENERATORS = {
    "linear": LinearMotion,
    "circular": CircularMotion,
    "waypoints": WaypointMotion,
    "projectile": ProjectileMotion,
}


def make_generator(spec: MotionSpec, p0: Pose, dt: float = DEFAULT_DT) -> MotionGenerator:
    return _GENERATORS[spec.motion_type](spec, p0, dt)


def pose_at(g: MotionGenerator, step: int) -> Pose:
    if step < 0:
        raise ValueError("step must be non-negative")
    return g.pose_at(step)
