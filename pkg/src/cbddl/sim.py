"""Kinematic scene simulation with an analytic contact model.

Bodies are unions of spheres and world-aligned boxes. Contacts come from
primitive-pair signed distances; the reported force is a linear penalty
``k_pen * depth``. Moving objects follow their generators unless frozen,
and the gripper integrates clamped position/rotation/aperture deltas.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from . import geometry as geo
from .errors import SceneError, UnknownName
from .kinematics import DEFAULT_DT, MotionGenerator, Pose, Quat, as_vec, make_generator, vadd, vnorm, vscale, vsub
from .model import GRIPPER, PartDecl, TaskSpec
from .predicates import STATE_FLAGS

K_PEN = 1000.0
CONTACT_TOL = 1e-6
MAX_TRANSLATION = 0.05
GRASP_DIST = 0.005
MAX_APERTURE = 0.08
GRIPPER_RADIUS = 0.01
GRIPPER_HOME = (0.0, 0.0, 0.5)
FLOOR_Z = 0.0
MAX_STEPS = 500


@dataclass(frozen=True)
class SimConfig:
    k_pen: float = K_PEN
    dt: float = DEFAULT_DT
    max_steps: int = MAX_STEPS
    contact_tol: float = CONTACT_TOL
    max_translation: float = MAX_TRANSLATION
    grasp_dist: float = GRASP_DIST


@dataclass(frozen=True)
class Action:
    translation: tuple = (0.0, 0.0, 0.0)
    rotation: Quat = field(default_factory=Quat)
    aperture: float = 0.0

    def to_list(self) -> list:
        q = self.rotation
        if q.w < 0:
            q = -q
        angle = q.angle()
        s = math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z)
        rv = (0.0, 0.0, 0.0) if s < 1e-15 else (q.x / s * angle, q.y / s * angle, q.z / s * angle)
        return [*map(float, self.translation), *rv, float(self.aperture)]

    @classmethod
    def from_list(cls, v) -> "Action":
        if len(v) != 7:
            raise ValueError(f"action needs 7 numbers, got {len(v)}")
        return cls(as_vec(v[:3]), Quat.from_rotvec(as_vec(v[3:6])), float(v[6]))


ZERO_ACTION = Action()


@dataclass(frozen=True)
class ContactEvent:
    a: str
    part_a: int
    b: str
    part_b: int
    depth: float
    force: float

    def involves(self, name: str) -> bool:
        return self.a == name or self.b == name

    def parts_of(self, name: str) -> int:
        return self.part_a if self.a == name else self.part_b

    def to_json(self) -> dict:
        return {"a": self.a, "part_a": self.part_a, "b": self.b, "part_b": self.part_b,
                "depth": self.depth, "force": self.force}


@dataclass(frozen=True)
class GripperState:
    pose: Pose = field(default_factory=lambda: Pose(GRIPPER_HOME))
    aperture: float = MAX_APERTURE
    attached: Optional[str] = None
    grasp: Optional[Pose] = None  # attached object's pose in the gripper frame


class Scene:
    """Static, per-episode data derived from a spec. Shared by all snapshots."""

    def __init__(self, spec: TaskSpec, seed: int, config: SimConfig):
        self.spec = spec
        self.seed = seed
        self.config = config
        self.parts: dict[str, tuple] = {}
        self.regions: set[str] = set()
        for o in spec.objects:
            if o.is_gripper:
                continue
            self.parts[o.name] = o.parts
            if o.is_region:
                self.regions.add(o.name)
        g = spec.object(GRIPPER)
        self.parts[GRIPPER] = g.parts if g is not None else (PartDecl(0, "sphere", (GRIPPER_RADIUS,)),)
        self.movers = {m.object: m for m in spec.moving_objects}
        self.generators: dict[str, MotionGenerator] = {}
        self.init_poses: dict[str, Pose] = {}
        self.baseline: frozenset = frozenset()
        self.colors: dict[str, tuple] = {}

    @property
    def bodies(self) -> list[str]:
        """Physical bodies in deterministic order (regions excluded)."""
        return sorted(n for n in self.parts if n not in self.regions)

    def resolve(self, name: str) -> None:
        if name not in self.parts:
            raise UnknownName(f"unknown object or region {name!r}")


@dataclass(frozen=True)
class SceneState:
    scene: Scene = field(compare=False, repr=False)
    step: int
    poses: dict
    gripper: GripperState
    frozen: frozenset = frozenset()
    flags: frozenset = frozenset()
    contacts: tuple = ()
    collided: frozenset = frozenset()

    def pose(self, name: str) -> Pose:
        if name == GRIPPER:
            return self.gripper.pose
        try:
            return self.poses[name]
        except KeyError:
            raise UnknownName(f"unknown object or region {name!r}") from None

    def prims(self, name: str, ids: Iterable[int] | None = None) -> list:
        self.scene.resolve(name)
        pose = self.pose(name)
        wanted = None if ids is None else {int(i) for i in ids}
        return [geo.world_prim(p, pose) for p in self.scene.parts[name] if wanted is None or p.index in wanted]

    def indexed_prims(self, name: str) -> list:
        pose = self.pose(name)
        return [(p.index, geo.world_prim(p, pose)) for p in self.scene.parts[name]]

    def contacts_between(self, a: str, b: str) -> list:
        return [c for c in self.contacts if (c.a, c.b) in ((a, b), (b, a))]


# ---------------------------------------------------------------------------
# geometry queries


def distance(state: SceneState, a: str, b: str, ids_a=None, ids_b=None) -> float:
    """Minimum surface-to-surface distance over part pairs; 0 when touching or penetrating."""
    pa = state.prims(a, ids_a)
    pb = state.prims(b, ids_b)
    if not pa or not pb:
        raise UnknownName(f"no matching parts for {a!r}/{b!r}")
    return min(geo.distance(x, y) for x in pa for y in pb)


def compute_contacts(state: SceneState) -> tuple:
    cfg = state.scene.config
    bodies = state.scene.bodies
    prims = {n: state.indexed_prims(n) for n in bodies}
    events = []
    for i, a in enumerate(bodies):
        for b in bodies[i + 1 :]:
            for ia, pa in prims[a]:
                for ib, pb in prims[b]:
                    sd = geo.signed_distance(pa, pb)
                    if sd <= cfg.contact_tol:
                        depth = max(0.0, -sd)
                        events.append(ContactEvent(a, ia, b, ib, depth, cfg.k_pen * depth))
    return tuple(events)


def _pairs(contacts) -> frozenset:
    return frozenset((c.a, c.b) for c in contacts)


def _collided(prev: frozenset, contacts, baseline: frozenset) -> frozenset:
    hit = set(prev)
    for c in contacts:
        if (c.a, c.b) not in baseline:
            hit.add(c.a)
            hit.add(c.b)
    return frozenset(hit)


# ---------------------------------------------------------------------------
# episode setup


def _extent(parts, pose: Pose) -> tuple:
    return geo.footprint([geo.world_prim(p, pose) for p in parts])


def _place_on(parts, support_extent, orientation: Quat) -> Pose:
    """Pose that centres ``parts`` over the support footprint, resting on its top face."""
    probe = Pose((0.0, 0.0, 0.0), orientation)
    ex = _extent(parts, probe)
    sx = (support_extent[0] + support_extent[2]) / 2.0
    sy = (support_extent[1] + support_extent[3]) / 2.0
    cx = (ex[0] + ex[2]) / 2.0
    cy = (ex[1] + ex[3]) / 2.0
    return Pose((sx - cx, sy - cy, support_extent[5] - ex[4]), orientation)


def load_scene(spec: TaskSpec, seed: int = 0, config: SimConfig | None = None) -> SceneState:
    """Place bodies from ``:init``, bind motion generators and compute initial contacts."""
    config = config or SimConfig()
    scene = Scene(spec, seed, config)
    poses: dict[str, Pose] = {n: Pose() for n in scene.parts if n != GRIPPER}
    gripper = GripperState()
    flags = set()
    stack = []

    for a in spec.init:
        names = [x for x in a.args if isinstance(x, str)]
        for n in names:
            if n not in scene.parts:
                raise SceneError(f"init atom {a} references unknown object {n!r}")
        if a.name == "At":
            pos = as_vec(a.args[1])
            if a.args[0] == GRIPPER:
                gripper = dataclasses.replace(gripper, pose=Pose(pos))
            else:
                poses[a.args[0]] = Pose(pos, poses[a.args[0]].orientation)
        elif a.name == "OnTop":
            stack.append((a.args[0], a.args[1]))
        elif a.name in STATE_FLAGS:
            flags.add((a.name, a.args[0]))
        else:
            raise SceneError(f"predicate {a.name} cannot appear in :init")

    # stacked placements may reference each other in any order
    pending = list(stack)
    for _ in range(len(stack) + 1):
        if not pending:
            break
        deferred = []
        for top, base in pending:
            if any(t == base for t, _b in pending if t != top):
                deferred.append((top, base))
                continue
            if top == GRIPPER:
                raise SceneError("the gripper cannot be stacked")
            base_pose = gripper.pose if base == GRIPPER else poses[base]
            ext = _extent(scene.parts[base], base_pose)
            poses[top] = _place_on(scene.parts[top], ext, poses[top].orientation)
        if len(deferred) == len(pending):
            raise SceneError(f"cyclic OnTop placement among {sorted(t for t, _ in deferred)}")
        pending = deferred

    scene.init_poses = dict(poses)
    for name, m in scene.movers.items():
        if name not in poses:
            raise SceneError(f"moving object {name!r} is not declared")
        scene.generators[name] = make_generator(m, poses[name], config.dt)
        poses[name] = scene.generators[name].pose_at(0)

    if spec.visual is not None and spec.visual.random_color:
        from .perturb.visual import sample_object_colors

        scene.colors = sample_object_colors(sorted(n for n in poses), np.random.default_rng(seed))

    state = SceneState(scene, 0, poses, gripper, frozenset(), frozenset(flags))
    contacts = compute_contacts(state)
    scene.baseline = _pairs(contacts)
    return dataclasses.replace(state, contacts=contacts)


# ---------------------------------------------------------------------------
# stepping


def freeze_object(state: SceneState, name: str) -> SceneState:
    """Detach the generator of mover ``name``; its pose is held from now on."""
    if name not in state.scene.movers:
        raise UnknownName(f"{name!r} is not a moving object")
    if name in state.frozen:
        return state
    return dataclasses.replace(state, frozen=state.frozen | {name})


def _settle(state: SceneState, name: str, poses: dict) -> Pose:
    """Drop a released object straight down onto the highest surface below it."""
    parts = state.scene.parts[name]
    pose = poses[name]
    ex = _extent(parts, pose)
    support = FLOOR_Z
    tol = state.scene.config.contact_tol
    for other in state.scene.bodies:
        if other in (name, GRIPPER):
            continue
        oe = _extent(state.scene.parts[other], poses[other])
        overlap = oe[0] < ex[2] and ex[0] < oe[2] and oe[1] < ex[3] and ex[1] < oe[3]
        if overlap and oe[5] <= ex[4] + tol:
            support = max(support, oe[5])
    drop = ex[4] - support
    if drop <= 0:
        return pose
    return Pose(vsub(pose.position, (0.0, 0.0, drop)), pose.orientation)


def _graspable(state: SceneState, name: str) -> bool:
    if name == GRIPPER or name in state.scene.regions:
        return False
    return name not in state.scene.movers or name in state.frozen


def step(state: SceneState, action: Action, generators: dict | None = None) -> tuple:
    """Advance one step; returns ``(next_state, contacts)``."""
    scene = state.scene
    cfg = scene.config
    gens = scene.generators if generators is None else generators
    t = state.step + 1

    d = as_vec(action.translation)
    n = vnorm(d)
    if n > cfg.max_translation:
        d = vscale(d, cfg.max_translation / n)
    g = state.gripper
    gpose = Pose(vadd(g.pose.position, d), (action.rotation * g.pose.orientation).normalized())
    aperture = min(MAX_APERTURE, max(0.0, g.aperture + float(action.aperture)))
    attached, grasp = g.attached, g.grasp

    poses = dict(state.poses)
    for name, gen in gens.items():
        if name not in state.frozen:
            poses[name] = gen.pose_at(t)

    if attached is not None:
        poses[attached] = Pose(gpose.transform(grasp.position), (gpose.orientation * grasp.orientation).normalized())
        if action.aperture > 0:
            tmp = dataclasses.replace(state, poses=poses)
            poses[attached] = _settle(tmp, attached, poses)
            attached, grasp = None, None
    elif action.aperture < 0:
        tmp = dataclasses.replace(state, poses=poses, gripper=GripperState(gpose, aperture))
        gprims = tmp.prims(GRIPPER)
        best = None
        for name in scene.bodies:
            if not _graspable(state, name):
                continue
            for idx, prim in tmp.indexed_prims(name):
                dist = min(geo.distance(gp, prim) for gp in gprims)
                part = scene.parts[name][[p.index for p in scene.parts[name]].index(idx)]
                if dist <= cfg.grasp_dist and aperture < part.width:
                    if best is None or dist < best[0]:
                        best = (dist, name)
        if best is not None:
            attached = best[1]
            inv = gpose.orientation.conj()
            rel = inv.rotate(vsub(poses[attached].position, gpose.position))
            grasp = Pose(rel, (inv * poses[attached].orientation).normalized())

    nxt = SceneState(scene, t, poses, GripperState(gpose, aperture, attached, grasp), state.frozen, state.flags)
    contacts = compute_contacts(nxt)
    nxt = dataclasses.replace(nxt, contacts=contacts, collided=_collided(state.collided, contacts, scene.baseline))
    return nxt, list(contacts)


# ---------------------------------------------------------------------------
# trajectories


@dataclass
class Trajectory:
    """Snapshots ``s_0 .. s_{L-1}``; ``actions[t]`` is applied at ``s_t`` (the last is a no-op)."""

    states: list
    actions: list

    def __len__(self) -> int:
        return len(self.states)

    @property
    def final(self) -> SceneState:
        return self.states[-1]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=False) + "\n" for r in self.records())

    def records(self) -> list:
        out = []
        for i, (s, a) in enumerate(zip(self.states, self.actions)):
            out.append(state_record(s, a, terminal=i == len(self.states) - 1))
        return out


def state_record(s: SceneState, a: Action, terminal: bool = False) -> dict:
    g = s.gripper
    rec = {
        "step": s.step,
        "gripper": {
            "pos": list(g.pose.position),
            "quat": list(g.pose.orientation.as_tuple()),
            "aperture": g.aperture,
            "attached": g.attached,
        },
        "objects": {
            n: {"pos": list(p.position), "quat": list(p.orientation.as_tuple()), "frozen": n in s.frozen}
            for n, p in sorted(s.poses.items())
        },
        "action": a.to_list(),
        "contacts": [c.to_json() for c in s.contacts],
    }
    if terminal:
        rec["terminal"] = True
    return rec


def replay(
    spec: TaskSpec,
    actions: list,
    seed: int = 0,
    config: SimConfig | None = None,
    freeze_on_violation: bool = True,
) -> Trajectory:
    """Roll out ``actions`` from the initial scene.

    With ``freeze_on_violation`` a mover is frozen at the first step where a
    violated instantaneous cost term mentions it.
    """
    state = load_scene(spec, seed, config)
    monitor = None
    if freeze_on_violation and spec.cost and state.scene.movers:
        from .safety import FreezeMonitor

        monitor = FreezeMonitor(spec)
        state = monitor(state)
    states = [state]
    limit = state.scene.config.max_steps
    for a in actions[:limit]:
        state, _ = step(state, a)
        if monitor is not None:
            state = monitor(state)
        states.append(state)
    applied = list(actions[:limit]) + [ZERO_ACTION]
    return Trajectory(states, applied)


def read_actions(lines: Iterable[str]) -> list:
    """Action arrays from a trajectory or scripted-action JSON Lines file."""
    out = []
    for ln in lines:
        ln = ln.strip()
        if not ln:
            continue
        rec = json.loads(ln)
        if rec.get("terminal"):
            continue
        out.append(Action.from_list(rec["action"]))
    return out


def write_actions(actions: list) -> str:
    return "".join(json.dumps({"action": a.to_list()}) + "\n" for a in actions)


def read_trajectory(lines: Iterable[str], spec: TaskSpec, seed: int = 0, config: SimConfig | None = None) -> Trajectory:
    """Rebuild snapshots from JSON Lines records; contacts are recomputed from geometry."""
    base = load_scene(spec, seed, config)
    states, actions = [], []
    collided = frozenset()
    for ln in lines:
        ln = ln.strip()
        if not ln:
            continue
        r = json.loads(ln)
        gr = r["gripper"]
        poses = {}
        frozen = set()
        for n, o in r["objects"].items():
            base.scene.resolve(n)
            poses[n] = Pose(as_vec(o["pos"]), Quat(*map(float, o["quat"])))
            if o.get("frozen"):
                frozen.add(n)
        gripper = GripperState(Pose(as_vec(gr["pos"]), Quat(*map(float, gr["quat"]))), float(gr["aperture"]),
                               gr.get("attached"))
        s = SceneState(base.scene, int(r["step"]), poses, gripper, frozenset(frozen), base.flags)
        contacts = compute_contacts(s)
        collided = _collided(collided, contacts, base.scene.baseline) if states else frozenset()
        states.append(dataclasses.replace(s, contacts=contacts, collided=collided))
        actions.append(Action.from_list(r["action"]))
    if not states:
        raise SceneError("empty trajectory")
    return Trajectory(states, actions)
