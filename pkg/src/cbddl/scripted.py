"""Open-loop scripted gripper actions for fixtures and smoke tests."""

from __future__ import annotations

import math

from .kinematics import vnorm, vscale, vsub
from .model import TaskSpec
from .sim import GRIPPER, MAX_APERTURE, MAX_TRANSLATION, Action, SimConfig, _extent, load_scene

CLEARANCE = 0.15  # travel height above the tallest body
PLACE_GAP = 0.002


def move_to(start, target, max_step: float = MAX_TRANSLATION) -> list:
    """Straight-line translation actions; the final one lands exactly on ``target``."""
    d = vsub(target, start)
    dist = vnorm(d)
    if dist == 0:
        return []
    n = max(1, math.ceil(dist / max_step - 1e-12))
    return [Action(vscale(d, 1.0 / n)) for _ in range(n)]


def pick_and_place(spec: TaskSpec, obj: str, support: str, seed: int = 0, config: SimConfig | None = None) -> list:
    """Grasp ``obj`` from above, carry it over ``support`` and release it there."""
    state = load_scene(spec, seed, config)
    step = (config or SimConfig()).max_translation
    parts = state.scene.parts
    r = max(p.size[0] for p in parts[GRIPPER]) if parts[GRIPPER][0].shape == "sphere" else 0.01
    oe = _extent(parts[obj], state.pose(obj))
    se = _extent(parts[support], state.pose(support))
    top = max(_extent(parts[n], state.pose(n))[5] for n in state.scene.bodies if n != GRIPPER)
    z_travel = top + CLEARANCE + (oe[5] - oe[4])

    ox, oy = (oe[0] + oe[2]) / 2, (oe[1] + oe[3]) / 2
    sx, sy = (se[0] + se[2]) / 2, (se[1] + se[3]) / 2
    grip_z = oe[5] + r  # gripper sphere resting on the object's top face
    hang = grip_z - oe[4]  # gripper height above the object's bottom

    pos = state.gripper.pose.position
    actions = [Action(aperture=MAX_APERTURE)]
    for target in ((pos[0], pos[1], z_travel), (ox, oy, z_travel), (ox, oy, grip_z)):
        actions += move_to(pos, target, step)
        pos = target
    actions.append(Action(aperture=-MAX_APERTURE))
    for target in ((ox, oy, z_travel), (sx, sy, z_travel), (sx, sy, se[5] + PLACE_GAP + hang)):
        actions += move_to(pos, target, step)
        pos = target
    actions.append(Action(aperture=MAX_APERTURE))
    actions += move_to(pos, (pos[0], pos[1], z_travel), step)
    return actions
