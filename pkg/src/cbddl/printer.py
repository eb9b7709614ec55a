"""Canonical text rendering of a :class:`TaskSpec`."""

from __future__ import annotations

from .model import (
    Expr,
    GaussianNoise,
    MotionSpec,
    ObjectDecl,
    SaltPepperNoise,
    TaskSpec,
    fmt_list,
    fmt_number,
)

_MOTION_KEYS = (
    ("period", ":motion_period"),
    ("travel_dist", ":motion_travel_dist"),
    ("direction", ":motion_direction"),
    ("center", ":motion_center"),
    ("waypoints", ":motion_waypoints"),
    ("initial_speed", ":motion_initial_speed"),
    ("gravity", ":motion_gravity"),
)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _expr(e: Expr, indent: int) -> list[str]:
    pad = "  " * indent
    if e.is_atom or all(c.is_atom for c in e.children) and len(str(e)) <= 72:
        return [pad + str(e)]
    lines = [pad + "(" + e.kind]
    for c in e.children:
        lines.extend(_expr(c, indent + 1))
    lines[-1] += ")"
    return lines


def _object(o: ObjectDecl) -> str:
    parts = []
    for p in o.parts:
        size = fmt_number(p.size[0]) if p.shape == "sphere" else fmt_list(p.size)
        parts.append(f"({p.index} {p.shape} {size} {fmt_list(p.offset)})")
    return f"({o.name} {o.category} (:parts {' '.join(parts)}))"


def _motion(m: MotionSpec) -> list[str]:
    lines = [f"    ({m.object}", f"      (:motion_type {m.motion_type})"]
    for attr, key in _MOTION_KEYS:
        v = getattr(m, attr)
        if v is None:
            continue
        if attr == "waypoints":
            text = "(" + " ".join(fmt_list(w) for w in v) + ")"
        elif isinstance(v, tuple):
            text = fmt_list(v)
        else:
            text = fmt_number(v)
        lines.append(f"      ({key} {text})")
    lines[-1] += ")"
    return lines


def pretty_print(spec: TaskSpec) -> str:
    out = [f"(define (problem {spec.name})", f"  (:domain {spec.domain})"]
    if spec.language is not None:
        out.append(f"  (:language {_quote(spec.language)})")
    out.append("  (:objects")
    out.extend("    " + _object(o) for o in spec.objects)
    out[-1] += ")"
    if spec.moving_objects:
        out.append("  (:moving_objects")
        for m in spec.moving_objects:
            out.extend(_motion(m))
        out[-1] += ")"
    out.append("  (:init")
    for a in spec.init:
        out.append("    " + str(a))
    out[-1] += ")"
    out.append("  (:goal")
    out.extend(_expr(spec.goal, 2))
    out[-1] += ")"
    if spec.cost:
        out.append("  (:cost")
        for c in spec.cost:
            out.extend(_expr(c, 2))
        out[-1] += ")"
    v = spec.visual
    if v is not None:
        if v.has_image_settings:
            items = [
                f"(:{k} {fmt_number(getattr(v, k))})"
                for k in ("brightness", "contrast", "saturation", "temperature")
                if getattr(v, k) is not None
            ]
            out.append("  (:image_settings " + " ".join(items) + ")")
        if isinstance(v.noise, GaussianNoise):
            out.append(f"  (:noise gaussian {fmt_number(v.noise.mean)} {fmt_number(v.noise.var)})")
        elif isinstance(v.noise, SaltPepperNoise):
            out.append(f"  (:noise salt_pepper {fmt_number(v.noise.prob)})")
        if v.random_color is not None:
            out.append(f"  (:random_color {'true' if v.random_color else 'false'})")
    if spec.cameras:
        cams = []
        for c in spec.cameras:
            cams.append(c.name if c.offset is None else f"{c.name} {fmt_list(c.offset)}")
        out.append("  (:camera " + " ".join(cams) + ")")
    out[-1] += ")"
    return "\n".join(out) + "\n"
