"""Semantic checks over a parsed :class:`TaskSpec`."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import predicates as P
from .errors import Span
from .model import GRIPPER, Expr, GaussianNoise, SaltPepperNoise, TaskSpec

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    message: str
    span: Span | None = None

    def render(self, filename: str = "<input>") -> str:
        line, col = (self.span.line, self.span.col) if self.span else (0, 0)
        return f"{filename}:{line}:{col}: {self.severity}: {self.message}"


def _is_int(x) -> bool:
    return isinstance(x, int) or (isinstance(x, float) and x.is_integer())


def _nonzero(v) -> bool:
    return v is not None and any(float(c) != 0.0 for c in v)


class _Checker:
    def __init__(self, spec: TaskSpec):
        self.spec = spec
        self.out: list[Diagnostic] = []
        self.objects = {}
        for o in spec.objects:
            self.objects.setdefault(o.name, o)

    def err(self, msg: str, span: Span | None) -> None:
        self.out.append(Diagnostic(ERROR, msg, span))

    def warn(self, msg: str, span: Span | None) -> None:
        self.out.append(Diagnostic(WARNING, msg, span))

    def known(self, name: str) -> bool:
        return name == GRIPPER or name in self.objects

    def objects_block(self) -> None:
        seen = set()
        for o in self.spec.objects:
            if o.name in seen:
                self.err(f"duplicate object {o.name}", o.span)
            seen.add(o.name)
            if not o.parts:
                self.err(f"object {o.name} has no parts", o.span)
            idx = sorted(p.index for p in o.parts)
            if idx != list(range(len(idx))):
                self.err(f"part indices of {o.name} are not contiguous from 0: {idx}", o.span)
            for p in o.parts:
                if any(float(s) <= 0 for s in p.size):
                    self.err(f"part {p.index} of {o.name} has non-positive size", p.span)
            if o.is_region and any(p.shape != "box" for p in o.parts):
                self.err(f"region {o.name} must be made of box parts", o.span)
            if o.is_gripper and o.category != "gripper":
                self.err(f"{GRIPPER} is reserved for the robot gripper (category gripper)", o.span)

    def atom(self, a: Expr, where: str) -> None:
        pk = P.lookup(a.name)
        if pk is None:
            self.err(f"unknown predicate {a.name}", a.span)
            return
        allowed = {
            "init": pk.name in P.INIT_PREDICATES,
            "goal": pk.classification != P.INIT,
            "cost": pk.is_cost,
        }[where]
        if not allowed:
            self.err(f"predicate {a.name} is not allowed in :{where}", a.span)
        if len(a.args) != len(pk.arity):
            self.err(f"{a.name} expects {len(pk.arity)} argument(s), got {len(a.args)}", a.span)
            return
        # the k-th id list belongs to the k-th object argument
        owners = [x if isinstance(x, str) else None for k, x in zip(pk.arity, a.args) if k == P.OBJ]
        n_ids = 0
        for kind, arg in zip(pk.arity, a.args):
            if kind == P.OBJ:
                if not isinstance(arg, str):
                    self.err(f"{a.name}: expected object name, got {arg!r}", a.span)
                elif not self.known(arg):
                    self.err(f"unknown object {arg}", a.span)
            elif kind == P.NUM:
                if isinstance(arg, (str, tuple)):
                    self.err(f"{a.name}: expected number, got {arg!r}", a.span)
                elif float(arg) < 0:
                    self.err(f"{a.name}: threshold must be non-negative, got {arg}", a.span)
            elif kind == P.VEC3:
                if not (isinstance(arg, tuple) and len(arg) == 3):
                    self.err(f"{a.name}: expected (x y z), got {arg!r}", a.span)
            elif kind == P.IDS:
                self.ids(a, arg, owners[n_ids] if n_ids < len(owners) else None)
                n_ids += 1
        if pk.name.startswith("CheckGripper") and a.args and a.args[0] == GRIPPER:
            self.warn(f"{a.name}: first argument is the gripper itself", a.span)

    def ids(self, a: Expr, arg, owner: str | None) -> None:
        if not isinstance(arg, tuple) or not arg:
            self.err(f"{a.name}: expected a non-empty part index list, got {arg!r}", a.span)
            return
        for i in arg:
            if not _is_int(i) or i < 0:
                self.err(f"{a.name}: part index {i} is not a non-negative integer", a.span)
        if owner is None or owner not in self.objects:
            return
        n = len(self.objects[owner].parts)
        for i in arg:
            if _is_int(i) and int(i) >= n:
                self.err(f"part index {int(i)} out of range for {owner} (parts 0..{n - 1})", a.span)

    def motions(self) -> None:
        seen = set()
        for m in self.spec.moving_objects:
            if m.object in seen:
                self.err(f"object {m.object} has more than one motion", m.span)
            seen.add(m.object)
            o = self.objects.get(m.object)
            if o is None:
                self.err(f"unknown object {m.object}", m.span)
            elif o.is_region or o.is_gripper:
                self.err(f"{m.object} cannot be a moving object", m.span)
            t = m.motion_type
            if m.period is not None and (not _is_int(m.period) or m.period < 2):
                self.err(f"{m.object}: :motion_period must be an integer >= 2", m.span)
            required = {
                "linear": ("period", "travel_dist", "direction"),
                "circular": ("center", "period"),
                "waypoints": ("waypoints",),
                "projectile": ("initial_speed", "direction", "gravity"),
            }[t]
            for f in required:
                if getattr(m, f) is None:
                    self.err(f"{m.object}: {t} motion requires :motion_{f}", m.span)
            if m.travel_dist is not None and m.travel_dist <= 0:
                self.err(f"{m.object}: :motion_travel_dist must be > 0", m.span)
            if m.direction is not None and not _nonzero(m.direction):
                self.err(f"{m.object}: :motion_direction must be non-zero", m.span)
            if m.waypoints is not None and len(m.waypoints) < 2:
                self.err(f"{m.object}: :motion_waypoints needs at least 2 entries", m.span)
            if m.initial_speed is not None and m.initial_speed < 0:
                self.err(f"{m.object}: :motion_initial_speed must be >= 0", m.span)
            for f in ("period", "travel_dist", "direction", "center", "waypoints", "initial_speed", "gravity"):
                if getattr(m, f) is not None and f not in required and not (f == "period" and t == "waypoints"):
                    self.warn(f"{m.object}: :motion_{f} is ignored by {t} motion", m.span)
            vals = []
            for f in ("period", "travel_dist", "initial_speed"):
                if getattr(m, f) is not None:
                    vals.append(float(getattr(m, f)))
            for f in ("direction", "center", "gravity"):
                vals.extend(float(c) for c in getattr(m, f) or ())
            for w in m.waypoints or ():
                vals.extend(float(c) for c in w)
            if not all(math.isfinite(v) for v in vals):
                self.err(f"{m.object}: non-finite motion parameter", m.span)

    def visual(self) -> None:
        v = self.spec.visual
        if v is None:
            return
        if v.temperature is not None and v.temperature <= 0:
            self.err("temperature must be > 0 K", self.spec.span)
        if isinstance(v.noise, GaussianNoise) and v.noise.var < 0:
            self.err("gaussian noise variance must be >= 0", self.spec.span)
        if isinstance(v.noise, SaltPepperNoise) and not 0 <= v.noise.prob <= 1:
            self.err("salt_pepper probability must lie in [0, 1]", self.spec.span)

    def run(self) -> list[Diagnostic]:
        self.objects_block()
        for a in self.spec.init:
            self.atom(a, "init")
        for a in self.spec.goal.atoms():
            self.atom(a, "goal")
        for c in self.spec.cost:
            for a in c.atoms():
                self.atom(a, "cost")
        for term in P.cost_terms(self.spec.cost):
            kinds = {P.lookup(a.name).classification for a in term.atoms() if P.lookup(a.name)}
            if P.INSTANTANEOUS in kinds and P.TERMINAL in kinds:
                self.err(f"cost term {term} mixes instantaneous and terminal predicates", term.span)
        self.motions()
        self.visual()
        return self.out


def validate(spec: TaskSpec) -> list[Diagnostic]:
    """Return diagnostics; the list is empty iff the task is well formed.

    Ordering depends only on content, never on block order in the file.
    """
    diags = _Checker(spec).run()
    uniq = {}
    for d in diags:
        uniq.setdefault((d.severity, d.message), d)
    return sorted(uniq.values(), key=lambda d: (d.severity != ERROR, d.message))


def has_errors(diags: list[Diagnostic]) -> bool:
    return any(d.severity == ERROR for d in diags)
