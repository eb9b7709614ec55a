"""Typed task representation produced by the parser.

All containers are tuples and all dataclasses are frozen so that a
:class:`TaskSpec` can be hashed, compared structurally and shared across
threads. Source spans are excluded from equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from typing import Iterator, Optional, Union

from .errors import Span

Number = Union[int, float]
Vec3 = tuple  # (x, y, z)
Arg = Union[str, int, float, tuple]

GRIPPER = "gripper0"
REGION_CATEGORY = "region"

CONNECTIVES = ("And", "Or", "Not")
MOTION_TYPES = ("linear", "circular", "waypoints", "projectile")
SHAPES = ("sphere", "box")
DEFAULT_RADIUS = 0.05


def fmt_number(x: Number) -> str:
    """Shortest positional decimal that reads back to the same value."""
    if isinstance(x, bool):
        raise TypeError("bool is not a CBDDL number")
    if isinstance(x, int):
        return str(x)
    s = format(Decimal(repr(float(x))), "f")
    if "." not in s:
        s += ".0"
    return s


def fmt_list(values) -> str:
    return "(" + " ".join(fmt_number(v) for v in values) + ")"


@dataclass(frozen=True)
class PartDecl:
    """One primitive of an object's collision geometry.

    ``size`` holds ``(radius,)`` for spheres and half-extents ``(hx, hy, hz)``
    for boxes. Boxes stay aligned with the world axes; only the offset is
    rotated with the object.
    """

    index: int
    shape: str
    size: tuple
    offset: tuple = (0, 0, 0)
    span: Optional[Span] = field(default=None, compare=False)

    @property
    def width(self) -> float:
        if self.shape == "sphere":
            return 2.0 * float(self.size[0])
        return 2.0 * float(min(self.size[0], self.size[1]))


def default_part() -> PartDecl:
    return PartDecl(0, "sphere", (DEFAULT_RADIUS,), (0, 0, 0))


@dataclass(frozen=True)
class ObjectDecl:
    name: str
    category: str
    parts: tuple = ()
    span: Optional[Span] = field(default=None, compare=False)

    @property
    def is_region(self) -> bool:
        return self.category == REGION_CATEGORY

    @property
    def is_gripper(self) -> bool:
        return self.name == GRIPPER


@dataclass(frozen=True)
class Expr:
    """Predicate-logic node: a connective (``And``/``Or``/``Not``) or an atom."""

    kind: str
    children: tuple = ()
    name: str = ""
    args: tuple = ()
    span: Optional[Span] = field(default=None, compare=False)

    @classmethod
    def atom(cls, name: str, *args: Arg, span: Span | None = None) -> "Expr":
        return cls("Atom", (), name, tuple(args), span)

    @classmethod
    def conj(cls, *children: "Expr") -> "Expr":
        return cls("And", tuple(children))

    @classmethod
    def disj(cls, *children: "Expr") -> "Expr":
        return cls("Or", tuple(children))

    @classmethod
    def neg(cls, child: "Expr") -> "Expr":
        return cls("Not", (child,))

    @property
    def is_atom(self) -> bool:
        return self.kind == "Atom"

    def atoms(self) -> Iterator["Expr"]:
        if self.is_atom:
            yield self
        else:
            for c in self.children:
                yield from c.atoms()

    def object_args(self) -> Iterator[str]:
        for a in self.atoms():
            for arg in a.args:
                if isinstance(arg, str):
                    yield arg

    def __str__(self) -> str:
        if self.is_atom:
            parts = [self.name]
            for a in self.args:
                if isinstance(a, str):
                    parts.append(a)
                elif isinstance(a, tuple):
                    parts.append(fmt_list(a))
                else:
                    parts.append(fmt_number(a))
            return "(" + " ".join(parts) + ")"
        return "(" + " ".join([self.kind] + [str(c) for c in self.children]) + ")"


@dataclass(frozen=True)
class MotionSpec:
    """Parameters of one ``:moving_objects`` entry; unset attributes are ``None``."""

    object: str
    motion_type: str
    period: Optional[Number] = None
    travel_dist: Optional[Number] = None
    direction: Optional[tuple] = None
    center: Optional[tuple] = None
    waypoints: Optional[tuple] = None
    initial_speed: Optional[Number] = None
    gravity: Optional[tuple] = None
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class GaussianNoise:
    mean: Number = 0.0
    var: Number = 0.085


@dataclass(frozen=True)
class SaltPepperNoise:
    prob: Number


@dataclass(frozen=True)
class CameraDecl:
    name: str
    offset: Optional[tuple] = None


@dataclass(frozen=True)
class VisualSpec:
    """Contents of the ``:image_settings``, ``:noise`` and ``:random_color`` blocks.

    Fields left as ``None`` were not written in the source; the
    ``effective_*`` properties supply the neutral defaults.
    """

    brightness: Optional[Number] = None
    contrast: Optional[Number] = None
    saturation: Optional[Number] = None
    temperature: Optional[Number] = None
    noise: Union[None, GaussianNoise, SaltPepperNoise] = None
    random_color: Optional[bool] = None

    @property
    def has_image_settings(self) -> bool:
        return any(v is not None for v in (self.brightness, self.contrast, self.saturation, self.temperature))

    @property
    def effective_temperature(self) -> float:
        return 6500.0 if self.temperature is None else float(self.temperature)

    def delta(self, name: str) -> float:
        v = getattr(self, name)
        return 0.0 if v is None else float(v)


@dataclass(frozen=True)
class TaskSpec:
    name: str
    domain: str
    goal: Expr
    objects: tuple = ()
    moving_objects: tuple = ()
    init: tuple = ()
    cost: tuple = ()
    language: Optional[str] = None
    visual: Optional[VisualSpec] = None
    cameras: tuple = ()
    span: Optional[Span] = field(default=None, compare=False)

    def object(self, name: str) -> ObjectDecl | None:
        for o in self.objects:
            if o.name == name:
                return o
        return None

    @property
    def object_names(self) -> list[str]:
        return [o.name for o in self.objects]

    @property
    def regions(self) -> list[ObjectDecl]:
        return [o for o in self.objects if o.is_region]

    @property
    def mover_names(self) -> list[str]:
        return [m.object for m in self.moving_objects]

    @property
    def camera_offsets(self) -> dict:
        return {c.name: c.offset for c in self.cameras if c.offset is not None}
