"""Visual perturbation profiles for the cumulative V0-V4 levels.

V1 adds lighting, V2 object colours, V3 camera offset, V4 Gaussian sensor
noise. Every draw is made regardless of level and then masked, so the
stages shared by two levels agree for the same seed.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from ..kinematics import Pose, vadd

DEFAULT_TEMPERATURE = 6500.0
LIGHT_RANGE = 0.75
TEMPERATURE_RANGE = (3500.0, 8500.0)
COLOR_RANGE = (0.2, 0.8)
CAMERA_RANGE = 0.105
NOISE_MEAN = 0.0
NOISE_VAR = 0.085

ALL_OBJECTS = "*"

STAGE_FIELDS = {
    1: ("brightness", "contrast", "saturation", "temperature"),
    2: ("colors",),
    3: ("camera_offset",),
    4: ("noise",),
}
STAGE_FIELDS_FLAT = tuple(f for fs in STAGE_FIELDS.values() for f in fs)


@dataclass(frozen=True)
class VisualProfile:
    level: int = 0
    brightness: float = 0.0
    contrast: float = 0.0
    saturation: float = 0.0
    temperature: float = DEFAULT_TEMPERATURE
    colors: tuple = ()  # ((name, (r, g, b, a)), ...)
    camera_offset: tuple = (0.0, 0.0, 0.0)
    noise: tuple | None = None  # (mean, var)

    def non_default_fields(self) -> set:
        base = VisualProfile()
        return {k for k in STAGE_FIELDS_FLAT if getattr(self, k) != getattr(base, k)}

    def to_json(self) -> dict:
        d = asdict(self)
        d["colors"] = {n: list(c) for n, c in self.colors}
        d["camera_offset"] = list(self.camera_offset)
        d["noise"] = None if self.noise is None else {"mean": self.noise[0], "var": self.noise[1]}
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, d: dict) -> "VisualProfile":
        noise = d.get("noise")
        return cls(
            level=int(d["level"]),
            brightness=float(d["brightness"]),
            contrast=float(d["contrast"]),
            saturation=float(d["saturation"]),
            temperature=float(d["temperature"]),
            colors=tuple((n, tuple(c)) for n, c in d.get("colors", {}).items()),
            camera_offset=tuple(d["camera_offset"]),
            noise=None if noise is None else (float(noise["mean"]), float(noise["var"])),
        )


def _check_level(level) -> int:
    if isinstance(level, str):
        level = int(level.upper().lstrip("V"))
    if not 0 <= level <= 4:
        raise ValueError(f"visual level must be in 0..4, got {level}")
    return int(level)


def sample_object_colors(names, rng: np.random.Generator) -> dict:
    """Independent RGB channels in [0.2, 0.8) with alpha fixed at 1."""
    rgb = rng.uniform(COLOR_RANGE[0], COLOR_RANGE[1], size=(len(names), 3))
    return {n: (float(r), float(g), float(b), 1.0) for n, (r, g, b) in zip(names, rgb)}


def sample_profile(level, seed: int, objects=(ALL_OBJECTS,)) -> VisualProfile:
    """One profile; ``objects`` names the materials that receive a colour at V2+."""
    level = _check_level(level)
    rng = np.random.default_rng(seed)
    light = rng.uniform(-LIGHT_RANGE, LIGHT_RANGE, size=3)
    temp = rng.uniform(*TEMPERATURE_RANGE)
    colors = sample_object_colors(list(objects), rng)
    cam = rng.uniform(-CAMERA_RANGE, CAMERA_RANGE, size=3)
    kw: dict = {"level": level}
    if level >= 1:
        kw.update(brightness=float(light[0]), contrast=float(light[1]), saturation=float(light[2]),
                  temperature=float(temp))
    if level >= 2:
        kw["colors"] = tuple(colors.items())
    if level >= 3:
        kw["camera_offset"] = tuple(float(c) for c in cam)
    if level >= 4:
        kw["noise"] = (NOISE_MEAN, NOISE_VAR)
    return VisualProfile(**kw)


def sample_profile_arrays(level, n: int, seed: int) -> dict:
    """Vectorised draws of the scalar profile fields for ``n`` profiles.

    Fields not active at ``level`` come back filled with their defaults.
    """
    level = _check_level(level)
    rng = np.random.default_rng(seed)
    light = rng.uniform(-LIGHT_RANGE, LIGHT_RANGE, size=(n, 3))
    temp = rng.uniform(*TEMPERATURE_RANGE, size=n)
    rgb = rng.uniform(*COLOR_RANGE, size=(n, 3))
    cam = rng.uniform(-CAMERA_RANGE, CAMERA_RANGE, size=(n, 3))
    if level < 1:
        light[:] = 0.0
        temp[:] = DEFAULT_TEMPERATURE
    if level < 2:
        rgb[:] = np.nan
    if level < 3:
        cam[:] = 0.0
    return {
        "brightness": light[:, 0],
        "contrast": light[:, 1],
        "saturation": light[:, 2],
        "temperature": temp,
        "rgb": rgb,
        "camera_offset": cam,
    }


def perturb_camera(extrinsics: Pose, seed: int, half_width: float = CAMERA_RANGE) -> Pose:
    """Shift the camera position by an independent uniform offset per axis."""
    rng = np.random.default_rng(seed)
    off = rng.uniform(-half_width, half_width, size=3)
    return Pose(vadd(extrinsics.position, tuple(float(v) for v in off)), extrinsics.orientation)
