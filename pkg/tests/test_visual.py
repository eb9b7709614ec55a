from __future__ import annotations

import numpy as np
import pytest

from cbddl.kinematics import Pose
from cbddl.perturb.visual import (
    CAMERA_RANGE,
    STAGE_FIELDS,
    VisualProfile,
    perturb_camera,
    sample_profile,
    sample_profile_arrays,
)


@pytest.mark.parametrize("level", range(5))
def test_levels_are_cumulative(level):
    active = {f for k, fs in STAGE_FIELDS.items() if k <= level for f in fs}
    for seed in range(20):
        p = sample_profile(level, seed, ("apple_1", "bowl_1"))
        assert p.non_default_fields() <= active
        # every active field is drawn (temperature could in theory hit 6500 exactly)
        assert p.non_default_fields() == active


def test_shared_stages_agree_across_levels():
    objs = ("apple_1",)
    v1, v2, v4 = (sample_profile(k, 42, objs) for k in (1, 2, 4))
    assert (v1.brightness, v1.contrast, v1.saturation, v1.temperature) == (
        v4.brightness,
        v4.contrast,
        v4.saturation,
        v4.temperature,
    )
    assert v2.colors == v4.colors


def test_v2_has_light_and_color_only():
    p = sample_profile("V2", 3, ("apple_1",))
    assert p.non_default_fields() == {"brightness", "contrast", "saturation", "temperature", "colors"}
    assert p.camera_offset == (0.0, 0.0, 0.0) and p.noise is None


def test_json_roundtrip():
    p = sample_profile(4, 9, ("a", "b"))
    assert VisualProfile.from_json(p.to_json()) == p


def test_invalid_level():
    with pytest.raises(ValueError):
        sample_profile(5, 0)


def test_camera_perturbation_bounds():
    pose = Pose((1.0, 2.0, 3.0))
    for s in range(200):
        q = perturb_camera(pose, s)
        assert np.all(np.abs(np.subtract(q.position, pose.position)) <= CAMERA_RANGE)
        assert q.orientation == pose.orientation


def test_vectorised_draws_match_scalar():
    arr = sample_profile_arrays(3, 1, 17)
    p = sample_profile(3, 17, ("*",))
    assert arr["brightness"][0] == p.brightness and arr["temperature"][0] == p.temperature
