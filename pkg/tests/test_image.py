from __future__ import annotations

from types import SimpleNamespace

import numpy as np
import pytest

from cbddl.perturb.image import (
    ImageBuffer,
    apply_enhancement,
    apply_gaussian_noise,
    apply_profile,
    apply_salt_pepper,
    decode_ppm,
    encode_ppm,
    gaussian_noise_field,
    kelvin_multipliers,
)
from cbddl.perturb.visual import sample_profile

rng = np.random.default_rng(5)
IMG = ImageBuffer.from_array(rng.integers(0, 256, size=(24, 32, 3)))


def S(**kw):
    return SimpleNamespace(**kw)


def test_ppm_roundtrip_with_comment():
    data = encode_ppm(IMG)
    assert decode_ppm(data) == IMG
    commented = b"P6\n# a comment\n32 24\n255\n" + IMG.tobytes()
    assert decode_ppm(commented) == IMG


def test_ppm_rejects_other_formats():
    with pytest.raises(ValueError):
        decode_ppm(b"P3\n1 1\n255\n0 0 0\n")
    with pytest.raises(ValueError):
        decode_ppm(b"P6\n2 2\n255\n\x00\x00")


def test_identity_is_byte_exact():
    out = apply_enhancement(IMG, S(brightness=0.0, contrast=0.0, saturation=0.0, temperature=6500.0))
    assert encode_ppm(out) == encode_ppm(IMG)


def test_zero_brightness_factor_is_black():
    out = apply_enhancement(IMG, S(brightness=-1.0))
    assert not out.pixels.any()


def test_brightness_scales_and_clamps():
    img = ImageBuffer.filled(2, 2, (100, 200, 10))
    out = apply_enhancement(img, S(brightness=0.5))
    assert out.pixels[0, 0].tolist() == [150, 255, 15]


def test_contrast_pulls_towards_mean():
    img = ImageBuffer.from_array(np.array([[[0, 0, 0], [200, 200, 200]]]))
    out = apply_enhancement(img, S(contrast=-0.5))
    assert out.pixels[0, :, 0].tolist() == [50, 150]


def test_contrast_ignores_pixel_order():
    flat = IMG.pixels.reshape(-1, 3)
    perm = np.random.default_rng(1).permutation(len(flat))
    shuffled = ImageBuffer.from_array(flat[perm].reshape(IMG.pixels.shape))
    a = apply_enhancement(IMG, S(contrast=0.4)).pixels.reshape(-1, 3)[perm]
    b = apply_enhancement(shuffled, S(contrast=0.4)).pixels.reshape(-1, 3)
    assert np.array_equal(a, b)


def test_full_desaturation_gives_gray():
    out = apply_enhancement(IMG, S(saturation=-1.0)).pixels.astype(int)
    assert np.all(np.abs(out - out[..., :1]) <= 1)


def test_kelvin_neutral_and_direction():
    assert np.array_equal(kelvin_multipliers(6500), [1.0, 1.0, 1.0])
    warm, cool = kelvin_multipliers(3500), kelvin_multipliers(8500)
    # warm light loses blue, cool light loses red
    assert warm[2] < 0.6 and warm[0] == 1.0
    assert cool[0] < 0.9 and cool[2] > 1.0


def test_salt_pepper_hits_whole_pixels():
    img = ImageBuffer.filled(200, 100, (128, 128, 128))
    out = apply_salt_pepper(img, 0.2, 3).pixels
    changed = np.any(out != 128, axis=2)
    assert set(map(tuple, out[changed].tolist())) <= {(0, 0, 0), (255, 255, 255)}
    assert np.array_equal(apply_salt_pepper(img, 0.2, 3).pixels, out)


def test_gaussian_noise_uses_seed_and_clamps():
    a = apply_gaussian_noise(IMG, 0.0, 0.085, 1)
    assert a == apply_gaussian_noise(IMG, 0.0, 0.085, 1)
    assert a != apply_gaussian_noise(IMG, 0.0, 0.085, 2)
    assert apply_gaussian_noise(IMG, 0.0, 0.0, 1) == IMG
    with pytest.raises(ValueError):
        gaussian_noise_field((2, 2), 0.0, -1.0, 0)


def test_profile_pipeline_is_deterministic():
    p = sample_profile(4, 8, ("*",))
    assert apply_profile(IMG, p, 8) == apply_profile(IMG, p, 8)
    assert apply_profile(IMG, sample_profile(0, 8), 8) == IMG
