"""Deterministic photometric operations on 8-bit RGB buffers."""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

NEUTRAL_KELVIN = 6500.0
_LUMA = np.array([0.299, 0.587, 0.114])
_LUMA_MILLI = np.array([299, 587, 114], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class ImageBuffer:
    width: int
    height: int
    pixels: np.ndarray  # (height, width, 3) uint8, row-major

    def __post_init__(self):
        if self.pixels.shape != (self.height, self.width, 3) or self.pixels.dtype != np.uint8:
            raise ValueError(f"pixels must be uint8 of shape {(self.height, self.width, 3)}")

    @classmethod
    def from_array(cls, arr) -> "ImageBuffer":
        arr = np.ascontiguousarray(arr, dtype=np.uint8)
        return cls(arr.shape[1], arr.shape[0], arr)

    @classmethod
    def filled(cls, width: int, height: int, rgb) -> "ImageBuffer":
        return cls.from_array(np.broadcast_to(np.asarray(rgb, dtype=np.uint8), (height, width, 3)))

    def tobytes(self) -> bytes:
        return self.pixels.tobytes()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ImageBuffer)
            and self.width == other.width
            and self.height == other.height
            and np.array_equal(self.pixels, other.pixels)
        )


def _ppm_tokens(data: bytes, count: int):
    """Header fields of a binary PPM, skipping ``#`` comments."""
    fields, i = [], 0
    while len(fields) < count:
        while i < len(data) and data[i : i + 1].isspace():
            i += 1
        if data[i : i + 1] == b"#":
            while i < len(data) and data[i : i + 1] not in (b"\n", b"\r"):
                i += 1
            continue
        j = i
        while j < len(data) and not data[j : j + 1].isspace():
            j += 1
        fields.append(data[i:j])
        i = j
    return fields, i + 1  # exactly one whitespace byte before the raster


def decode_ppm(data: bytes) -> ImageBuffer:
    (magic, w, h, maxval), start = _ppm_tokens(data, 4)
    if magic != b"P6":
        raise ValueError(f"not a binary PPM (magic {magic!r})")
    w, h, maxval = int(w), int(h), int(maxval)
    if maxval != 255:
        raise ValueError(f"only maxval 255 is supported, got {maxval}")
    raster = data[start : start + w * h * 3]
    if len(raster) != w * h * 3:
        raise ValueError("truncated PPM raster")
    return ImageBuffer(w, h, np.frombuffer(raster, dtype=np.uint8).reshape(h, w, 3).copy())


def encode_ppm(img: ImageBuffer) -> bytes:
    buf = io.BytesIO()
    buf.write(f"P6\n{img.width} {img.height}\n255\n".encode("ascii"))
    buf.write(img.tobytes())
    return buf.getvalue()


def read_ppm(path) -> ImageBuffer:
    with open(path, "rb") as fh:
        return decode_ppm(fh.read())


def write_ppm(path, img: ImageBuffer) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_ppm(img))


@lru_cache(maxsize=1)
def kelvin_table() -> np.ndarray:
    """Rows of (kelvin, r, g, b) sampled every 100 K."""
    text = resources.files("cbddl.data").joinpath("kelvin_rgb.tsv").read_text(encoding="utf-8")
    rows = [list(map(float, ln.split("\t"))) for ln in text.splitlines()[1:] if ln.strip()]
    return np.array(rows)


def _white_point(kelvin: float) -> np.ndarray:
    tab = kelvin_table()
    k = min(max(float(kelvin), tab[0, 0]), tab[-1, 0])
    return np.array([np.interp(k, tab[:, 0], tab[:, c]) for c in (1, 2, 3)])


def kelvin_multipliers(kelvin: float) -> np.ndarray:
    """Per-channel gains; exactly (1, 1, 1) at 6500 K."""
    return _white_point(kelvin) / _white_point(NEUTRAL_KELVIN)


def _get(settings, name: str, default: float) -> float:
    v = getattr(settings, name, None)
    return default if v is None else float(v)


def apply_enhancement(img: ImageBuffer, settings) -> ImageBuffer:
    """Brightness, contrast, saturation, then colour temperature.

    ``settings`` carries additive deltas (factor = 1 + delta) and a Kelvin
    temperature; a zero delta or 6500 K leaves that stage out.
    """
    b = _get(settings, "brightness", 0.0)
    c = _get(settings, "contrast", 0.0)
    s = _get(settings, "saturation", 0.0)
    t = _get(settings, "temperature", NEUTRAL_KELVIN)
    if b == 0.0 and c == 0.0 and s == 0.0 and t == NEUTRAL_KELVIN:
        return ImageBuffer.from_array(img.pixels.copy())

    x = img.pixels.astype(np.float64)
    if b != 0.0:
        x = np.clip((1.0 + b) * x, 0.0, 255.0)
    if c != 0.0:
        # integer luma sum keeps the mean independent of pixel order
        q = np.rint(x).astype(np.int64)
        mean = float((q @ _LUMA_MILLI).sum()) / (1000.0 * img.width * img.height)
        x = np.clip(mean + (1.0 + c) * (x - mean), 0.0, 255.0)
    if s != 0.0:
        gray = (x @ _LUMA)[..., None]
        x = np.clip(gray + (1.0 + s) * (x - gray), 0.0, 255.0)
    if t != NEUTRAL_KELVIN:
        x = np.clip(x * kelvin_multipliers(t), 0.0, 255.0)
    return ImageBuffer.from_array(np.rint(x).astype(np.uint8))


def gaussian_noise_field(shape, mean: float, var: float, seed: int) -> np.ndarray:
    """The additive noise (on the [0, 1] scale) that :func:`apply_gaussian_noise` uses."""
    if var < 0:
        raise ValueError("variance must be >= 0")
    rng = np.random.default_rng(seed)
    return rng.normal(mean, np.sqrt(var), size=shape)


def apply_gaussian_noise(img: ImageBuffer, mean: float, var: float, seed: int) -> ImageBuffer:
    if mean == 0.0 and var == 0.0:
        return ImageBuffer.from_array(img.pixels.copy())
    x = img.pixels.astype(np.float64) / 255.0
    x = np.clip(x + gaussian_noise_field(x.shape, mean, var, seed), 0.0, 1.0)
    return ImageBuffer.from_array(np.rint(x * 255.0).astype(np.uint8))


def apply_salt_pepper(img: ImageBuffer, prob: float, seed: int) -> ImageBuffer:
    """Each pixel is hit with probability ``prob``; hits become all-0 or all-255."""
    if not 0.0 <= prob <= 1.0:
        raise ValueError("prob must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    hit = rng.random((img.height, img.width)) < prob
    salt = rng.random((img.height, img.width)) < 0.5
    out = img.pixels.copy()
    out[hit & salt] = 255
    out[hit & ~salt] = 0
    return ImageBuffer.from_array(out)


def apply_profile(img: ImageBuffer, profile, seed: int) -> ImageBuffer:
    """Enhancement followed by the profile's sensor noise, if any."""
    out = apply_enhancement(img, profile)
    noise = getattr(profile, "noise", None)
    if noise is None:
        return out
    if hasattr(noise, "prob"):
        return apply_salt_pepper(out, float(noise.prob), seed)
    if hasattr(noise, "var"):
        return apply_gaussian_noise(out, float(noise.mean), float(noise.var), seed)
    mean, var = noise
    return apply_gaussian_noise(out, float(mean), float(var), seed)
