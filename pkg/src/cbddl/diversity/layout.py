"""Fruchterman-Reingold embedding of a distance matrix."""

from __future__ import annotations

import csv
import io

import numpy as np

DEFAULT_ITERATIONS = 500
_EPS = 1e-9


def fr_layout(m, seed: int = 0, iterations: int = DEFAULT_ITERATIONS) -> np.ndarray:
    """2D positions whose pairwise distances track ``m``.

    Every pair is an edge with ideal length ``k * m_ij / mean(m)``, where
    ``k`` is the mean off-diagonal distance (area = n, so the unit spacing is
    rescaled to the matrix). Attraction is ``d**2 / l`` and repulsion
    ``l**2 / d``; the step cap cools linearly to zero.
    """
    m = np.asarray(m, dtype=np.float64)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("distance matrix must be square")
    rng = np.random.default_rng(seed)
    if n == 1:
        return np.zeros((1, 2))
    off = m[~np.eye(n, dtype=bool)]
    mean = float(off.mean()) if off.size and off.mean() > 0 else 1.0
    k = mean  # sqrt(area / n) = 1 with area = n
    ideal = np.maximum(k * m / mean, 1e-3 * k)
    np.fill_diagonal(ideal, 1.0)

    pos = rng.uniform(-0.5, 0.5, size=(n, 2)) * k * np.sqrt(n)
    t0 = 0.1 * k * np.sqrt(n)
    mask = ~np.eye(n, dtype=bool)
    for it in range(iterations):
        t = t0 * (1.0 - it / iterations)
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.maximum(np.linalg.norm(delta, axis=2), _EPS)
        force = np.where(mask, ideal**2 / dist - dist**2 / ideal, 0.0)
        disp = ((delta / dist[..., None]) * force[..., None]).sum(axis=1)
        length = np.maximum(np.linalg.norm(disp, axis=1), _EPS)
        pos = pos + disp / length[:, None] * np.minimum(length, t)[:, None]
    if not np.all(np.isfinite(pos)):
        raise FloatingPointError("layout diverged")
    return pos


def layout_to_csv(names, pos: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["task", "x", "y"])
    for name, (x, y) in zip(names, pos):
        w.writerow([name, repr(float(x)), repr(float(y))])
    return buf.getvalue()
