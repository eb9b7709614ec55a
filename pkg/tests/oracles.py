"""Independent reference implementations used as test oracles.

Nothing here imports the code under test beyond plain data types.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

# ---------------------------------------------------------------------------
# kinematics


def linear_closed_form(p0, direction, travel, period, step):
    """Triangle wave written from the out-and-back description."""
    d = np.asarray(direction, float)
    d = d / np.linalg.norm(d)
    phase = step % period
    half = period / 2.0
    frac = phase / half if phase <= half else (period - phase) / half
    return np.asarray(p0, float) + travel * frac * d


def projectile_closed_form(p0, speed, direction, gravity, t):
    d = np.asarray(direction, float)
    v0 = speed * d / np.linalg.norm(d)
    return np.asarray(p0, float) + v0 * t + 0.5 * np.asarray(gravity, float) * t * t


def quat_to_matrix(w, x, y, z):
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def rotation_angle(m1, m2):
    r = m1.T @ m2
    return math.acos(max(-1.0, min(1.0, (np.trace(r) - 1.0) / 2.0)))


# ---------------------------------------------------------------------------
# geometry


def point_box_distance(p, lo, hi):
    q = np.clip(p, lo, hi)
    return float(np.linalg.norm(p - q))


def sampled_box_box_distance(lo_a, hi_a, lo_b, hi_b, n=9):
    """Min over a grid of points of box A of the exact point-to-box distance to B."""
    axes = [np.linspace(lo_a[i], hi_a[i], n) for i in range(3)]
    pts = np.stack(np.meshgrid(*axes, indexing="ij"), -1).reshape(-1, 3)
    q = np.clip(pts, lo_b, hi_b)
    return float(np.min(np.linalg.norm(pts - q, axis=1)))


# ---------------------------------------------------------------------------
# ordered-tree edit distance via exhaustive mapping enumeration
#
# The edit distance between ordered trees equals the cheapest valid mapping
# (one-to-one, ancestor- and sibling-order preserving) priced as relabels for
# mapped pairs plus deletes/inserts for the rest. Enumerating every mapping is
# therefore an exhaustive search over edit scripts up to reordering.


def _flatten(tree):
    """Preorder nodes with parent index and postorder number."""
    nodes, parent, post = [], [], {}
    counter = itertools.count()

    def walk(n, p):
        i = len(nodes)
        nodes.append(n)
        parent.append(p)
        for c in n.children:
            walk(c, i)
        post[i] = next(counter)

    walk(tree, -1)
    anc = [set() for _ in nodes]
    for i in range(len(nodes)):
        p = parent[i]
        while p != -1:
            anc[i].add(p)
            p = parent[p]
    return nodes, [post[i] for i in range(len(nodes))], anc


def mapping_distance(a, b, indel, relabel):
    an, apost, aanc = _flatten(a)
    bn, bpost, banc = _flatten(b)
    best = math.inf

    def consistent(pairs, i, j):
        for (k, l) in pairs:
            if (k in aanc[i]) != (l in banc[j]) or (i in aanc[k]) != (j in banc[l]):
                return False
            # preorder < and postorder < together mean "left of"
            left_a = k < i and apost[k] < apost[i]
            left_b = l < j and bpost[l] < bpost[j]
            if left_a != left_b:
                return False
        return True

    def rec(i, pairs, used, cost):
        nonlocal best
        if cost >= best:
            return
        if i == len(an):
            total = cost + sum(indel(bn[j]) for j in range(len(bn)) if j not in used)
            best = min(best, total)
            return
        rec(i + 1, pairs, used, cost + indel(an[i]))
        for j in range(len(bn)):
            if j not in used and consistent(pairs, i, j):
                rec(i + 1, pairs + [(i, j)], used | {j}, cost + relabel(an[i], bn[j]))

    rec(0, [], frozenset(), 0.0)
    return best


def ordered_shapes(n):
    """All ordered rooted tree shapes with n nodes, as nested tuples of children."""
    if n == 1:
        return [()]
    out = []
    for split in _compositions(n - 1):
        for kids in itertools.product(*(ordered_shapes(k) for k in split)):
            out.append(tuple(kids))
    return out


def _compositions(n):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# cumulative cost from serialized trajectory records


def gripper_box_distance(rec, name, half, radius):
    g = np.array(rec["gripper"]["pos"])
    c = np.array(rec["objects"][name]["pos"])
    h = np.asarray(half, float)
    return max(0.0, point_box_distance(g, c - h, c + h) - radius)


def sphere_sphere_gap(p, q, r1, r2):
    return float(np.linalg.norm(np.asarray(p) - np.asarray(q))) - r1 - r2


def random_scene_cc(records, alpha=10.0):
    """Cumulative cost of the ``RANDOM_SCENE`` cost block, from serialized records only.

    Terms: gripper within 0.06 of block_1 (inst), gripper touching ball_1 (inst),
    Fall ball_1 (term), NotOn ball_1 block_1 (term).
    """
    block_half, ball_r, grip_r, tol = 0.05, 0.03, 0.01, 1e-6
    inst = 0
    for rec in records:
        inst += gripper_box_distance(rec, "block_1", (block_half,) * 3, grip_r) < 0.06
        g = rec["gripper"]["pos"]
        inst += sphere_sphere_gap(g, rec["objects"]["ball_1"]["pos"], grip_r, ball_r) <= tol

    first, last = records[0]["objects"], records[-1]["objects"]
    z0 = first["ball_1"]["pos"][2] - ball_r
    z1 = last["ball_1"]["pos"][2] - ball_r
    fell = z1 < z0 - 0.05  # a sphere's tilt cannot matter
    ball = np.array(last["ball_1"]["pos"])
    block = np.array(last["block_1"]["pos"])
    touching = point_box_distance(ball, block - block_half, block + block_half) - ball_r <= tol
    lateral = np.all(np.abs(ball[:2] - block[:2]) <= block_half + 0.02)
    on = touching and lateral and ball[2] > block[2] + block_half
    return inst + alpha * (int(fell) + int(not on))
