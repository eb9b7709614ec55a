"""Layered Zhang-Shasha tree edit distance and pairwise matrices."""

from __future__ import annotations

import csv
import io
import json
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .tree import SyntaxNode

DEFAULT_WEIGHTS = {
    "Task": 4.0,
    "Predicate": 3.0,
    "Verb": 3.0,
    "Constraint": 3.0,
    "Object": 1.0,
    "Region": 1.0,
}

_SPLIT = re.compile(r"[_\s]+")


def label_tokens(label: str) -> frozenset:
    return frozenset(t for t in _SPLIT.split(label.lower()) if t)


def discount(a: str, b: str) -> float:
    """1 - Jaccard similarity of the underscore/whitespace token sets."""
    if a == b:
        return 0.0
    ta, tb = label_tokens(a), label_tokens(b)
    union = ta | tb
    if not union:
        return 0.0
    return 1.0 - len(ta & tb) / len(union)


@dataclass(frozen=True)
class CostModel:
    weights: dict = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    update_base: float = 1.0

    def __post_init__(self):
        for k, w in self.weights.items():
            if not w > 0:
                raise ValueError(f"weight for {k} must be > 0, got {w}")
        if not self.update_base > 0:
            raise ValueError("update_base must be > 0")

    @classmethod
    def from_json(cls, d: dict) -> "CostModel":
        weights = dict(DEFAULT_WEIGHTS)
        weights.update({k: float(v) for k, v in d.get("weights", {}).items()})
        return cls(weights, float(d.get("update_base", 1.0)))

    @classmethod
    def load(cls, path) -> "CostModel":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict:
        return {"weights": dict(self.weights), "update_base": self.update_base}

    def indel(self, n: SyntaxNode) -> float:
        return self.weights[n.type]

    def update(self, a: SyntaxNode, b: SyntaxNode) -> float:
        if a.type != b.type:
            # relabelling across types is priced as delete + insert
            return self.weights[a.type] + self.weights[b.type]
        return self.update_base * self.weights[a.type] * discount(a.label, b.label)


def _annotate(root: SyntaxNode):
    """Post-order node list, leftmost-leaf index per node, and keyroots."""
    nodes: list = []
    lmd: list = []

    def walk(n):
        first = None
        for c in n.children:
            leftmost = walk(c)
            if first is None:
                first = leftmost
        nodes.append(n)
        idx = len(nodes) - 1
        lmd.append(idx if first is None else first)
        return lmd[idx]

    walk(root)
    # a keyroot is the highest node for each leftmost-leaf value
    last = {leaf: i for i, leaf in enumerate(lmd)}
    return nodes, lmd, sorted(last.values())


def tree_edit_distance(a: SyntaxNode, b: SyntaxNode, cm: CostModel | None = None) -> float:
    cm = cm or CostModel()
    an, al, akr = _annotate(a)
    bn, bl, bkr = _annotate(b)
    td = np.zeros((len(an), len(bn)))
    dels = [cm.indel(n) for n in an]
    ins = [cm.indel(n) for n in bn]

    for i in akr:
        for j in bkr:
            li, lj = al[i], bl[j]
            m, n = i - li + 2, j - lj + 2
            fd = np.zeros((m, n))
            io, jo = li - 1, lj - 1
            for x in range(1, m):
                fd[x, 0] = fd[x - 1, 0] + dels[x + io]
            for y in range(1, n):
                fd[0, y] = fd[0, y - 1] + ins[y + jo]
            for x in range(1, m):
                xi = x + io
                for y in range(1, n):
                    yj = y + jo
                    best = min(fd[x - 1, y] + dels[xi], fd[x, y - 1] + ins[yj])
                    if al[xi] == li and bl[yj] == lj:
                        fd[x, y] = min(best, fd[x - 1, y - 1] + cm.update(an[xi], bn[yj]))
                        td[xi, yj] = fd[x, y]
                    else:
                        p, q = al[xi] - 1 - io, bl[yj] - 1 - jo
                        fd[x, y] = min(best, fd[p, q] + td[xi, yj])
    return float(td[-1, -1])


def _pair(args):
    i, j, a, b, cm = args
    return i, j, tree_edit_distance(a, b, cm)


def pairwise_matrix(trees, cm: CostModel | None = None, workers: int = 1) -> np.ndarray:
    """Symmetric distance matrix; each unordered pair is computed once."""
    trees = list(trees)
    cm = cm or CostModel()
    n = len(trees)
    if n < 2:
        raise ValueError("need at least two trees")
    jobs = [(i, j, trees[i], trees[j], cm) for i in range(n) for j in range(i + 1, n)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_pair, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_pair(j) for j in jobs]
    m = np.zeros((n, n))
    for i, j, d in results:
        m[i, j] = m[j, i] = d
    return m


def matrix_to_csv(names, m: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["task", *names])
    for name, row in zip(names, m):
        w.writerow([name, *(repr(float(v)) for v in row)])
    return buf.getvalue()


def matrix_from_csv(text: str):
    rows = list(csv.reader(io.StringIO(text)))
    names = rows[0][1:]
    return names, np.array([[float(v) for v in r[1:]] for r in rows[1:]])
