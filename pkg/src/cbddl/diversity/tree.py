"""Typed syntax trees built from task specs."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..model import GRIPPER, Expr, TaskSpec
from ..predicates import canonical, cost_terms

TASK = "Task"
PREDICATE = "Predicate"
VERB = "Verb"
CONSTRAINT = "Constraint"
OBJECT = "Object"
REGION = "Region"
NODE_TYPES = (TASK, PREDICATE, VERB, CONSTRAINT, OBJECT, REGION)

VERBS = frozenset(
    """pick put place push pull open close turn move grab take stack pour lift slide
    press rotate insert fill set carry hand wipe""".split()
)

_WORD = re.compile(r"[A-Za-z]+")


@dataclass(frozen=True)
class SyntaxNode:
    type: str
    label: str
    children: tuple = ()

    def __post_init__(self):
        if self.type not in NODE_TYPES:
            raise ValueError(f"unknown node type {self.type!r}")
        if self.type in (OBJECT, REGION) and self.children:
            raise ValueError(f"{self.type} nodes are leaves")

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def add(self, child: "SyntaxNode") -> "SyntaxNode":
        return SyntaxNode(self.type, self.label, self.children + (child,))

    def __str__(self) -> str:
        head = f"{self.type}:{self.label}"
        if not self.children:
            return head
        return f"({head} " + " ".join(str(c) for c in self.children) + ")"


def _leaf(spec: TaskSpec, name: str) -> SyntaxNode:
    if name == GRIPPER:
        return SyntaxNode(OBJECT, "gripper")
    o = spec.object(name)
    if o is None:
        return SyntaxNode(OBJECT, name)
    if o.is_region:
        return SyntaxNode(REGION, o.name)
    return SyntaxNode(OBJECT, o.category)


def _expr_node(spec: TaskSpec, e: Expr, kind: str) -> SyntaxNode:
    if e.is_atom:
        leaves = tuple(_leaf(spec, a) for a in e.args if isinstance(a, str))
        return SyntaxNode(kind, canonical(e.name), leaves)
    return SyntaxNode(kind, e.kind, tuple(_expr_node(spec, c, kind) for c in e.children))


def _verb_nodes(spec: TaskSpec) -> list:
    if not spec.language:
        return []
    cats = {}
    for o in spec.objects:
        if o.is_region:
            continue
        cats.setdefault(o.category.lower(), o.category)
        cats.setdefault(o.category.lower().split("_")[-1], o.category)
    verbs: list = []
    for w in _WORD.findall(spec.language):
        lw = w.lower()
        if lw in VERBS:
            verbs.append([lw, []])
        elif verbs and lw in cats:
            verbs[-1][1].append(SyntaxNode(OBJECT, cats[lw]))
    return [SyntaxNode(VERB, v, tuple(objs)) for v, objs in verbs]


def task_to_tree(spec: TaskSpec) -> SyntaxNode:
    """Task root with Verb, then Predicate (goal), then Constraint (cost) children."""
    children = list(_verb_nodes(spec))
    goal = spec.goal.children if spec.goal.kind == "And" else (spec.goal,)
    children.extend(_expr_node(spec, g, PREDICATE) for g in goal)
    children.extend(_expr_node(spec, t, CONSTRAINT) for t in cost_terms(spec.cost))
    return SyntaxNode(TASK, spec.domain, tuple(children))
