"""Predicate schema table: name, classification and argument kinds."""

from __future__ import annotations

from dataclasses import dataclass

INSTANTANEOUS = "Instantaneous"
TERMINAL = "Terminal"
GOAL = "Goal"
INIT = "Init"

# argument kinds
OBJ = "obj"
IDS = "ids"
NUM = "num"
VEC3 = "vec3"


@dataclass(frozen=True)
class PredicateKind:
    name: str
    classification: str
    arity: tuple

    @property
    def is_cost(self) -> bool:
        return self.classification in (INSTANTANEOUS, TERMINAL)


_TABLE = [
    PredicateKind("InContact", INSTANTANEOUS, (OBJ, OBJ)),
    PredicateKind("InContactPart", INSTANTANEOUS, (OBJ, OBJ, IDS, IDS)),
    PredicateKind("CheckForce", INSTANTANEOUS, (OBJ, OBJ, NUM)),
    PredicateKind("CheckDistance", INSTANTANEOUS, (OBJ, OBJ, NUM)),
    PredicateKind("CheckGripperDist", INSTANTANEOUS, (OBJ, NUM)),
    PredicateKind("CheckGripperDistPart", INSTANTANEOUS, (OBJ, IDS, NUM)),
    PredicateKind("CheckGripperContact", INSTANTANEOUS, (OBJ,)),
    PredicateKind("CheckGripperContactPart", INSTANTANEOUS, (OBJ, IDS)),
    PredicateKind("Collide", TERMINAL, (OBJ,)),
    PredicateKind("Fall", TERMINAL, (OBJ,)),
    PredicateKind("NotOn", TERMINAL, (OBJ, OBJ)),
    PredicateKind("OnTop", GOAL, (OBJ, OBJ)),
    PredicateKind("In", GOAL, (OBJ, OBJ)),
    PredicateKind("Lit", GOAL, (OBJ,)),
    PredicateKind("TurnedOn", GOAL, (OBJ,)),
    PredicateKind("ToggledOn", GOAL, (OBJ,)),
    PredicateKind("At", INIT, (OBJ, VEC3)),
]

PREDICATES: dict[str, PredicateKind] = {p.name: p for p in _TABLE}

# the usage column of the cost table spells the gripper-distance predicates out in full
ALIASES = {
    "CheckGripperDistance": "CheckGripperDist",
    "CheckGripperDistancePart": "CheckGripperDistPart",
}

INIT_PREDICATES = frozenset({"At", "OnTop", "Lit", "TurnedOn", "ToggledOn"})
STATE_FLAGS = frozenset({"Lit", "TurnedOn", "ToggledOn"})

INSTANTANEOUS_SET = frozenset(p.name for p in _TABLE if p.classification == INSTANTANEOUS)
TERMINAL_SET = frozenset(p.name for p in _TABLE if p.classification == TERMINAL)


def lookup(name: str) -> PredicateKind | None:
    return PREDICATES.get(ALIASES.get(name, name))


def canonical(name: str) -> str:
    return ALIASES.get(name, name)


def cost_terms(cost: tuple) -> list:
    """Split a ``:cost`` block into independent constraint terms.

    A top-level ``And`` is a list of terms, not one conjunctive term.
    """
    terms = []
    for e in cost:
        if e.kind == "And":
            terms.extend(e.children)
        else:
            terms.append(e)
    return terms


def term_kind(term) -> str | None:
    """``INSTANTANEOUS``/``TERMINAL`` for homogeneous terms, ``None`` if mixed or unknown."""
    kinds = set()
    for a in term.atoms():
        p = lookup(a.name)
        if p is None or not p.is_cost:
            return None
        kinds.add(p.classification)
    return kinds.pop() if len(kinds) == 1 else None
