"""Goal and cost evaluation over trajectories.

Each term of the ``:cost`` block is one constraint. Instantaneous terms add
one unit per violating snapshot; terminal terms are checked on the final
snapshot and add ``ALPHA`` when violated.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from . import predicates as P
from .errors import ArityMismatch, MixedTermError, UnknownName
from .kinematics import vdot
from .model import GRIPPER, Expr, TaskSpec
from .sim import SceneState, Trajectory, _extent, distance, freeze_object

ALPHA = 10
FALL_DROP = 0.05
FALL_TILT = math.radians(60.0)
ON_LATERAL_TOL = 0.02
AT_TOL = 0.01


def _ids(arg) -> set:
    return {int(i) for i in arg}


def _resolve(state: SceneState, *names: str) -> None:
    for n in names:
        state.scene.resolve(n)


def _on(state: SceneState, obj: str, support: str) -> bool:
    if not state.contacts_between(obj, support):
        return False
    sext = _extent(state.scene.parts[support], state.pose(support))
    c = state.pose(obj).position
    tol = ON_LATERAL_TOL
    inside = sext[0] - tol <= c[0] <= sext[2] + tol and sext[1] - tol <= c[1] <= sext[3] + tol
    return inside and c[2] > sext[5]


def _fell(state: SceneState, obj: str) -> bool:
    scene = state.scene
    p0 = scene.init_poses[obj]
    p1 = state.pose(obj)
    z0 = _extent(scene.parts[obj], p0)[4]
    z1 = _extent(scene.parts[obj], p1)[4]
    if z1 < z0 - FALL_DROP:
        return True
    up0 = p0.orientation.rotate((0.0, 0.0, 1.0))
    up1 = p1.orientation.rotate((0.0, 0.0, 1.0))
    return math.acos(max(-1.0, min(1.0, vdot(up0, up1)))) > FALL_TILT


def _inside(state: SceneState, obj: str, container: str) -> bool:
    # containers are solid boxes, so resting on one also counts as inside
    if container not in state.scene.regions and _on(state, obj, container):
        return True
    ext = _extent(state.scene.parts[container], state.pose(container))
    c = state.pose(obj).position
    return ext[0] <= c[0] <= ext[2] and ext[1] <= c[1] <= ext[3] and ext[4] <= c[2] <= ext[5]


def eval_atom(atom: Expr, state: SceneState) -> bool:
    """Truth value of one predicate atom on a snapshot."""
    pk = P.lookup(atom.name)
    if pk is None:
        raise UnknownName(f"unknown predicate {atom.name}")
    if len(atom.args) != len(pk.arity):
        raise ArityMismatch(f"{atom.name} expects {len(pk.arity)} arguments, got {len(atom.args)}")
    names = [a for a, k in zip(atom.args, pk.arity) if k == P.OBJ]
    for a, k in zip(atom.args, pk.arity):
        if (k == P.OBJ) != isinstance(a, str):
            raise ArityMismatch(f"{atom.name}: argument {a!r} does not match schema {pk.arity}")
    _resolve(state, *names)
    a = atom.args
    name = pk.name

    if name == "InContact":
        return bool(state.contacts_between(a[0], a[1]))
    if name == "InContactPart":
        ids1, ids2 = _ids(a[2]), _ids(a[3])
        return any(
            c.parts_of(a[0]) in ids1 and c.parts_of(a[1]) in ids2 for c in state.contacts_between(a[0], a[1])
        )
    if name == "CheckForce":
        return any(c.force > float(a[2]) for c in state.contacts_between(a[0], a[1]))
    if name == "CheckDistance":
        return distance(state, a[0], a[1]) < float(a[2])
    if name == "CheckGripperDist":
        return distance(state, GRIPPER, a[0]) < float(a[1])
    if name == "CheckGripperDistPart":
        return distance(state, GRIPPER, a[0], ids_b=_ids(a[1])) < float(a[2])
    if name == "CheckGripperContact":
        return bool(state.contacts_between(GRIPPER, a[0]))
    if name == "CheckGripperContactPart":
        ids = _ids(a[1])
        return any(c.parts_of(a[0]) in ids for c in state.contacts_between(GRIPPER, a[0]))
    if name == "Collide":
        return a[0] in state.collided
    if name == "Fall":
        return _fell(state, a[0])
    if name == "NotOn":
        return not _on(state, a[0], a[1])
    if name == "OnTop":
        return _on(state, a[0], a[1])
    if name == "In":
        return _inside(state, a[0], a[1])
    if name in P.STATE_FLAGS:
        return (name, a[0]) in state.flags
    if name == "At":
        p = state.pose(a[0]).position
        return math.dist(p, tuple(float(v) for v in a[1])) < AT_TOL
    raise UnknownName(f"no evaluator for predicate {name}")


def eval_expr(e: Expr, state: SceneState) -> bool:
    """Boolean value of ``e``; every atom is evaluated (no short-circuit)."""
    if e.is_atom:
        return eval_atom(e, state)
    vals = [eval_expr(c, state) for c in e.children]
    if e.kind == "And":
        return all(vals)
    if e.kind == "Or":
        return any(vals)
    if e.kind == "Not":
        return not vals[0]
    raise ValueError(f"unknown connective {e.kind}")


def eval_terms(terms: list, state: SceneState) -> list:
    return [eval_expr(t, state) for t in terms]


def classify(term: Expr) -> str:
    kinds = set()
    for a in term.atoms():
        pk = P.lookup(a.name)
        if pk is None:
            raise UnknownName(f"unknown predicate {a.name}")
        if not pk.is_cost:
            raise MixedTermError(f"{a.name} is not a cost predicate (term {term})")
        kinds.add(pk.classification)
    if len(kinds) != 1:
        raise MixedTermError(f"cost term {term} mixes instantaneous and terminal predicates")
    return kinds.pop()


@dataclass
class TermResult:
    expr: Expr
    kind: str
    count: int
    cost: float

    def to_json(self) -> dict:
        return {
            "expr": str(self.expr),
            "kind": "inst" if self.kind == P.INSTANTANEOUS else "term",
            "count": self.count,
            "cost": self.cost,
        }


@dataclass
class CostLedger:
    terms: list = field(default_factory=list)
    alpha: float = ALPHA
    freezes: dict = field(default_factory=dict)  # mover -> first violating step

    @property
    def instantaneous(self) -> int:
        return sum(t.count for t in self.terms if t.kind == P.INSTANTANEOUS)

    @property
    def terminal(self) -> int:
        return sum(t.count for t in self.terms if t.kind == P.TERMINAL)

    @property
    def cc(self) -> float:
        return float(self.instantaneous + self.alpha * self.terminal)


def cumulative_cost(traj: Trajectory, cost: list, alpha: float = ALPHA) -> CostLedger:
    """Sum of per-step instantaneous violations plus ``alpha`` per violated terminal term."""
    if len(traj) == 0:
        raise ValueError("empty trajectory")
    terms = P.cost_terms(tuple(cost))
    movers = set(traj.states[0].scene.movers)
    ledger = CostLedger(alpha=alpha)
    for term in terms:
        kind = classify(term)
        if kind == P.INSTANTANEOUS:
            involved = sorted(movers.intersection(term.object_args()))
            count = 0
            for s in traj.states:
                if eval_expr(term, s):
                    count += 1
                    for m in involved:
                        ledger.freezes.setdefault(m, s.step)
            ledger.terms.append(TermResult(term, kind, count, float(count)))
        else:
            hit = int(eval_expr(term, traj.final))
            ledger.terms.append(TermResult(term, kind, hit, float(alpha * hit)))
    return ledger


class FreezeMonitor:
    """Freezes a mover on the first snapshot where a violated instantaneous term mentions it."""

    def __init__(self, spec: TaskSpec):
        self.terms = []
        movers = set(spec.mover_names)
        for term in P.cost_terms(spec.cost):
            if classify(term) == P.INSTANTANEOUS:
                involved = sorted(movers.intersection(term.object_args()))
                if involved:
                    self.terms.append((term, involved))

    def __call__(self, state: SceneState) -> SceneState:
        for term, involved in self.terms:
            if all(m in state.frozen for m in involved):
                continue
            if eval_expr(term, state):
                for m in involved:
                    state = freeze_object(state, m)
        return state


@dataclass
class EvalReport:
    success: bool
    cc: float
    terms: list
    length: int

    def to_json(self) -> dict:
        return {
            "success": self.success,
            "cc": self.cc,
            "terms": [t.to_json() for t in self.terms],
            "length": self.length,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)


def evaluate_episode(spec: TaskSpec, traj: Trajectory, alpha: float = ALPHA) -> EvalReport:
    ledger = cumulative_cost(traj, list(spec.cost), alpha)
    success = eval_expr(spec.goal, traj.final)
    return EvalReport(success, ledger.cc, ledger.terms, len(traj))


@dataclass(frozen=True)
class SuiteSummary:
    episodes: int
    sr: float
    mean_cc: float


def aggregate(reports: list) -> SuiteSummary:
    """Success rate and mean cumulative cost over episode reports."""
    if not reports:
        raise ValueError("no episodes to aggregate")
    n = len(reports)
    return SuiteSummary(n, sum(1 for r in reports if r.success) / n, sum(r.cc for r in reports) / n)
