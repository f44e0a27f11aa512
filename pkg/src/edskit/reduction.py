"""Forced/excluded vertex calculus: a ledger plus sound reduction rules.

The ledger keeps per-vertex solver status as bitmasks instead of physically
deleting vertices; marking a vertex EXCLUDED plus dominated is equivalent
to removing its closed neighborhood from the residual exact-cover problem.
Rules either make progress (force or exclude vertices), report nothing, or
prove the current commitments infeasible with a human-readable witness.

A ledger is a single-owner mutable value; different (graph, ledger) pairs
may be processed concurrently, but one ledger must not be mutated from two
threads.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field

from .graph import BipartiteGraph, DistanceLevels, bfs_levels, iter_bits, mask_of
from .paths import induced_path_from


class Status(enum.IntEnum):
    FREE = 0
    IN_D = 1
    EXCLUDED = 2


class Kind(enum.Enum):
    PROGRESS = "progress"
    NO_CHANGE = "no-change"
    INFEASIBLE = "infeasible"


# Rule identifiers as they appear in traces and JSON output.
R_FORCE = "force"
R_BASIS_CONFLICT = "basis-conflict"
R_NO_CANDIDATE = "no-candidate"
R_SOLE_CANDIDATE = "sole-candidate"
R_DOMINATED_NEIGHBORHOOD = "dominated-neighborhood"
R_TWIN_LEAVES = "twin-leaves"
R_SUBSET = "neighborhood-subset"
R_P7_TAIL = "p7-tail"
R_P6_TAIL = "p6-tail"
R_P6_TAIL_FORCE = "p6-tail-force"
R_3P2 = "three-p2-starvation"
R_4P2 = "four-p2-starvation"
R_P4P2 = "p4-p2-starvation"
R_P42P2 = "p4-2p2-starvation"
R_C4_COMPONENT = "c4-component"
R_P7_COMPONENT = "p7-component"
R_P4_COMMON_NEIGHBOR = "p4-components-common-neighbor"
R_P2_BRIDGE = "p2-bridge-starvation"
R_COMPONENT_PAIR = "component-pair-force"
R_COMPONENT_CENTER = "component-center-force"
R_COMPONENT_DEAD = "component-infeasible"
R_CHOICE = "choice-propagation"
R_CHOICE_AMBIGUOUS = "choice-ambiguity"
R_SHAPE = "level-shape-violation"

UNIT_RULES = (R_NO_CANDIDATE, R_SOLE_CANDIDATE, R_DOMINATED_NEIGHBORHOOD, R_TWIN_LEAVES)
PATTERN_RULES = (
    R_P7_TAIL,
    R_P6_TAIL,
    R_P6_TAIL_FORCE,
    R_3P2,
    R_4P2,
    R_P4P2,
    R_P42P2,
    R_C4_COMPONENT,
    R_P7_COMPONENT,
    R_P4_COMMON_NEIGHBOR,
    R_P2_BRIDGE,
)
COMPONENT_RULES = (R_COMPONENT_PAIR, R_COMPONENT_CENTER, R_COMPONENT_DEAD)


@dataclass
class RuleOutcome:
    kind: Kind
    fired: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)
    witness: str | None = None

    @property
    def progressed(self) -> bool:
        return self.kind is Kind.PROGRESS

    @property
    def infeasible(self) -> bool:
        return self.kind is Kind.INFEASIBLE


def _outcome(fired, witness=None, infeasible=False) -> RuleOutcome:
    if infeasible:
        return RuleOutcome(Kind.INFEASIBLE, fired, witness)
    return RuleOutcome(Kind.PROGRESS if fired else Kind.NO_CHANGE, fired)


class VertexLedger:
    """Per-vertex solver status plus domination bookkeeping.

    Invariants (checked by ``validate``): no vertex has two dominators;
    neighbors of IN_D vertices are EXCLUDED and dominated; vertices at
    distance 2 from an IN_D vertex are EXCLUDED; IN_D vertices are
    pairwise at distance >= 3.
    """

    __slots__ = ("n", "full", "in_d", "excluded", "dominated", "dominated_by", "work_queue")

    def __init__(self, n: int):
        self.n = n
        self.full = (1 << n) - 1
        self.in_d = 0
        self.excluded = 0
        self.dominated = 0
        self.dominated_by = [-1] * n
        self.work_queue: deque[int] = deque()

    @classmethod
    def fresh(cls, g: BipartiteGraph) -> "VertexLedger":
        return cls(g.n)

    def status(self, v: int) -> Status:
        if self.in_d >> v & 1:
            return Status.IN_D
        if self.excluded >> v & 1:
            return Status.EXCLUDED
        return Status.FREE

    @property
    def free_mask(self) -> int:
        return self.full & ~self.in_d & ~self.excluded

    @property
    def complete(self) -> bool:
        return self.dominated == self.full

    def members(self) -> list[int]:
        return list(iter_bits(self.in_d))

    def copy(self) -> "VertexLedger":
        dup = VertexLedger.__new__(VertexLedger)
        dup.n = self.n
        dup.full = self.full
        dup.in_d = self.in_d
        dup.excluded = self.excluded
        dup.dominated = self.dominated
        dup.dominated_by = self.dominated_by[:]
        dup.work_queue = deque(self.work_queue)
        return dup

    def restore(self, snapshot: "VertexLedger") -> None:
        self.in_d = snapshot.in_d
        self.excluded = snapshot.excluded
        self.dominated = snapshot.dominated
        self.dominated_by = snapshot.dominated_by[:]
        self.work_queue = deque(snapshot.work_queue)

    def validate(self, g: BipartiteGraph) -> None:
        assert self.in_d & self.excluded == 0
        members = list(iter_bits(self.in_d))
        for i, a in enumerate(members):
            for b in members[i + 1 :]:
                assert g.closed_mask[a] & g.closed_mask[b] == 0, (a, b)
        for d in members:
            assert g.adj_mask[d] & ~self.excluded == 0
            assert g.adj_mask[d] & ~self.dominated == 0
            two = 0
            for u in iter_bits(g.adj_mask[d]):
                two |= g.adj_mask[u]
            assert two & ~g.closed_mask[d] & ~self.excluded == 0
        for v in range(self.n):
            dom = self.dominated_by[v]
            if dom != -1:
                assert self.dominated >> v & 1
                assert self.in_d >> dom & 1
                assert g.closed_mask[v] >> dom & 1


def _tap_pre(ledger, tap):
    return ledger.copy() if tap else None


def _force(g, ledger, v, rule, fired, tap) -> str | None:
    """Commit v to the solution; returns an infeasibility witness or None."""
    if ledger.in_d >> v & 1:
        return None
    pre = _tap_pre(ledger, tap)
    if ledger.excluded >> v & 1:
        if tap:
            tap(rule, pre, None)
        return f"vertex {v} is excluded but would be forced"
    if g.closed_mask[v] & ledger.dominated:
        clash = g.closed_mask[v] & ledger.dominated
        w = (clash & -clash).bit_length() - 1
        if tap:
            tap(rule, pre, None)
        return f"forcing {v} would dominate {w} twice"
    ledger.in_d |= 1 << v
    ledger.dominated |= g.closed_mask[v]
    ledger.dominated_by[v] = v
    two_ball = 0
    for u in iter_bits(g.adj_mask[v]):
        ledger.dominated_by[u] = v
        two_ball |= g.adj_mask[u]
    ledger.excluded |= (g.adj_mask[v] | two_ball) & ~(1 << v)
    ledger.work_queue.append(v)
    fired.append((rule, (v,)))
    if tap:
        tap(rule, pre, ledger.copy())
    return None


def _exclude(g, ledger, vmask, rule, fired, tap) -> None:
    vmask &= ledger.free_mask
    if not vmask:
        return
    pre = _tap_pre(ledger, tap)
    ledger.excluded |= vmask
    fired.append((rule, tuple(iter_bits(vmask))))
    if tap:
        tap(rule, pre, ledger.copy())


def _infeasible(ledger, rule, verts, witness, fired, tap) -> RuleOutcome:
    fired.append((rule, tuple(verts)))
    if tap:
        tap(rule, ledger.copy(), None)
    return RuleOutcome(Kind.INFEASIBLE, fired, witness)


def init_ledger(g: BipartiteGraph, basis) -> tuple[VertexLedger, RuleOutcome]:
    """Ledger with the basis committed; INFEASIBLE on a distance conflict."""
    ledger = VertexLedger.fresh(g)
    members = sorted(set(basis))
    fired: list = []
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if g.closed_mask[a] & g.closed_mask[b]:
                return ledger, RuleOutcome(
                    Kind.INFEASIBLE,
                    fired,
                    f"basis vertices {a} and {b} are within distance 2",
                )
    for v in members:
        witness = _force(g, ledger, v, R_BASIS_CONFLICT if False else R_FORCE, fired, None)
        if witness is not None:
            return ledger, RuleOutcome(Kind.INFEASIBLE, fired, witness)
    return ledger, _outcome(fired)


def force_vertex(g: BipartiteGraph, ledger: VertexLedger, v: int) -> RuleOutcome:
    """Commit v: N(v) becomes dominated and excluded, N2(v) excluded."""
    fired: list = []
    witness = _force(g, ledger, v, R_FORCE, fired, None)
    if witness is not None:
        return RuleOutcome(Kind.INFEASIBLE, fired, witness)
    return _outcome(fired)


def _twin_leaf_mask(g: BipartiteGraph) -> int:
    """Vertices that are one of >= 2 degree-1 neighbors of a common support."""
    by_support: dict[int, list[int]] = {}
    for v in range(g.n):
        if g.degree(v) == 1:
            by_support.setdefault(g.adj[v][0], []).append(v)
    m = 0
    for leaves in by_support.values():
        if len(leaves) >= 2:
            m |= mask_of(leaves)
    return m


def unit_propagate(g: BipartiteGraph, ledger: VertexLedger, *, tap=None) -> RuleOutcome:
    """Fixpoint of the exact-cover unit rules.

    (a) an undominated vertex with no non-excluded candidate in N[v] is a
    contradiction, with exactly one the candidate is forced; (b) once a
    vertex is dominated, every remaining free vertex of its closed
    neighborhood is excluded.  Two same-support leaves are excluded up
    front: at most one could self-dominate, and picking either starves
    the other.
    """
    fired: list = []
    twins = _twin_leaf_mask(g) & ledger.free_mask & ~ledger.dominated
    if twins:
        _exclude(g, ledger, twins, R_TWIN_LEAVES, fired, tap)
    while True:
        changed = False
        undominated = ledger.full & ~ledger.dominated
        for v in iter_bits(undominated):
            if ledger.dominated >> v & 1:
                continue  # dominated by a force fired earlier in this sweep
            cands = g.closed_mask[v] & ~ledger.excluded
            if cands == 0:
                return _infeasible(
                    ledger, R_NO_CANDIDATE, (v,),
                    f"vertex {v} has no remaining dominator candidate",
                    fired, tap,
                )
            if cands & (cands - 1) == 0:
                w = cands.bit_length() - 1
                witness = _force(g, ledger, w, R_SOLE_CANDIDATE, fired, tap)
                if witness is not None:
                    return RuleOutcome(Kind.INFEASIBLE, fired, witness)
                changed = True
        spill = 0
        for v in iter_bits(ledger.dominated):
            spill |= g.closed_mask[v]
        spill &= ledger.free_mask & ~ledger.in_d
        # free vertices adjacent to (or equal to) a dominated one: second dominator
        to_drop = 0
        for v in iter_bits(spill):
            if g.closed_mask[v] & ledger.dominated:
                to_drop |= 1 << v
        if to_drop:
            _exclude(g, ledger, to_drop, R_DOMINATED_NEIGHBORHOOD, fired, tap)
            changed = True
        if not changed:
            break
    return _outcome(fired)
