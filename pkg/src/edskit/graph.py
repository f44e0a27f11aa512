"""Immutable bipartite graphs, components, and multi-source distance levels."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

BLACK = 0
WHITE = 1

#: Level value for vertices unreachable from the basis.
UNREACHED = -1

#: Distance between vertices in different components.
INFINITE = math.inf


class GraphError(Exception):
    """Base class for all errors raised by this package."""


class SelfLoop(GraphError):
    def __init__(self, v: int):
        super().__init__(f"self-loop at vertex {v}")
        self.vertex = v


class DuplicateEdge(GraphError):
    def __init__(self, u: int, v: int):
        super().__init__(f"duplicate edge ({u}, {v})")
        self.edge = (u, v)


class NotBipartite(GraphError):
    """The input contains an odd cycle; ``cycle`` lists its vertices in order."""

    def __init__(self, cycle: list[int]):
        super().__init__(f"not bipartite: odd cycle {cycle}")
        self.cycle = cycle


class EmptyBasis(GraphError):
    def __init__(self):
        super().__init__("distance levels require a nonempty basis")


def iter_bits(mask: int):
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class BipartiteGraph:
    """Vertex-colored adjacency structure, immutable after construction.

    Vertices are dense ints ``0..n-1``.  ``adj[v]`` is the sorted neighbor
    tuple of ``v`` and ``color[v]`` is BLACK or WHITE, with every edge
    joining a BLACK vertex to a WHITE one.  ``adj_mask[v]`` / ``closed_mask[v]``
    hold N(v) / N[v] as bitmasks; graph values are safe to share between
    threads.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    color: tuple[int, ...]
    adj_mask: tuple[int, ...] = field(repr=False, compare=False)
    closed_mask: tuple[int, ...] = field(repr=False, compare=False)
    black_mask: int = field(repr=False, compare=False)
    white_mask: int = field(repr=False, compare=False)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, ascending."""
        out = []
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    out.append((u, v))
        return out

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj_mask[u] >> v & 1)

    def side_mask(self, color: int) -> int:
        return self.black_mask if color == BLACK else self.white_mask


def build_graph(n: int, edges) -> BipartiteGraph:
    """Build a bipartite graph from an edge list.

    The 2-coloring is always computed, never trusted from the input: each
    component is traversed breadth-first from its lowest vertex id, which
    is colored BLACK.  Raises NotBipartite (with an odd-cycle witness),
    SelfLoop, DuplicateEdge, or GraphError for malformed ids.
    """
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    adjsets: list[set[int]] = [set() for _ in range(n)]
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise SelfLoop(u)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdge(*key)
        seen.add(key)
        adjsets[u].add(v)
        adjsets[v].add(u)

    color = [UNREACHED] * n
    parent = [-1] * n
    for root in range(n):
        if color[root] != UNREACHED:
            continue
        color[root] = BLACK
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(adjsets[u]):
                if color[w] == UNREACHED:
                    color[w] = color[u] ^ 1
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    raise NotBipartite(_odd_cycle(parent, u, w))

    adj = tuple(tuple(sorted(s)) for s in adjsets)
    amask = tuple(mask_of(a) for a in adj)
    cmask = tuple(m | (1 << v) for v, m in enumerate(amask))
    black = mask_of(v for v in range(n) if color[v] == BLACK)
    return BipartiteGraph(
        n=n,
        adj=adj,
        color=tuple(color),
        adj_mask=amask,
        closed_mask=cmask,
        black_mask=black,
        white_mask=((1 << n) - 1) & ~black,
    )


def _odd_cycle(parent: list[int], u: int, w: int) -> list[int]:
    """Reconstruct the odd cycle closed by the non-tree edge (u, w)."""
    anc_u = [u]
    x = u
    while parent[x] != -1:
        x = parent[x]
        anc_u.append(x)
    pos = {v: i for i, v in enumerate(anc_u)}
    path_w = [w]
    y = w
    while y not in pos:
        y = parent[y]
        path_w.append(y)
    # u .. meet followed by the w-branch walked back down to w
    return anc_u[: pos[y] + 1] + path_w[-2::-1]


def connected_components(g: BipartiteGraph) -> tuple[tuple[int, ...], ...]:
    """Maximal connected vertex sets, ordered by minimum vertex id."""
    out = []
    unseen = g.full_mask
    while unseen:
        root = (unseen & -unseen).bit_length() - 1
        comp = 1 << root
        frontier = comp
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj_mask[v]
            frontier = nxt & ~comp
            comp |= frontier
        out.append(tuple(iter_bits(comp)))
        unseen &= ~comp
    return tuple(out)


def induced_subgraph(g: BipartiteGraph, vertices) -> tuple[BipartiteGraph, tuple[int, ...]]:
    """Induced subgraph on ``vertices`` with dense relabeling.

    Returns (subgraph, mapping) where mapping[i] is the original id of
    subgraph vertex i.  The subgraph's coloring is recomputed and may
    differ from the parent's.
    """
    mapping = tuple(sorted(vertices))
    index = {v: i for i, v in enumerate(mapping)}
    edges = [
        (index[u], index[v])
        for u in mapping
        for v in g.adj[u]
        if u < v and v in index
    ]
    return build_graph(len(mapping), edges), mapping


@dataclass(frozen=True)
class DistanceLevels:
    """Partition of vertices into BFS distance levels from a basis set.

    ``level_of[v]`` is the distance from v to the basis or UNREACHED;
    ``levels[i]`` / ``masks[i]`` hold level i as a frozenset / bitmask.
    ``cache`` is scratch space for per-leveling derived data and takes no
    part in equality.
    """

    basis: frozenset[int]
    level_of: tuple[int, ...]
    levels: tuple[frozenset[int], ...]
    masks: tuple[int, ...] = field(repr=False)
    cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def max_level(self) -> int:
        return len(self.levels) - 1

    def mask(self, i: int) -> int:
        return self.masks[i] if 0 <= i < len(self.masks) else 0

    def mask_from(self, i: int) -> int:
        m = 0
        for j in range(i, len(self.masks)):
            m |= self.masks[j]
        return m


def bfs_levels(g: BipartiteGraph, basis) -> DistanceLevels:
    """Distance levels of the basis set; UNREACHED marks other components."""
    basis = sorted(set(basis))
    if not basis:
        raise EmptyBasis()
    for v in basis:
        if not 0 <= v < g.n:
            raise GraphError(f"basis vertex {v} out of range for n={g.n}")
    level_of = [UNREACHED] * g.n
    frontier = mask_of(basis)
    seen = frontier
    masks = []
    lvl = 0
    while frontier:
        masks.append(frontier)
        for v in iter_bits(frontier):
            level_of[v] = lvl
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.adj_mask[v]
        frontier = nxt & ~seen
        seen |= frontier
        lvl += 1
    return DistanceLevels(
        basis=frozenset(basis),
        level_of=tuple(level_of),
        levels=tuple(frozenset(iter_bits(m)) for m in masks),
        masks=tuple(masks),
    )


def is_join(g: BipartiteGraph, v: int, u_set) -> bool:
    """True iff v is adjacent to every vertex of u_set (vacuously true for {})."""
    m = u_set if isinstance(u_set, int) else mask_of(u_set)
    return m & ~g.adj_mask[v] == 0


def distance(g: BipartiteGraph, u: int, v: int):
    """Shortest-path edge count between u and v; INFINITE across components."""
    for w in (u, v):
        if not 0 <= w < g.n:
            raise GraphError(f"vertex {w} out of range for n={g.n}")
    if u == v:
        return 0
    row = distance_row(g, u)
    return row[v] if row[v] != UNREACHED else INFINITE


def distance_row(g: BipartiteGraph, source: int) -> tuple[int, ...]:
    """BFS distances from ``source``; UNREACHED for other components."""
    dist = [UNREACHED] * g.n
    dist[source] = 0
    frontier = 1 << source
    seen = frontier
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.adj_mask[v]
        frontier = nxt & ~seen
        seen |= frontier
        for v in iter_bits(frontier):
            dist[v] = d
    return tuple(dist)
