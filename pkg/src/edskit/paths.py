"""Induced (chordless) path search: P_k-freeness tests and endpoint probes.

All searches are pure functions over immutable graphs and are safe for
concurrent use.  They are exponential only in the requested path length,
which is at most 8 everywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import BipartiteGraph, iter_bits, mask_of


@dataclass(frozen=True)
class InducedPath:
    """Ordered vertex sequence; consecutive vertices adjacent, others not."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)


def induced_path_from(g: BipartiteGraph, v: int, k: int, region) -> InducedPath | None:
    """Induced P_k with endpoint ``v`` and the other k-1 vertices in ``region``.

    Returns the lexicographically smallest such path (by vertex sequence)
    or None.  ``region`` may be an iterable of vertices or a bitmask; it
    need not contain ``v``.
    """
    region_mask = region if isinstance(region, int) else mask_of(region)
    if k <= 1:
        return InducedPath((v,)) if k == 1 else None
    found = _extend(g, [v], 1 << v, 0, region_mask, k)
    return InducedPath(tuple(found)) if found is not None else None


def _extend(g, path, path_mask, blocked, region_mask, k):
    """Depth-first extension; ``blocked`` masks neighbors of path[:-1]."""
    last = path[-1]
    cands = g.adj_mask[last] & region_mask & ~path_mask & ~blocked
    if len(path) + 1 == k:
        if cands:
            w = (cands & -cands).bit_length() - 1
            return path + [w]
        return None
    blocked_next = blocked | g.adj_mask[last]
    for w in iter_bits(cands):
        res = _extend(g, path + [w], path_mask | (1 << w), blocked_next, region_mask, k)
        if res is not None:
            return res
    return None


def is_pk_free(g: BipartiteGraph, k: int) -> bool:
    """True iff g has no induced path on k vertices (k >= 2)."""
    if k > g.n:
        return True
    full = g.full_mask
    for v in range(g.n):
        if _extend(g, [v], 1 << v, 0, full, k) is not None:
            return False
    return True


def longest_induced_path(g: BipartiteGraph, cap: int) -> int:
    """Vertex count of the longest induced path, truncated at ``cap``."""
    if g.n == 0:
        return 0
    best = 1
    full = g.full_mask
    for v in range(g.n):
        best = max(best, _longest(g, v, 1 << v, 0, full, 1, cap))
        if best >= cap:
            return cap
    return best


def _longest(g, last, path_mask, blocked, region_mask, length, cap):
    if length >= cap:
        return length
    best = length
    cands = g.adj_mask[last] & region_mask & ~path_mask & ~blocked
    blocked_next = blocked | g.adj_mask[last]
    for w in iter_bits(cands):
        got = _longest(g, w, path_mask | (1 << w), blocked_next, region_mask, length + 1, cap)
        if got > best:
            best = got
            if best >= cap:
                return best
    return best
