"""Exhaustive efficient-domination oracle.

Ground truth for differential testing: a backtracking exact-cover search
over closed neighborhoods.  Works on arbitrary graphs, not only bipartite
ones, so it can also validate generators; BipartiteGraph values are
accepted through a widening adapter alongside plain adjacency lists.

Practical limits: full enumeration to roughly 25 vertices, existence
checks (has_eds) to roughly 40.  Every call is stateless, so callers may
run many oracle queries concurrently on different instances.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import BipartiteGraph, iter_bits, mask_of

UNBOUNDED = None


@dataclass(frozen=True)
class EdsCertificate:
    """A vertex set claimed to dominate every vertex exactly once."""

    members: frozenset[int]

    @property
    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def __contains__(self, v: int) -> bool:
        return v in self.members


@dataclass(frozen=True)
class CertificateCheck:
    """verify_certificate verdict; ``violations`` lists (vertex, coverage)."""

    valid: bool
    violations: tuple[tuple[int, int], ...]


def _closed_masks(g) -> tuple[int, list[int]]:
    """Widening adapter: BipartiteGraph or any sequence of neighbor iterables."""
    if isinstance(g, BipartiteGraph):
        return g.n, list(g.closed_mask)
    adj = [mask_of(nbrs) for nbrs in g]
    return len(adj), [m | (1 << v) for v, m in enumerate(adj)]


def enumerate_eds(g, max_count: int | None = UNBOUNDED) -> list[EdsCertificate]:
    """All efficient dominating sets of g, up to ``max_count``.

    Backtracking: pick the lowest undominated vertex v and branch on each
    candidate dominator in N[v] that would not cover an already-dominated
    vertex.  Branches are disjoint (v's dominator is unique per solution),
    so the search is duplicate-free.  Results are sorted lexicographically;
    the enumeration is complete whenever fewer than ``max_count`` sets are
    returned.
    """
    return enumerate_extensions(g, max_count=max_count)


def enumerate_extensions(
    g,
    forced=(),
    excluded=(),
    max_count: int | None = UNBOUNDED,
) -> list[EdsCertificate]:
    """Efficient dominating sets containing ``forced`` and avoiding ``excluded``.

    The restriction mirrors a solver ledger's commitments, which makes this
    the reference for checking that reduction rules preserve the solution
    set.  An infeasible commitment pair yields [].
    """
    n, nmask = _closed_masks(g)
    full = (1 << n) - 1
    banned = mask_of(excluded)
    forced = sorted(set(forced))
    if any(banned >> v & 1 for v in forced):
        return []
    dominated = 0
    for v in forced:
        if nmask[v] & dominated:
            return []
        dominated |= nmask[v]

    results: list[tuple[int, ...]] = []
    chosen = list(forced)

    def backtrack(dominated: int) -> bool:
        if max_count is not UNBOUNDED and len(results) >= max_count:
            return True
        if dominated == full:
            results.append(tuple(sorted(chosen)))
            return max_count is not UNBOUNDED and len(results) >= max_count
        low = ~dominated & full
        v = (low & -low).bit_length() - 1
        for w in iter_bits(nmask[v] & ~banned):
            if nmask[w] & dominated:
                continue
            chosen.append(w)
            stop = backtrack(dominated | nmask[w])
            chosen.pop()
            if stop:
                return True
        return False

    backtrack(dominated)
    results.sort()
    return [EdsCertificate(frozenset(r)) for r in results]


def has_eds(g) -> bool:
    """Whether g has an efficient dominating set."""
    return bool(enumerate_eds(g, max_count=1))


def verify_certificate(g, d) -> CertificateCheck:
    """Independent recount that every vertex sees exactly one member of d."""
    n, nmask = _closed_masks(g)
    dmask = mask_of(d)
    violations = []
    for v in range(n):
        cover = (nmask[v] & dmask).bit_count()
        if cover != 1:
            violations.append((v, cover))
    return CertificateCheck(valid=not violations, violations=tuple(violations))
