"""Vertex connectivity and small cut-set enumeration.

Two independent routes compute kappa: exhaustive subset deletion (the
oracle, default for at most 10 vertices) and unit-capacity vertex-split
max-flow (for everything larger).  Inputs may be Map instances or plain
adjacency sequences; multiplicities and embeddings are irrelevant here, so
everything is collapsed to neighbor sets first.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .core import Face, Map

BRUTEFORCE_LIMIT = 10

Adjacency = tuple[frozenset[int], ...]


def adjacency_of(g: Map | Sequence[Iterable[int]]) -> Adjacency:
    """Neighbor sets of a Map or of a raw adjacency sequence (loops dropped)."""
    if isinstance(g, Map):
        return g.adjacency
    return tuple(frozenset(w for w in nbrs if w != v) for v, nbrs in enumerate(g))


def _components(adj: Adjacency, removed: frozenset[int] = frozenset()) -> list[set[int]]:
    comps = []
    seen = set(removed)
    for v in range(len(adj)):
        if v in seen:
            continue
        comp = {v}
        seen.add(v)
        stack = [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def _require_connected(adj: Adjacency) -> None:
    if len(adj) < 2:
        raise ValueError("connectivity needs at least 2 vertices")
    if len(_components(adj)) != 1:
        raise ValueError("graph is disconnected")


def _is_complete(adj: Adjacency) -> bool:
    n = len(adj)
    return all(len(adj[v]) == n - 1 for v in range(n))


def _disconnects(adj: Adjacency, cut: frozenset[int]) -> bool:
    if len(cut) >= len(adj) - 1:
        return False
    return len(_components(adj, cut)) >= 2


def vertex_connectivity_bruteforce(g) -> int:
    """kappa by deleting every vertex subset in increasing size order."""
    adj = adjacency_of(g)
    _require_connected(adj)
    n = len(adj)
    if _is_complete(adj):
        return n - 1
    for k in range(1, n - 1):
        for cut in itertools.combinations(range(n), k):
            if _disconnects(adj, frozenset(cut)):
                return k
    return n - 1


def _st_flow(adj: Adjacency, s: int, t: int) -> int:
    """Max internally-disjoint s-t paths via vertex-split Edmonds-Karp."""
    n = len(adj)
    cap: dict[tuple[int, int], int] = defaultdict(int)
    out_arcs: dict[int, list[int]] = defaultdict(list)

    def add(u: int, v: int, c: int) -> None:
        if cap[(u, v)] == 0 and cap[(v, u)] == 0:
            out_arcs[u].append(v)
            out_arcs[v].append(u)
        cap[(u, v)] += c

    # node v splits into 2v (in) and 2v+1 (out); interior capacity 1
    for v in range(n):
        add(2 * v, 2 * v + 1, n if v in (s, t) else 1)
    for u in range(n):
        for w in adj[u]:
            if u < w:
                add(2 * u + 1, 2 * w, 1)
                add(2 * w + 1, 2 * u, 1)

    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while True:
        parent: dict[int, int | None] = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            u = queue.popleft()
            for v in out_arcs[u]:
                if v not in parent and cap[(u, v)] > 0:
                    parent[v] = u
                    queue.append(v)
        if sink not in parent:
            return flow
        v = sink
        while parent[v] is not None:
            u = parent[v]
            cap[(u, v)] -= 1
            cap[(v, u)] += 1
            v = u
        flow += 1


def vertex_connectivity_flow(g) -> int:
    """kappa by max-flow.

    A minimum cut either misses some fixed vertex v0, in which case v0 is
    separated from a non-neighbor, or contains v0, in which case two of
    v0's neighbors in different components are non-adjacent.  Both families
    of flows are taken; complete graphs short-circuit to n-1.
    """
    adj = adjacency_of(g)
    _require_connected(adj)
    n = len(adj)
    if _is_complete(adj):
        return n - 1
    v0 = min(range(n), key=lambda v: (len(adj[v]), v))
    best = n - 1
    for t in range(n):
        if t != v0 and t not in adj[v0]:
            best = min(best, _st_flow(adj, v0, t))
    for x, y in itertools.combinations(sorted(adj[v0]), 2):
        if y not in adj[x]:
            best = min(best, _st_flow(adj, x, y))
    return best


def vertex_connectivity(g) -> int:
    adj = adjacency_of(g)
    if len(adj) <= BRUTEFORCE_LIMIT:
        return vertex_connectivity_bruteforce(adj)
    return vertex_connectivity_flow(adj)


def _enumerate_cutsets(adj: Adjacency, k: int, cap: int) -> tuple[list[frozenset[int]], bool]:
    cuts: list[frozenset[int]] = []
    n = len(adj)
    for size in range(1, min(k, n - 2) + 1):
        for combo in itertools.combinations(range(n), size):
            cut = frozenset(combo)
            if any(found <= cut for found in cuts):
                continue  # smaller cut inside; not inclusion-minimal
            if _disconnects(adj, cut):
                if len(cuts) >= cap:
                    return cuts, True
                cuts.append(cut)
    return cuts, False


def find_cutsets(g, k: int, cap: int = 10_000) -> list[frozenset[int]]:
    """All inclusion-minimal cut-sets of size at most k.

    Deterministic: sizes ascending, lexicographic vertex order within a
    size.  Truncated at ``cap`` entries; use cut_inventory to see whether
    truncation happened.
    """
    adj = adjacency_of(g)
    _require_connected(adj)
    cuts, _ = _enumerate_cutsets(adj, k, cap)
    return cuts


@dataclass(frozen=True)
class CutInventory:
    connectivity: int
    min_cuts: tuple[frozenset[int], ...]
    cap: int
    capped: bool


def cut_inventory(g, cap: int = 10_000) -> CutInventory:
    """kappa together with the minimum cut-sets realizing it."""
    adj = adjacency_of(g)
    kappa = vertex_connectivity(adj)
    if _is_complete(adj):
        return CutInventory(kappa, (), cap, False)
    cuts, capped = _enumerate_cutsets(adj, kappa, cap)
    return CutInventory(kappa, tuple(cuts), cap, capped)


def is_separating_cycle(m: Map, cycle) -> bool:
    """Whether the cycle's vertex set is a cut-set of the map's graph.

    ``cycle`` is a vertex sequence or a Face whose walk visits distinct
    vertices.  Consecutive vertices must be adjacent (closing edge
    included); anything else is rejected, not coerced.
    """
    if isinstance(cycle, Face):
        verts = [m.vertex_of[d] for d in cycle.darts]
    else:
        verts = list(cycle)
    if len(verts) < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    if len(set(verts)) != len(verts):
        raise ValueError("walk repeats a vertex; not a cycle")
    adj = m.adjacency
    for a, b in zip(verts, verts[1:] + verts[:1]):
        if b not in adj[a]:
            raise ValueError(f"consecutive cycle vertices {a},{b} are not adjacent")
    removed = frozenset(verts)
    remaining = len(adj) - len(removed)
    if remaining == 0:
        return False
    return len(_components(adj, removed)) >= 2
