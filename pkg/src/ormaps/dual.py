"""Dual maps, their simplicity diagnosis, and cut structure.

The dual of a map keeps the same darts and the same edge involution; its
vertices are the faces of the original, and the rotation at a dual vertex
follows the facial walk.  Edge e and its dual e* therefore share one id,
which makes the edge bijection the identity.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass

from .core import Face, Map


@dataclass(frozen=True)
class DualReport:
    dual: Map
    loops: tuple[int, ...]  # edge ids with the same face on both sides
    multi_pairs: tuple[tuple[int, int], ...]  # face index pairs sharing >= 2 edges
    edge_bijection: tuple[tuple[int, int], ...]

    @property
    def verdict(self) -> str:
        if self.loops:
            return "loop"
        if self.multi_pairs:
            return "multi"
        return "simple"

    @property
    def simple(self) -> bool:
        return not self.loops and not self.multi_pairs


@dataclass(frozen=True)
class CutDecomposition:
    """A dual-separating edge set with one chosen side and its closed walks.

    ``walks`` lists the facial walks of the embedded subgraph formed by K,
    restricted to the darts whose left face lies in ``X_f``; together they
    visit every K edge exactly once.
    """

    K: tuple[int, ...]
    X_f: frozenset[int]
    walks: tuple[tuple[int, ...], ...]
    V_of_K: frozenset[int]


def dual(m: Map) -> DualReport:
    """Construct the dual map and diagnose its simplicity.

    Loops and multi-edges are reported, never collapsed; downstream checks
    need to know exactly which faces cause them.
    """
    fidx = m.face_index_of
    sigma_star = tuple(m.next_in_rotation[m.reverse[d]] for d in range(m.dart_count))
    labels = tuple(f"f{f.index + 1}" for f in m.faces)
    dual_map = Map(fidx, sigma_star, m.reverse, labels)

    loops = []
    between = Counter()
    for e in m.edge_ids:
        a, b = fidx[e], fidx[m.reverse[e]]
        if a == b:
            loops.append(e)
        else:
            between[(a, b) if a < b else (b, a)] += 1
    multi = tuple(sorted(pair for pair, k in between.items() if k >= 2))
    bijection = tuple((e, e) for e in m.edge_ids)
    return DualReport(dual_map, tuple(loops), multi, bijection)


def is_dual_separating(m: Map, K, side: frozenset | set | None = None):
    """Decide whether K* is an edge cut of the dual; decompose it if so.

    Returns a CutDecomposition or None.  The chosen side defaults to the
    bipartition class containing face 0; pass ``side`` (a face index set
    equal to either class) to pick the other one.
    """
    K = tuple(sorted(set(K)))
    edge_set = set(m.edge_ids)
    if not set(K) <= edge_set:
        raise ValueError("K contains ids that are not edges of the map")
    if not K:
        return None

    fidx = m.face_index_of
    face_count = len(m.faces)
    for e in K:
        if fidx[e] == fidx[m.reverse[e]]:
            return None  # a loop of the dual never crosses a partition

    # components of the dual graph with K* removed
    parent = list(range(face_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    kset = set(K)
    for e in m.edge_ids:
        if e not in kset:
            a, b = find(fidx[e]), find(fidx[m.reverse[e]])
            if a != b:
                parent[max(a, b)] = min(a, b)

    # every K edge must cross between components, and the component graph
    # must 2-color properly; otherwise K* is not exactly E[X, complement]
    adj: dict[int, list[int]] = defaultdict(list)
    for e in K:
        a, b = find(fidx[e]), find(fidx[m.reverse[e]])
        if a == b:
            return None
        adj[a].append(b)
        adj[b].append(a)
    color = {find(0): 0}
    stack = [find(0)]
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if b not in color:
                color[b] = 1 - color[a]
                stack.append(b)
            elif color[b] == color[a]:
                return None
    # the dual graph is connected, so the component graph is too; any
    # component missing from color has no K edge and no other edge, which
    # cannot happen on a valid map, but color.get keeps this total anyway
    X_f = frozenset(f for f in range(face_count) if color.get(find(f), 0) == 0)

    if side is not None:
        side = frozenset(side)
        complement = frozenset(range(face_count)) - X_f
        if side == complement:
            X_f = side
        elif side != X_f:
            raise ValueError("side is not a class of the cut bipartition")

    k_darts = set()
    for e in K:
        k_darts.add(e)
        k_darts.add(m.reverse[e])
    chosen = {e if fidx[e] in X_f else m.reverse[e] for e in K}

    def walk_successor(d: int) -> int:
        x = m.next_in_rotation[m.reverse[d]]
        while x not in k_darts:
            x = m.next_in_rotation[x]
        return x

    walks = []
    visited = set()
    for d0 in sorted(chosen):
        if d0 in visited:
            continue
        walk = []
        d = d0
        while d not in visited:
            visited.add(d)
            walk.append(d)
            d = walk_successor(d)
            assert d in chosen, "walk left the chosen dart set"
        assert d == d0, "walk closed on a different dart"
        walks.append(tuple(walk))

    v_of_k = frozenset(m.vertex_of[d] for d in k_darts)

    # separation property: with V(K) removed, no component of the primal
    # graph may touch faces on both sides of the bipartition
    side_seen: dict[int, set[int]] = {}
    comp_of: dict[int, int] = {}
    for v0 in range(m.vertex_count):
        if v0 in v_of_k or v0 in comp_of:
            continue
        comp_of[v0] = v0
        sides = set()
        stack = [v0]
        while stack:
            u = stack.pop()
            for d in m.darts_at(u):
                sides.add(0 if fidx[d] in X_f else 1)
                w = m.vertex_of[m.reverse[d]]
                if w not in v_of_k and w not in comp_of:
                    comp_of[w] = v0
                    stack.append(w)
        side_seen[v0] = sides
    assert all(len(s) == 1 for s in side_seen.values()), "V(K) fails to separate the sides"
    assert len(v_of_k) <= len(K)

    return CutDecomposition(K, X_f, tuple(walks), v_of_k)


def cut_to_edge_cut(g: Map, cut_vertices) -> tuple[frozenset[int], tuple[int, ...]]:
    """Turn a vertex cut of (usually) a dual map into a small edge cut.

    Among all component splits of g minus the cut, returns the side X with
    the fewest crossing edges (ties: smaller X, then smallest sorted vertex
    ids).  Every crossing edge touches the cut, and the cut size never
    exceeds half the degree sum of the cut vertices; works on multigraphs,
    where the degree of a dual vertex is its face size.
    """
    C = frozenset(cut_vertices)
    vertices = set(range(g.vertex_count))
    if not C or not C <= vertices:
        raise ValueError("cut vertices outside the map")
    if C == vertices:
        raise ValueError("cut covers every vertex")

    comp_of: dict[int, int] = {}
    for v in vertices - C:
        if v in comp_of:
            continue
        comp_of[v] = v
        stack = [v]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if w not in C and w not in comp_of:
                    comp_of[w] = v
                    stack.append(w)
    components: dict[int, set[int]] = defaultdict(set)
    for v, root in comp_of.items():
        components[root].add(v)
    if len(components) < 2:
        raise ValueError("vertex set is not a cut-set")

    best = None
    for root in sorted(components):
        part = components[root]
        for X in (C | part, vertices - part):
            K = tuple(
                sorted(
                    e
                    for e in g.edge_ids
                    if (g.vertex_of[e] in X) != (g.vertex_of[g.reverse[e]] in X)
                )
            )
            key = (len(K), len(X), tuple(sorted(X)))
            if best is None or key < best[0]:
                best = (key, frozenset(X), K)

    _, X, K = best
    assert all(g.vertex_of[e] in C or g.vertex_of[g.reverse[e]] in C for e in K)
    assert len(K) <= sum(g.degree(v) for v in C) // 2
    return X, K


def doubly_intersecting(m: Map, f: Face | int, f2: Face | int) -> bool:
    """Whether one face's walk meets the other's vertices at two places or more.

    A vertex visited twice counts twice; the test is applied in both
    directions, so a triangle against a large face revisiting one shared
    vertex still qualifies.
    """
    fa = m.faces[f] if isinstance(f, int) else f
    fb = m.faces[f2] if isinstance(f2, int) else f2
    if fa.index == fb.index:
        raise ValueError("doubly_intersecting needs two distinct faces")
    va = {m.vertex_of[d] for d in fa.darts}
    vb = {m.vertex_of[d] for d in fb.darts}
    hits_ab = sum(1 for d in fa.darts if m.vertex_of[d] in vb)
    hits_ba = sum(1 for d in fb.darts if m.vertex_of[d] in va)
    return hits_ab >= 2 or hits_ba >= 2
