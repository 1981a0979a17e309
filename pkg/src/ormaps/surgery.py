"""Cut-and-paste operations on maps.

Every operation rebuilds the rotation system through core.assemble and then
checks its own arithmetic (vertex, edge, face and genus deltas), so a bug
cannot silently hand back a surface of the wrong kind.  The module ends with
two composite pipelines that manufacture certified witnesses: maps whose
simple dual has a cut vertex.
"""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Hashable, Sequence
from dataclasses import dataclass

from .bounds import one_cut_size_threshold
from .connectivity import adjacency_of, find_cutsets, vertex_connectivity
from .core import (
    Face,
    Map,
    assemble,
    face_size_multiset,
    from_rotations,
    genus,
    validate,
    walk_vertices,
)
from .dual import dual


class SurgeryError(ValueError):
    """A surgery precondition failed or a construction missed its target."""


@dataclass(frozen=True)
class GlueSpec:
    """How to identify two equal-size faces.

    ``offset`` rotates the second walk: vertex i of the first walk lands on
    vertex (offset - i) of the second.  The subtraction keeps the two
    orientations consistent across the seam; ``mirror_b`` flips the second
    map first, reaching the alignments the subtraction alone cannot.
    """

    face_a: Face | int
    face_b: Face | int
    offset: int = 0
    mirror_b: bool = False


@dataclass(frozen=True)
class GlueResult:
    map: Map
    seam_edges: tuple[int, ...]
    vertex_map_a: dict[int, int]
    vertex_map_b: dict[int, int]


@dataclass(frozen=True)
class FillResult:
    map: Map
    inner_face_index: int


@dataclass(frozen=True)
class InsertResult:
    map: Map
    big_face_index: int
    small_face_index: int


@dataclass(frozen=True)
class PipelineReport:
    """Plain-text provenance for a composite construction."""

    entries: tuple[tuple[str, str], ...]

    def lines(self) -> list[str]:
        return [f"{key}: {value}" for key, value in self.entries]


@dataclass(frozen=True)
class PipelineOutcome:
    map: Map
    report: PipelineReport


# -- small helpers ---------------------------------------------------------------


def _face_of(m: Map, f: Face | int) -> Face:
    if isinstance(f, Face):
        if f.index >= len(m.faces) or m.faces[f.index].darts != f.darts:
            raise SurgeryError("face does not belong to this map")
        return m.faces[f.index]
    if not 0 <= f < len(m.faces):
        raise SurgeryError(f"no face with index {f}")
    return m.faces[f]


def _require_simple_cycle(m: Map, f: Face) -> tuple[int, ...]:
    verts = walk_vertices(m, f.darts)
    if f.size < 3 or len(set(verts)) != f.size:
        raise SurgeryError(f"face {f.index} is not a simple cycle")
    return verts


def _rotation_from(m: Map, d: int) -> list[int]:
    """Darts at d's vertex in rotation order, starting just after d, without d."""
    cyc = m.rotations[m.vertex_of[d]]
    i = cyc.index(d)
    n = len(cyc)
    return [cyc[(i + j) % n] for j in range(1, n)]


def _insert_before(cycle: Sequence, anchor, new: Sequence) -> list:
    out: list = []
    for d in cycle:
        if d == anchor:
            out.extend(new)
        out.append(d)
    return out


def _faces_with_vertices(m: Map, size: int, vset: set[int]) -> list[int]:
    return [
        f.index
        for f in m.faces
        if f.size == size and set(walk_vertices(m, f.darts)) == vset
    ]


# -- elementary operations -------------------------------------------------------


def delete_vertex(m: Map, v: int) -> Map:
    """Remove one vertex with its edges, keeping the remaining rotations.

    The corners that met at v open into a hole; when they belonged to
    pairwise distinct faces those faces merge into one and the genus is
    unchanged, otherwise Euler's formula decides.
    """
    if not 0 <= v < m.vertex_count:
        raise SurgeryError(f"no vertex {v}")
    kept = {
        d
        for d in range(m.dart_count)
        if m.vertex_of[d] != v and m.vertex_of[m.reverse[d]] != v
    }
    rotations: dict[int, list] = {}
    for u in range(m.vertex_count):
        if u == v:
            continue
        rot = [d for d in m.rotations[u] if d in kept]
        if not rot:
            raise SurgeryError(f"deleting vertex {v} isolates vertex {u}")
        rotations[u - 1 if u > v else u] = rot
    if not rotations:
        raise SurgeryError("cannot delete the only vertex")
    mate = {d: m.reverse[d] for d in kept}
    out, _ = assemble(rotations, mate)
    if not validate(out).ok:
        raise SurgeryError(f"deleting vertex {v} disconnects the map")
    return out


def _subdivide(m: Map, d0: int) -> tuple[Map, dict[Hashable, int]]:
    d0 = m.edge_id(d0)  # either dart names the edge; normalize for determinism
    d1 = m.reverse[d0]
    rotations: dict[int, list] = {u: list(m.rotations[u]) for u in range(m.vertex_count)}
    rotations[m.vertex_count] = [("mid", 0), ("mid", 1)]
    mate: dict[Hashable, Hashable] = {
        d: m.reverse[d] for d in range(m.dart_count) if d not in (d0, d1)
    }
    mate[d0] = ("mid", 0)
    mate[("mid", 0)] = d0
    mate[d1] = ("mid", 1)
    mate[("mid", 1)] = d1
    return assemble(rotations, mate)


def subdivide_edge(m: Map, e: int) -> Map:
    """Insert a degree-2 vertex on the edge named by either of its darts.

    Both incident faces grow by one; the genus stays put.
    """
    if not 0 <= e < m.dart_count:
        raise SurgeryError(f"no dart {e}")
    return _subdivide(m, e)[0]


def subdivide_edges(m: Map, edges: Sequence[int]) -> Map:
    """Subdivide several distinct edges of the original map."""
    for e in edges:
        if not 0 <= e < m.dart_count:
            raise SurgeryError(f"no dart {e}")
    pending = sorted({m.edge_id(e) for e in edges})
    if len(pending) != len(edges):
        raise SurgeryError("edge list names an edge twice")
    current = m
    while pending:
        head, *rest = pending
        current, ids = _subdivide(current, head)
        # old dart numbers are the tokens, so survivors translate through ids
        pending = [ids[d] for d in rest]
    return current


def wedge_at_vertex(a: Map, va: int, b: Map, vb: int) -> Map:
    """One-point union: b's rotation at vb is spliced after a's at va.

    Exactly one face of each map merges with one of the other (the two
    faces whose corner sits at the splice point), so F = Fa + Fb - 1 and
    the genus adds.
    """
    if not 0 <= va < a.vertex_count:
        raise SurgeryError(f"no vertex {va} in the first map")
    if not 0 <= vb < b.vertex_count:
        raise SurgeryError(f"no vertex {vb} in the second map")
    vmap_b: dict[int, int] = {}
    fresh = a.vertex_count
    for w in range(b.vertex_count):
        if w == vb:
            vmap_b[w] = va
        else:
            vmap_b[w] = fresh
            fresh += 1
    rotations: dict[int, list] = {
        u: [("a", d) for d in a.rotations[u]] for u in range(a.vertex_count)
    }
    for w in range(b.vertex_count):
        toks = [("b", d) for d in b.rotations[w]]
        if w == vb:
            rotations[va].extend(toks)
        else:
            rotations[vmap_b[w]] = toks
    mate: dict = {("a", d): ("a", a.reverse[d]) for d in range(a.dart_count)}
    mate.update({("b", d): ("b", b.reverse[d]) for d in range(b.dart_count)})
    out, _ = assemble(rotations, mate)
    assert out.vertex_count == a.vertex_count + b.vertex_count - 1
    assert len(out.faces) == len(a.faces) + len(b.faces) - 1
    assert genus(out) == genus(a) + genus(b)
    return out


def wheel(rim: int) -> Map:
    """Plane wheel: hub 0 joined to the rim cycle 1..rim."""
    if rim < 3:
        raise SurgeryError("a wheel needs at least three rim vertices")
    rots: list[list[int]] = [list(range(1, rim + 1))]
    for v in range(1, rim + 1):
        prv = (v - 2) % rim + 1
        nxt = v % rim + 1
        rots.append([0, prv, nxt])
    return from_rotations(rots)


def k4_wedge() -> Map:
    """Two plane complete maps on four vertices sharing a single vertex."""
    return wedge_at_vertex(wheel(3), 0, wheel(3), 0)


# -- the witness core ------------------------------------------------------------

_GADGET_FACES = {3: (3, 6, 9), 5: (5, 5, 10), 6: (3, 3, 6, 12), 7: (7, 7, 14)}


def cycle_square_gadget_raw(c: int) -> Map:
    """Cycle plus chords to both second neighbors, with one fixed rotation.

    Vertex i's clockwise order is i-2, i-1, i+1, i+2 (mod c), and dart
    4*i+s is slot s of that list.  For c = 3 and c = 4 the chord family
    collides with cycle edges, producing parallel pairs; callers subdivide
    those away.
    """
    if c < 3:
        raise SurgeryError("the gadget needs at least three vertices")
    rotations = {i: [(i, s) for s in range(4)] for i in range(c)}
    mate: dict = {}
    for i in range(c):
        step = (i + 1) % c
        jump = (i + 2) % c
        mate[(i, 2)] = (step, 1)
        mate[(step, 1)] = (i, 2)
        mate[(i, 3)] = (jump, 0)
        mate[(jump, 0)] = (i, 3)
    out, _ = assemble(rotations, mate)
    return out


def cycle_square_gadget(c: int) -> Map:
    """The core of the one-cut witness: one big face plus small satellite faces.

    Face sizes come out as {9,6,3} for c=3, {2c,c,c} for c in {5,7} and
    {12,6,3,3} for c=6, with every small face sharing edges only with the
    big one.  Both properties are re-checked here after construction.
    """
    if c not in _GADGET_FACES:
        raise SurgeryError(f"no gadget for connectivity {c}; supported: 3, 5, 6, 7")
    out = cycle_square_gadget_raw(c)
    if c == 3:
        out = subdivide_edges(out, [4 * i + 3 for i in range(3)])
    assert face_size_multiset(out) == _GADGET_FACES[c]
    big = max(out.faces, key=lambda f: f.size).index
    for e in out.edge_ids:
        sides = {out.face_index_of[e], out.face_index_of[out.reverse[e]]}
        assert big in sides, "a satellite face touched something other than the core"
    return out


# -- gluing ----------------------------------------------------------------------


def glue_faces(a: Map, b: Map, spec: GlueSpec, *, require_simple: bool = True) -> GlueResult:
    """Remove one face from each map and sew the boundaries together.

    The maps are treated as disjoint copies (passing the same object twice
    glues two copies).  Both boundaries must be simple cycles of equal
    length m; afterwards V = Va+Vb-m, E = Ea+Eb-m, F = Fa+Fb-2, so the
    genus adds.  Every seam edge separates a former a-face from a former
    b-face.
    """
    fa = _face_of(a, spec.face_a)
    fb = _face_of(b, spec.face_b)
    if spec.mirror_b:
        d0 = fb.darts[0]
        b = b.mirror()
        fb = b.face_of_dart(b.reverse[d0])
    ua = _require_simple_cycle(a, fa)
    ub = _require_simple_cycle(b, fb)
    size = fa.size
    if fb.size != size:
        raise SurgeryError(f"cannot glue a {fa.size}-gon to a {fb.size}-gon")
    psi = [(spec.offset - i) % size for i in range(size)]

    vmap_b: dict[int, int] = {}
    for i in range(size):
        vmap_b[ub[psi[i]]] = ua[i]
    fresh = a.vertex_count
    for w in range(b.vertex_count):
        if w not in vmap_b:
            vmap_b[w] = fresh
            fresh += 1

    on_a = set(ua)
    on_b = set(ub)
    rotations: dict[int, list] = {}
    for u in range(a.vertex_count):
        if u not in on_a:
            rotations[u] = [("a", d) for d in a.rotations[u]]
    for w in range(b.vertex_count):
        if w not in on_b:
            rotations[vmap_b[w]] = [("b", d) for d in b.rotations[w]]
    for i in range(size):
        cut_a = [("a", d) for d in _rotation_from(a, fa.darts[i])]
        cut_b = [("b", d) for d in _rotation_from(b, fb.darts[psi[i]])]
        rotations[ua[i]] = cut_a + cut_b

    dead_a = set(fa.darts)
    dead_b = set(fb.darts)
    mate: dict = {}
    for d in range(a.dart_count):
        if d not in dead_a and a.reverse[d] not in dead_a:
            mate[("a", d)] = ("a", a.reverse[d])
    for d in range(b.dart_count):
        if d not in dead_b and b.reverse[d] not in dead_b:
            mate[("b", d)] = ("b", b.reverse[d])
    seam_tokens = []
    for i in range(size):
        ra = ("a", a.reverse[fa.darts[i]])
        rb = ("b", b.reverse[fb.darts[(psi[i] - 1) % size]])
        mate[ra] = rb
        mate[rb] = ra
        seam_tokens.append(ra)

    out, ids = assemble(rotations, mate)
    assert out.vertex_count == a.vertex_count + b.vertex_count - size
    assert out.edge_count == a.edge_count + b.edge_count - size
    assert len(out.faces) == len(a.faces) + len(b.faces) - 2
    assert genus(out) == genus(a) + genus(b)
    assert validate(out).ok
    if require_simple and not out.is_simple_graph():
        raise SurgeryError("gluing created parallel edges")
    seam = tuple(sorted(out.edge_id(ids[t]) for t in seam_tokens))
    return GlueResult(out, seam, {u: u for u in range(a.vertex_count)}, vmap_b)


def glue_faces_self(
    m: Map, face_a: Face | int, face_b: Face | int, offset: int = 0, *, require_simple: bool = True
) -> GlueResult:
    """Sew two vertex-disjoint faces of one map together, adding a handle.

    Same walk alignment rule as glue_faces; V and E drop by the face size,
    F drops by 2, and the genus rises by exactly one.
    """
    fa = _face_of(m, face_a)
    fb = _face_of(m, face_b)
    if fa.index == fb.index:
        raise SurgeryError("cannot glue a face to itself")
    ua = _require_simple_cycle(m, fa)
    ub = _require_simple_cycle(m, fb)
    size = fa.size
    if fb.size != size:
        raise SurgeryError(f"cannot glue a {fa.size}-gon to a {fb.size}-gon")
    if set(ua) & set(ub):
        raise SurgeryError("the faces share vertices")
    psi = [(offset - i) % size for i in range(size)]

    gone = set(ub)
    newid: dict[int, int] = {}
    for u in range(m.vertex_count):
        if u not in gone:
            newid[u] = len(newid)
    vmap = dict(newid)
    for i in range(size):
        vmap[ub[psi[i]]] = newid[ua[i]]

    on_a = set(ua)
    rotations: dict[int, list] = {}
    for u in range(m.vertex_count):
        if u in gone or u in on_a:
            continue
        rotations[newid[u]] = list(m.rotations[u])
    for i in range(size):
        rotations[newid[ua[i]]] = _rotation_from(m, fa.darts[i]) + _rotation_from(
            m, fb.darts[psi[i]]
        )

    dead = set(fa.darts) | set(fb.darts)
    mate: dict = {
        d: m.reverse[d]
        for d in range(m.dart_count)
        if d not in dead and m.reverse[d] not in dead
    }
    seam_tokens = []
    for i in range(size):
        ra = m.reverse[fa.darts[i]]
        rb = m.reverse[fb.darts[(psi[i] - 1) % size]]
        mate[ra] = rb
        mate[rb] = ra
        seam_tokens.append(ra)

    out, ids = assemble(rotations, mate)
    assert out.vertex_count == m.vertex_count - size
    assert out.edge_count == m.edge_count - size
    assert len(out.faces) == len(m.faces) - 2
    assert genus(out) == genus(m) + 1
    assert validate(out).ok
    if require_simple:
        if any(u == w for u, w in map(out.endpoints, out.edge_ids)):
            raise SurgeryError("gluing created a loop")
        if not out.is_simple_graph():
            raise SurgeryError("gluing created parallel edges")
    seam = tuple(sorted(out.edge_id(ids[t]) for t in seam_tokens))
    return GlueResult(out, seam, vmap, vmap)


# -- filling a big face ----------------------------------------------------------


def interior_fill(host: Map, face: Face | int, c: int, l: int, *, verify: bool = True) -> FillResult:
    """Plant an l-cycle of new vertices inside a big face, fanned to the rim.

    The boundary, a chordless simple cycle of size at least l*(c-1), splits
    into l arcs; inner vertex i fans out to every vertex of arc i, with the
    last arc absorbing the remainder.  All created faces are triangles
    except the inner l-gon, which stays chordless and meets each face in at
    most one edge.  With ``verify`` the host must be c-connected and the
    result is checked to still be.
    """
    f = _face_of(host, face)
    if l < 3:
        raise SurgeryError("the inner cycle needs length at least 3")
    if c < 2:
        raise SurgeryError("the connectivity target must be at least 2")
    verts = _require_simple_cycle(host, f)
    cp = f.size
    if cp < l * (c - 1):
        raise SurgeryError(f"face of size {cp} is too small; need {l * (c - 1)}")
    vset = set(verts)
    for j in range(cp):
        rim_nbrs = {verts[(j + 1) % cp], verts[(j - 1) % cp]}
        if (host.adjacency[verts[j]] & vset) - rim_nbrs:
            raise SurgeryError("face has a chord")
    if verify and vertex_connectivity(host) < c:
        raise SurgeryError(f"host is not {c}-connected")

    arcs = [list(range(i * (c - 1), (i + 1) * (c - 1) + 1)) for i in range(l - 1)]
    arcs.append(list(range((l - 1) * (c - 1), cp + 1)))  # index cp wraps to vertex 0

    inserts: dict[int, list] = {j: [] for j in range(cp)}
    for i, arc in enumerate(arcs):
        for j in arc:
            inserts[j % cp].append((i, j))
    for j, entries in inserts.items():
        if len(entries) == 2:
            # the arc that also covers the previous rim vertex owns the
            # incoming boundary edge and must come first in the corner
            entries.sort(key=lambda e: (e[1] - 1) not in arcs[e[0]])

    rotations: dict[int, list] = {u: list(host.rotations[u]) for u in range(host.vertex_count)}
    for j in range(cp):
        new = [("naf", i, t) for i, t in inserts[j]]
        rotations[verts[j]] = _insert_before(rotations[verts[j]], f.darts[j], new)
    for i, arc in enumerate(arcs):
        w = host.vertex_count + i
        rotations[w] = (
            [("cw", i)] + [("fan", i, t) for t in reversed(arc)] + [("ccw", i)]
        )

    mate: dict = {d: host.reverse[d] for d in range(host.dart_count)}
    for i in range(l):
        mate[("cw", i)] = ("ccw", (i + 1) % l)
        mate[("ccw", (i + 1) % l)] = ("cw", i)
    for i, arc in enumerate(arcs):
        for t in arc:
            mate[("fan", i, t)] = ("naf", i, t)
            mate[("naf", i, t)] = ("fan", i, t)

    out, ids = assemble(rotations, mate)
    inner = out.face_index_of[ids[("cw", 0)]]
    assert out.vertex_count == host.vertex_count + l
    assert out.edge_count == host.edge_count + cp + 2 * l
    assert len(out.faces) == len(host.faces) + cp + l
    assert genus(out) == genus(host)
    assert out.faces[inner].size == l
    expected = sorted(
        [s for s in face_size_multiset(host)] + [l] + [3] * (cp + l)
    )
    expected.remove(cp)
    assert list(face_size_multiset(out)) == expected
    # the inner face stays chordless and meets each neighbor face just once
    inner_verts = walk_vertices(out, out.faces[inner].darts)
    for x, y in itertools.combinations(inner_verts, 2):
        if abs(inner_verts.index(x) - inner_verts.index(y)) not in (1, l - 1):
            assert y not in out.adjacency[x]
    outside = [out.face_index_of[out.reverse[d]] for d in out.faces[inner].darts]
    assert len(set(outside)) == l
    if verify:
        assert vertex_connectivity(out) >= c, "fill lost the connectivity it promised"
    assert validate(out).ok
    return FillResult(out, inner)


# -- threading a cycle through triangles ------------------------------------------


def insert_cycle_in_triangles(
    m: Map, triangles: Sequence[Face | int], pivots: Sequence[int]
) -> InsertResult:
    """Thread a 6-cycle through six vertex-disjoint triangular faces.

    Each new edge runs pivot to pivot and both of its darts sit in the host
    triangle's corner there.  The six triangles open up into a single
    24-gon, a new hexagon appears inside the cycle sharing edges only with
    that 24-gon, F drops by 4 and the genus climbs by exactly 5.
    """
    if len(triangles) != 6 or len(pivots) != 6:
        raise SurgeryError("need exactly six triangles and six pivots")
    faces = [_face_of(m, t) for t in triangles]
    seen: set[int] = set()
    for f in faces:
        vs = walk_vertices(m, f.darts)
        if f.size != 3 or len(set(vs)) != 3:
            raise SurgeryError(f"face {f.index} is not a triangle")
        if set(vs) & seen:
            raise SurgeryError("the triangles share a vertex")
        seen |= set(vs)
    for i, f in enumerate(faces):
        if pivots[i] not in walk_vertices(m, f.darts):
            raise SurgeryError(f"pivot {pivots[i]} is not on triangle {f.index}")
    for i in range(6):
        p, q = pivots[i], pivots[(i + 1) % 6]
        if q in m.adjacency[p]:
            raise SurgeryError(f"pivots {p} and {q} are adjacent; the new edge would be doubled")

    rotations: dict[int, list] = {u: list(m.rotations[u]) for u in range(m.vertex_count)}
    for i in range(6):
        dep = next(d for d in faces[i].darts if m.vertex_of[d] == pivots[i])
        rotations[pivots[i]] = _insert_before(
            rotations[pivots[i]], dep, [("out", i), ("back", i)]
        )
    mate: dict = {d: m.reverse[d] for d in range(m.dart_count)}
    for i in range(6):
        mate[("out", i)] = ("back", (i + 1) % 6)
        mate[("back", (i + 1) % 6)] = ("out", i)

    out, ids = assemble(rotations, mate)
    big = out.face_index_of[ids[("out", 0)]]
    small = out.face_index_of[ids[("back", 0)]]
    assert out.faces[big].size == 24
    assert out.faces[small].size == 6
    assert out.edge_count == m.edge_count + 6
    assert len(out.faces) == len(m.faces) - 4
    assert genus(out) == genus(m) + 5
    for d in out.faces[small].darts:
        assert out.face_index_of[out.reverse[d]] == big
    assert validate(out).ok
    return InsertResult(out, big, small)


# -- triangulation growth ----------------------------------------------------------


def stack_vertex(m: Map, face: Face | int) -> Map:
    """Put one new vertex inside a triangular face, joined to its corners."""
    f = _face_of(m, face)
    if f.size != 3:
        raise SurgeryError("can only stack inside a triangle")
    vs = _require_simple_cycle(m, f)
    rotations: dict[int, list] = {u: list(m.rotations[u]) for u in range(m.vertex_count)}
    for j in range(3):
        rotations[vs[j]] = _insert_before(rotations[vs[j]], f.darts[j], [("up", j)])
    rotations[m.vertex_count] = [("down", 0), ("down", 2), ("down", 1)]
    mate: dict = {d: m.reverse[d] for d in range(m.dart_count)}
    for j in range(3):
        mate[("up", j)] = ("down", j)
        mate[("down", j)] = ("up", j)
    out, _ = assemble(rotations, mate)
    assert len(out.faces) == len(m.faces) + 2
    assert genus(out) == genus(m)
    return out


def stacked_triangulation(n: int) -> Map:
    """A plane triangulation on n vertices grown by breadth-first stacking.

    Faces are refined oldest-first, which spreads the new vertices out, so
    large instances contain many pairwise disjoint triangles.
    """
    if n < 4:
        raise SurgeryError("triangulations start at four vertices")
    m = wheel(3)
    queue: deque[frozenset[int]] = deque(
        frozenset(walk_vertices(m, f.darts)) for f in m.faces
    )
    while m.vertex_count < n:
        triple = queue.popleft()
        face = next(
            f
            for f in m.faces
            if f.size == 3 and frozenset(walk_vertices(m, f.darts)) == triple
        )
        vs = walk_vertices(m, face.darts)
        w = m.vertex_count
        m = stack_vertex(m, face.index)
        for pair in ((vs[0], vs[1]), (vs[1], vs[2]), (vs[2], vs[0])):
            queue.append(frozenset((*pair, w)))
    return m


def find_disjoint_triangles(
    m: Map, count: int = 6, *, separated: bool = False
) -> tuple[tuple[Face, ...], tuple[int, ...]] | None:
    """Search for vertex-disjoint triangular faces with a usable pivot cycle.

    Returns (faces, pivots) where consecutive pivots (cyclically) are never
    adjacent, or None.  With ``separated`` no two picked triangles may touch
    a common face (which later keeps any third face from sharing two edges
    with the opened-up 24-gon) and the pivots must be pairwise non-adjacent,
    so that a complete-graph cap can land on them without doubling an edge.
    """
    tris = [
        f
        for f in m.faces
        if f.size == 3 and len(set(walk_vertices(m, f.darts))) == 3
    ]
    tri_verts = {f.index: walk_vertices(m, f.darts) for f in tris}
    nbr_faces = {
        f.index: frozenset(m.face_index_of[m.reverse[d]] for d in f.darts)
        for f in tris
    }

    def assign_pivots(chosen: list[Face]) -> tuple[int, ...] | None:
        pivots: list[int] = []

        def clashes(p: int, i: int) -> bool:
            if separated:
                return any(p in m.adjacency[q] for q in pivots)
            return bool(i) and p in m.adjacency[pivots[i - 1]]

        def go(i: int) -> bool:
            if i == count:
                return separated or pivots[0] not in m.adjacency[pivots[-1]]
            for p in tri_verts[chosen[i].index]:
                if clashes(p, i):
                    continue
                pivots.append(p)
                if go(i + 1):
                    return True
                pivots.pop()
            return False

        return tuple(pivots) if go(0) else None

    chosen: list[Face] = []
    used: set[int] = set()
    claimed: list[frozenset[int]] = []

    def pick(start: int) -> tuple[tuple[Face, ...], tuple[int, ...]] | None:
        if len(chosen) == count:
            pivots = assign_pivots(chosen)
            if pivots is not None:
                return tuple(chosen), pivots
            return None
        for idx in range(start, len(tris)):
            f = tris[idx]
            vs = set(tri_verts[f.index])
            if vs & used:
                continue
            footprint = nbr_faces[f.index] | {f.index}
            if separated and any(footprint & c for c in claimed):
                continue
            chosen.append(f)
            used.update(vs)
            claimed.append(footprint)
            hit = pick(idx + 1)
            if hit is not None:
                return hit
            chosen.pop()
            used.difference_update(vs)
            claimed.pop()
        return None

    return pick(0)


# -- witness pipelines --------------------------------------------------------------


def check_fill_ingredient(m: Map, l: int, c: int) -> tuple[str, ...]:
    """Problems keeping m from serving as the l-face gluing ingredient.

    Wanted: a simple c-connected map whose faces are all triangles except
    one chordless l-gon (for l = 3, all triangles).
    """
    report = validate(m)
    if not report.ok:
        return tuple(report.problems)
    problems: list[str] = []
    if not m.is_simple_graph():
        problems.append("graph is not simple")
    sizes = face_size_multiset(m)
    if l == 3:
        if any(s != 3 for s in sizes):
            problems.append("faces other than triangles present")
    elif sizes.count(l) != 1 or any(s not in (3, l) for s in sizes):
        problems.append(f"need exactly one {l}-gon among triangles, found {sizes}")
    else:
        f = next(f for f in m.faces if f.size == l)
        verts = walk_vertices(m, f.darts)
        if len(set(verts)) != l:
            problems.append("glue face is not a simple cycle")
        else:
            vset = set(verts)
            for j in range(l):
                rim = {verts[(j + 1) % l], verts[(j - 1) % l]}
                if (m.adjacency[verts[j]] & vset) - rim:
                    problems.append("glue face has a chord")
                    break
    kappa = vertex_connectivity(m)
    if kappa < c:
        problems.append(f"connectivity {kappa} below {c}")
    return tuple(problems)


def one_cut_witness_problems(m: Map, c: int) -> tuple[str, ...]:
    """Everything keeping m from certifying the one-cut witness for c.

    Wanted: connectivity exactly c, a simple dual with a cut vertex at the
    unique non-triangle face, and that face of the threshold size.
    """
    report = validate(m)
    if not report.ok:
        return tuple(report.problems)
    problems: list[str] = []
    kappa = vertex_connectivity(m)
    if kappa != c:
        problems.append(f"connectivity {kappa}, expected {c}")
    d = dual(m)
    if not d.simple:
        problems.append(f"dual is not simple ({d.verdict})")
    want = one_cut_size_threshold(c)
    odd = [f for f in m.faces if f.size != 3]
    if len(odd) != 1 or odd[0].size != want:
        problems.append(
            f"face sizes {face_size_multiset(m)}; expected one {want}-gon among triangles"
        )
    elif d.simple and frozenset({odd[0].index}) not in find_cutsets(adjacency_of(d.dual), 1):
        problems.append("dual has no cut vertex at the big face")
    return tuple(problems)


def _glue_face_size(m: Map) -> int:
    sizes = {f.size for f in m.faces if f.size != 3}
    if not sizes:
        return 3
    if len(sizes) > 1:
        raise SurgeryError(f"ingredient has several non-triangle face sizes {sorted(sizes)}")
    return sizes.pop()


def _min_face_of_size(m: Map, size: int, *, skip: int | None = None) -> int:
    for f in m.faces:
        if f.size == size and f.index != skip:
            return f.index
    raise SurgeryError(f"no face of size {size} left to fill")


def _witness_report(m: Map, c: int, construction: str) -> PipelineReport:
    big = next(f for f in m.faces if f.size != 3)
    return PipelineReport(
        (
            ("construction", construction),
            ("connectivity", str(c)),
            ("vertices", str(m.vertex_count)),
            ("edges", str(m.edge_count)),
            ("faces", str(len(m.faces))),
            ("genus", str(genus(m))),
            ("big-face-size", str(big.size)),
            ("dual", "simple, cut vertex at the big face"),
            ("checks", "passed"),
        )
    )


def build_one_cut_witness(c: int, ingredients: Sequence[Map] = ()) -> PipelineOutcome:
    """Manufacture a certified dual-one-cut witness of connectivity c.

    c=1 wedges two plane K4 copies; c=3 dresses the three-vertex gadget
    with a wheel and a K4.  For c in {5,6,7} the high-connectivity
    ingredients cannot be generated at this scale and must be supplied: two
    maps each carrying one chordless c-gon among triangles (c in {5,7}), or
    a hexagon ingredient plus a 6-connected torus triangulation owning two
    triangles at distance two or more (c=6).  Every candidate assembly is
    verified from scratch; alignments are tried until one passes.
    """
    if c == 1:
        if ingredients:
            raise SurgeryError("the c=1 witness takes no ingredients")
        out = k4_wedge()
        problems = one_cut_witness_problems(out, 1)
        assert not problems, problems
        return PipelineOutcome(out, _witness_report(out, 1, "two plane K4 copies wedged at a vertex"))
    if c == 3 and not ingredients:
        ingredients = (wheel(6), wheel(3))
    if c in (3, 5, 7):
        return _fill_gadget(c, ingredients)
    if c == 6:
        return _cap_gadget_six(ingredients)
    raise SurgeryError(f"no witness construction for connectivity {c}")


def _fill_gadget(c: int, ingredients: Sequence[Map]) -> PipelineOutcome:
    if len(ingredients) != 2:
        raise SurgeryError(
            f"missing ingredients: the c={c} witness needs two maps with faces "
            f"{sorted(_GADGET_FACES[c])[:-1]} to glue over the gadget"
        )
    targets = list(_GADGET_FACES[c][:-1])  # satellite sizes, ascending
    ings = sorted(ingredients, key=_glue_face_size)
    if [_glue_face_size(i) for i in ings] != targets:
        raise SurgeryError(
            f"ingredient glue faces {[_glue_face_size(i) for i in ings]} "
            f"do not match the gadget satellites {targets}"
        )
    for ing, size in zip(ings, targets):
        problems = check_fill_ingredient(ing, size, c)
        if problems:
            raise SurgeryError(f"{size}-gon ingredient: " + "; ".join(problems))

    gadget = cycle_square_gadget(c)
    big_size = _GADGET_FACES[c][-1]
    last_problems: tuple[str, ...] = ()

    def attempts(current: Map, step: int):
        if step == len(ings):
            yield current
            return
        size = targets[step]
        ing = ings[step]
        big = next(f.index for f in current.faces if f.size == big_size)
        target = _min_face_of_size(current, size, skip=big)
        source = _min_face_of_size(ing, size)
        for offset in range(size):
            for mirror in (False, True):
                try:
                    res = glue_faces(current, ing, GlueSpec(target, source, offset, mirror))
                except SurgeryError:
                    continue
                yield from attempts(res.map, step + 1)

    for candidate in attempts(gadget, 0):
        problems = one_cut_witness_problems(candidate, c)
        if not problems:
            return PipelineOutcome(
                candidate,
                _witness_report(candidate, c, f"gadget on {c} vertices with both satellites glued over"),
            )
        last_problems = problems
    raise SurgeryError(
        f"no gluing alignment certified the c={c} witness"
        + (f"; last attempt: {'; '.join(last_problems)}" if last_problems else "")
    )


def _cap_gadget_six(ingredients: Sequence[Map]) -> PipelineOutcome:
    if len(ingredients) != 2:
        raise SurgeryError(
            "missing ingredients: the c=6 witness needs a hexagon ingredient and "
            "a 6-connected torus triangulation with two triangles at distance two"
        )
    hexing, torus = ingredients
    problems = check_fill_ingredient(hexing, 6, 6)
    if problems:
        raise SurgeryError("hexagon ingredient: " + "; ".join(problems))
    tr = validate(torus)
    torus_problems = list(tr.problems)
    if tr.ok:
        if any(f.size != 3 for f in torus.faces):
            torus_problems.append("not a triangulation")
        if not torus.is_simple_graph():
            torus_problems.append("graph is not simple")
        elif vertex_connectivity(torus) < 6:
            torus_problems.append("connectivity below 6")
    if torus_problems:
        raise SurgeryError("torus ingredient: " + "; ".join(torus_problems))
    pairs = list(_distant_triangle_pairs(torus))
    if not pairs:
        raise SurgeryError("torus ingredient has no two triangles at distance two")

    gadget = cycle_square_gadget(6)
    hex_face = next(f.index for f in gadget.faces if f.size == 6)
    tri_sets = [
        set(walk_vertices(gadget, f.darts)) for f in gadget.faces if f.size == 3
    ]
    hex_source = _min_face_of_size(hexing, 6)
    last_problems: tuple[str, ...] = ()

    for off1 in range(6):
        for mir1 in (False, True):
            try:
                step1 = glue_faces(gadget, hexing, GlueSpec(hex_face, hex_source, off1, mir1))
            except SurgeryError:
                continue
            # gadget vertex ids survive both gluings, so the two satellite
            # triangles stay findable by their vertex sets
            first_faces = _faces_with_vertices(step1.map, 3, tri_sets[0])
            for first in first_faces:
                for tf, tg in pairs:
                    for off2 in range(3):
                        for mir2 in (False, True):
                            try:
                                step2 = glue_faces(
                                    step1.map, torus, GlueSpec(first, tf.index, off2, mir2)
                                )
                            except SurgeryError:
                                continue
                            image = {
                                step2.vertex_map_b[v]
                                for v in walk_vertices(torus, tg.darts)
                            }
                            seconds = _faces_with_vertices(step2.map, 3, image)
                            remaining = _faces_with_vertices(step2.map, 3, tri_sets[1])
                            for gi in seconds:
                                for ri in remaining:
                                    for off3 in range(3):
                                        try:
                                            res = glue_faces_self(step2.map, gi, ri, off3)
                                        except SurgeryError:
                                            continue
                                        problems = one_cut_witness_problems(res.map, 6)
                                        if not problems:
                                            return PipelineOutcome(
                                                res.map,
                                                _witness_report(
                                                    res.map,
                                                    6,
                                                    "six-vertex gadget capped by hexagon "
                                                    "ingredient and doubled torus triangles",
                                                ),
                                            )
                                        last_problems = problems
    raise SurgeryError(
        "no gluing alignment certified the c=6 witness"
        + (f"; last attempt: {'; '.join(last_problems)}" if last_problems else "")
    )


def _distant_triangle_pairs(m: Map):
    tris = [
        f for f in m.faces if f.size == 3 and len(set(walk_vertices(m, f.darts))) == 3
    ]
    for f, g in itertools.combinations(tris, 2):
        a = set(walk_vertices(m, f.darts))
        b = set(walk_vertices(m, g.darts))
        if a & b:
            continue
        if any(w in m.adjacency[v] for v in a for w in b):
            continue
        yield f, g


def _torus_hexagon_cap() -> Map:
    # deferred import: the searcher has no reason to know about surgery
    from .search import triangular_complete_map

    k7 = triangular_complete_map(7)
    cap = delete_vertex(k7, 0)
    assert face_size_multiset(cap) == (3,) * 8 + (6,)
    assert genus(cap) == 1
    return cap


def one_cut_witness_from_triangulation(
    host: Map,
    triangles: Sequence[Face | int] | None = None,
    pivots: Sequence[int] | None = None,
    expect_connectivity: int | None = None,
) -> PipelineOutcome:
    """Run the thread-a-cycle-then-cap-it pipeline on a triangulation.

    Six disjoint triangles of the simple triangular host (found
    automatically when not given) receive a new 6-cycle, opening them into
    a 24-gon plus a fresh hexagon; the hexagon is then capped with the
    one-big-face torus map cut out of the complete 7-vertex triangulation.
    The genus rises by exactly six and the dual of the result is simple
    with a cut vertex at the 24-gon; both facts are verified, not assumed.
    """
    report = validate(host)
    if not report.ok:
        raise SurgeryError("host: " + "; ".join(report.problems))
    if any(f.size != 3 for f in host.faces):
        raise SurgeryError("host is not a triangulation")
    if not host.is_simple_graph():
        raise SurgeryError("host has loops or parallel edges")
    if (triangles is None) != (pivots is None):
        raise SurgeryError("give both triangles and pivots, or neither")
    if triangles is None:
        found = find_disjoint_triangles(host, 6, separated=True)
        if found is None:
            raise SurgeryError("no six well-separated triangles with a pivot cycle")
        triangles, pivots = found
    assert pivots is not None
    ins = insert_cycle_in_triangles(host, triangles, pivots)
    cap = _torus_hexagon_cap()
    cap_face = next(f.index for f in cap.faces if f.size == 6)

    last_problems: list[str] = []
    for offset in range(6):
        for mirror in (False, True):
            try:
                res = glue_faces(ins.map, cap, GlueSpec(ins.small_face_index, cap_face, offset, mirror))
            except SurgeryError:
                continue
            out = res.map
            problems = list(_cap_problems(out, host, expect_connectivity))
            if not problems:
                big = next(f for f in out.faces if f.size == 24)
                return PipelineOutcome(
                    out,
                    PipelineReport(
                        (
                            ("construction", "6-cycle threaded through six triangles, hexagon capped"),
                            ("host-vertices", str(host.vertex_count)),
                            ("host-genus", str(genus(host))),
                            ("pivots", " ".join(map(str, pivots))),
                            ("vertices", str(out.vertex_count)),
                            ("edges", str(out.edge_count)),
                            ("faces", str(len(out.faces))),
                            ("genus", f"{genus(out)} (host + 6)"),
                            ("big-face-size", str(big.size)),
                            ("dual", "simple, cut vertex at the 24-gon"),
                            ("checks", "passed"),
                        )
                    ),
                )
            last_problems = problems
    raise SurgeryError(
        "no cap alignment certified the pipeline output"
        + (f"; last attempt: {'; '.join(last_problems)}" if last_problems else "")
    )


def _cap_problems(out: Map, host: Map, expect_connectivity: int | None) -> list[str]:
    problems: list[str] = []
    if not validate(out).ok:
        return ["output failed validation"]
    if genus(out) != genus(host) + 6:
        problems.append(f"genus {genus(out)}, expected {genus(host) + 6}")
    odd = [f for f in out.faces if f.size != 3]
    if len(odd) != 1 or odd[0].size != 24:
        problems.append(f"face sizes {face_size_multiset(out)}; expected one 24-gon")
    d = dual(out)
    if not d.simple:
        problems.append(f"dual is not simple ({d.verdict})")
    elif len(odd) == 1 and frozenset({odd[0].index}) not in find_cutsets(
        adjacency_of(d.dual), 1
    ):
        problems.append("dual has no cut vertex at the 24-gon")
    if expect_connectivity is not None:
        kappa = vertex_connectivity(out)
        if kappa != expect_connectivity:
            problems.append(f"connectivity {kappa}, expected {expect_connectivity}")
    return problems
