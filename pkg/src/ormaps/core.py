"""Dart-based rotation systems for maps on orientable surfaces.

A map is a connected (multi)graph with a cyclic clockwise order of edge
ends around every vertex.  Every edge contributes two oppositely directed
darts, and the whole embedding is three parallel arrays over dart ids
0..2E-1:

* ``vertex_of[d]``: origin vertex of dart ``d``
* ``next_in_rotation[d]``: the next dart clockwise around the same origin
* ``reverse[d]``: the other dart of the same edge

Faces are the orbits of ``d -> next_in_rotation[reverse[d]]``, the face on
the left of each dart, and the genus follows from Euler's formula.
"""

from __future__ import annotations

import re
import struct
from collections import Counter
from collections.abc import Hashable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property


class ValidationError(ValueError):
    """Raised when an operation requires a valid map and got a broken one."""

    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(report.problems) or "invalid map")
        self.report = report


class RotParseError(ValueError):
    """Syntax or consistency error in ``.rot`` text, with source location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Face:
    """One facial walk: ``darts`` in walk order, starting at the minimal dart."""

    index: int
    darts: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.darts)


@dataclass(frozen=True)
class Angle:
    """A consecutive (incoming, outgoing) dart pair of some facial walk."""

    incoming: int
    outgoing: int


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple[str, ...]
    vertex_count: int | None = None
    edge_count: int | None = None
    face_count: int | None = None
    euler: int | None = None
    genus: int | None = None

    @property
    def ok(self) -> bool:
        return not self.problems

    def lines(self) -> list[str]:
        out = [f"valid: {'yes' if self.ok else 'no'}"]
        for name, value in (
            ("vertices", self.vertex_count),
            ("edges", self.edge_count),
            ("faces", self.face_count),
            ("euler", self.euler),
            ("genus", self.genus),
        ):
            if value is not None:
                out.append(f"{name}: {value}")
        for p in self.problems:
            out.append(f"problem: {p}")
        return out


@dataclass(frozen=True)
class Map:
    """An embedded (multi)graph as a rotation system over darts.

    Instances are immutable; derived structure (rotations, faces, adjacency)
    is computed lazily and cached.  ``labels`` is presentation-only and does
    not take part in equality.
    """

    vertex_of: tuple[int, ...]
    next_in_rotation: tuple[int, ...]
    reverse: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    # -- basic counts ------------------------------------------------------

    @property
    def dart_count(self) -> int:
        return len(self.vertex_of)

    @property
    def edge_count(self) -> int:
        return len(self.vertex_of) // 2

    @cached_property
    def vertex_count(self) -> int:
        return max(self.vertex_of) + 1

    # -- per-vertex structure ----------------------------------------------

    @cached_property
    def rotations(self) -> tuple[tuple[int, ...], ...]:
        """Clockwise dart cycle at each vertex, starting at its minimal dart."""
        first: dict[int, int] = {}
        for d, v in enumerate(self.vertex_of):
            if v not in first:
                first[v] = d
        rots = []
        for v in range(self.vertex_count):
            start = first[v]
            cyc = [start]
            d = self.next_in_rotation[start]
            # bounded walk so malformed rotations cannot loop forever
            while d != start and len(cyc) <= self.dart_count:
                cyc.append(d)
                d = self.next_in_rotation[d]
            rots.append(tuple(cyc))
        return tuple(rots)

    def darts_at(self, v: int) -> tuple[int, ...]:
        return self.rotations[v]

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        """Neighbor sets (multiplicities and loops collapsed)."""
        nbrs: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for d in range(self.dart_count):
            u = self.vertex_of[d]
            w = self.vertex_of[self.reverse[d]]
            if u != w:
                nbrs[u].add(w)
        return tuple(frozenset(s) for s in nbrs)

    # -- edges ---------------------------------------------------------------

    def edge_id(self, d: int) -> int:
        return min(d, self.reverse[d])

    @cached_property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(d for d in range(self.dart_count) if d < self.reverse[d])

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.vertex_of[e], self.vertex_of[self.reverse[e]]

    def is_simple_graph(self) -> bool:
        seen = set()
        for e in self.edge_ids:
            u, w = self.endpoints(e)
            if u == w:
                return False
            key = (u, w) if u < w else (w, u)
            if key in seen:
                return False
            seen.add(key)
        return True

    # -- faces ---------------------------------------------------------------

    def face_successor(self, d: int) -> int:
        return self.next_in_rotation[self.reverse[d]]

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        return facial_walks(self)

    @cached_property
    def face_index_of(self) -> tuple[int, ...]:
        idx = [0] * self.dart_count
        for f in self.faces:
            for d in f.darts:
                idx[d] = f.index
        return tuple(idx)

    def face_of_dart(self, d: int) -> Face:
        return self.faces[self.face_index_of[d]]

    # -- whole-map transforms -------------------------------------------------

    def mirror(self) -> "Map":
        """The same graph with every rotation reversed (orientation flip)."""
        prev = [0] * self.dart_count
        for d, nd in enumerate(self.next_in_rotation):
            prev[nd] = d
        return Map(self.vertex_of, tuple(prev), self.reverse, self.labels)

    def label_of(self, v: int) -> str:
        if self.labels is not None:
            return self.labels[v]
        return str(v + 1)


def facial_walks(m: Map) -> tuple[Face, ...]:
    """All facial walks, ordered by minimal dart and started at it."""
    seen = [False] * m.dart_count
    sigma = m.next_in_rotation
    alpha = m.reverse
    faces = []
    for d0 in range(m.dart_count):
        if seen[d0]:
            continue
        walk = []
        d = d0
        while not seen[d]:
            seen[d] = True
            walk.append(d)
            d = sigma[alpha[d]]
        faces.append(Face(len(faces), tuple(walk)))
    return tuple(faces)


def angles_of(face: Face) -> tuple[Angle, ...]:
    k = len(face.darts)
    return tuple(Angle(face.darts[i], face.darts[(i + 1) % k]) for i in range(k))


def walk_vertices(m: Map, darts: Sequence[int]) -> tuple[int, ...]:
    return tuple(m.vertex_of[d] for d in darts)


def face_size_multiset(m: Map) -> tuple[int, ...]:
    return tuple(sorted(f.size for f in m.faces))


def degree_multiset(m: Map) -> tuple[int, ...]:
    return tuple(sorted(len(r) for r in m.rotations))


def euler_characteristic(m: Map) -> int:
    return m.vertex_count - m.edge_count + len(m.faces)


def genus(m: Map) -> int:
    if m.dart_count % 2:
        raise ValueError("odd dart count; edge set is ill-defined")
    chi = euler_characteristic(m)
    if chi % 2:
        raise ValueError(f"Euler characteristic {chi} is odd; not a valid rotation system")
    g = (2 - chi) // 2
    if g < 0:
        raise ValueError(f"negative genus {g}; not a valid rotation system")
    return g


def validate(m: Map) -> ValidationReport:
    """Check every structural invariant; never raises, reports instead."""
    problems: list[str] = []
    D = m.dart_count
    if D == 0:
        return ValidationReport(("map has no darts",))
    if len(m.next_in_rotation) != D or len(m.reverse) != D:
        return ValidationReport(("dart arrays differ in length",))
    if m.labels is not None and len(m.labels) <= max(m.vertex_of):
        problems.append("labels shorter than vertex count")

    vmax = max(m.vertex_of)
    present = set(m.vertex_of)
    for v in range(vmax + 1):
        if v not in present:
            problems.append(f"vertex {v} has no darts")

    involution_ok = True
    for d in range(D):
        r = m.reverse[d]
        if not 0 <= r < D:
            problems.append(f"reverse of dart {d} out of range")
            involution_ok = False
        elif r == d:
            problems.append(f"dart {d} at vertex {m.vertex_of[d]} is dangling (paired with itself)")
            involution_ok = False
        elif m.reverse[r] != d:
            problems.append(f"reverse is not an involution at dart {d}")
            involution_ok = False

    rotation_ok = sorted(m.next_in_rotation) == list(range(D))
    if not rotation_ok:
        problems.append("next_in_rotation is not a permutation of the darts")
    else:
        for d in range(D):
            if m.vertex_of[m.next_in_rotation[d]] != m.vertex_of[d]:
                problems.append(f"rotation successor of dart {d} lies at a different vertex")
                rotation_ok = False
                break
        if rotation_ok:
            cycles = Counter()
            seen = [False] * D
            for d0 in range(D):
                if seen[d0]:
                    continue
                cycles[m.vertex_of[d0]] += 1
                d = d0
                while not seen[d]:
                    seen[d] = True
                    d = m.next_in_rotation[d]
            for v, k in sorted(cycles.items()):
                if k > 1:
                    problems.append(f"vertex {v} has {k} rotation cycles instead of one")

    if rotation_ok:
        # connectivity of the dart action under rotation and reverse
        seen = [False] * D
        stack = [0]
        seen[0] = True
        reached = 1
        while stack:
            d = stack.pop()
            for e in (m.next_in_rotation[d], m.reverse[d]):
                if 0 <= e < D and not seen[e]:
                    seen[e] = True
                    reached += 1
                    stack.append(e)
        if reached != D:
            problems.append(f"map is disconnected ({reached} of {D} darts reachable)")

    V = vmax + 1
    E = D // 2 if D % 2 == 0 else None
    if D % 2:
        problems.append("odd number of darts")
    F = chi = g = None
    if rotation_ok and involution_ok and E is not None:
        F = len(facial_walks(m))
        chi = V - E + F
        if chi % 2:
            problems.append(f"Euler characteristic {chi} is odd")
        elif (2 - chi) // 2 < 0:
            problems.append(f"negative genus {(2 - chi) // 2}")
        else:
            g = (2 - chi) // 2
    return ValidationReport(tuple(problems), V, E, F, chi, g)


def require_valid(m: Map) -> Map:
    report = validate(m)
    if not report.ok:
        raise ValidationError(report)
    return m


# -- construction --------------------------------------------------------------


def from_rotations(neighbor_lists: Sequence[Sequence[int]]) -> Map:
    """Build a map from 0-based clockwise neighbor lists.

    Parallel edges are paired by order of occurrence: the i-th dart u->w
    matches the i-th dart w->u, and loop darts at a vertex pair up first
    with second, third with fourth, and so on.  Darts left unpaired by that
    rule are marked dangling (reverse maps them to themselves) so that
    validate() rejects the map while parsing still succeeds.
    """
    n = len(neighbor_lists)
    vertex_of: list[int] = []
    target: list[int] = []
    blocks: list[range] = []
    for v, nbrs in enumerate(neighbor_lists):
        if not nbrs:
            raise ValueError(f"vertex {v} has an empty rotation (isolated vertices unsupported)")
        start = len(vertex_of)
        for w in nbrs:
            if not 0 <= w < n:
                raise ValueError(f"vertex {v} lists unknown neighbor {w}")
            vertex_of.append(v)
            target.append(w)
        blocks.append(range(start, len(vertex_of)))

    D = len(vertex_of)
    nxt = [0] * D
    for block in blocks:
        k = len(block)
        for i, d in enumerate(block):
            nxt[d] = block[(i + 1) % k]

    occurrences: dict[tuple[int, int], list[int]] = {}
    for d in range(D):
        occurrences.setdefault((vertex_of[d], target[d]), []).append(d)

    rev = [-1] * D
    for (u, w), darts in occurrences.items():
        if u < w:
            partners = occurrences.get((w, u), [])
            for a, b in zip(darts, partners):
                rev[a] = b
                rev[b] = a
            for extra in darts[len(partners):]:
                rev[extra] = extra
            for extra in partners[len(darts):]:
                rev[extra] = extra
        elif u == w:
            for i in range(0, len(darts) - 1, 2):
                rev[darts[i]] = darts[i + 1]
                rev[darts[i + 1]] = darts[i]
            if len(darts) % 2:
                rev[darts[-1]] = darts[-1]
    return Map(tuple(vertex_of), tuple(nxt), tuple(rev))


def assemble(
    rotations: Mapping[int, Sequence[Hashable]],
    mate: Mapping[Hashable, Hashable],
    labels: Sequence[str] | None = None,
) -> tuple[Map, dict[Hashable, int]]:
    """Number the darts of a token-level rotation system.

    ``rotations`` maps each vertex (dense ids 0..n-1) to its clockwise list
    of dart tokens; ``mate`` pairs each token with its reverse.  Returns the
    map and the token -> dart id table.  Strict: unlike from_rotations this
    refuses incomplete pairings.
    """
    vertices = sorted(rotations)
    if vertices != list(range(len(vertices))):
        raise ValueError("vertex ids must be dense integers 0..n-1")
    ids: dict[Hashable, int] = {}
    vertex_of: list[int] = []
    for v in vertices:
        if not rotations[v]:
            raise ValueError(f"vertex {v} has an empty rotation")
        for tok in rotations[v]:
            if tok in ids:
                raise ValueError(f"dart token {tok!r} appears twice")
            ids[tok] = len(vertex_of)
            vertex_of.append(v)
    D = len(vertex_of)
    nxt = [0] * D
    for v in vertices:
        toks = rotations[v]
        for i, tok in enumerate(toks):
            nxt[ids[tok]] = ids[toks[(i + 1) % len(toks)]]
    rev = [-1] * D
    for tok, d in ids.items():
        other = mate.get(tok)
        if other is None:
            raise ValueError(f"dart token {tok!r} has no mate")
        o = ids.get(other)
        if o is None:
            raise ValueError(f"mate of {tok!r} is not a known dart token")
        rev[d] = o
    for d in range(D):
        if rev[rev[d]] != d or rev[d] == d:
            raise ValueError("mate table is not a fixed-point-free involution")
    lab = tuple(labels) if labels is not None else None
    return Map(tuple(vertex_of), tuple(nxt), tuple(rev), lab), ids


# -- text format ----------------------------------------------------------------

_HEADER_RE = re.compile(r"^\s*vertices\s*:\s*(\d+)\s*$")
_ROW_RE = re.compile(r"^\s*(\d+)\s*:(.*)$")


def parse(text: str) -> Map:
    """Read the ``.rot`` format.

    Syntax errors raise RotParseError with the source location.  Semantic
    map problems (dangling darts, disconnection, bad Euler count) do not:
    parsing succeeds and validate() reports them.
    """
    declared: int | None = None
    rows: dict[int, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        hash_at = raw.find("#")
        body = raw if hash_at < 0 else raw[:hash_at]
        if not body.strip():
            continue
        if declared is None:
            match = _HEADER_RE.match(body)
            if not match:
                raise RotParseError("expected 'vertices: N' header", lineno, 1)
            declared = int(match.group(1))
            if declared < 1:
                raise RotParseError("vertex count must be positive", lineno, 1)
            continue
        match = _ROW_RE.match(body)
        if not match:
            raise RotParseError("expected 'v: n1 n2 ...' rotation line", lineno, 1)
        v = int(match.group(1))
        if not 1 <= v <= declared:
            raise RotParseError(f"vertex id {v} outside 1..{declared}", lineno, 1)
        if v in rows:
            raise RotParseError(f"vertex {v} listed twice", lineno, 1)
        nbrs = []
        rest_offset = match.start(2)
        for tok in re.finditer(r"\S+", match.group(2)):
            column = rest_offset + tok.start() + 1
            if not tok.group().isdigit():
                raise RotParseError(f"bad neighbor token {tok.group()!r}", lineno, column)
            w = int(tok.group())
            if not 1 <= w <= declared:
                raise RotParseError(f"neighbor {w} outside 1..{declared}", lineno, column)
            nbrs.append(w - 1)
        if not nbrs:
            raise RotParseError(f"vertex {v} lists no neighbors", lineno, 1)
        rows[v] = nbrs
    if declared is None:
        raise RotParseError("empty input: missing 'vertices: N' header")
    for v in range(1, declared + 1):
        if v not in rows:
            raise RotParseError(f"no rotation line for vertex {v}")
    return from_rotations([rows[v] for v in range(1, declared + 1)])


def emit(m: Map, header_comments: Sequence[str] = ()) -> str:
    """Write the ``.rot`` format, normalized for byte-exact round-trips.

    Vertices ascending, each rotation starting at its minimal dart, single
    spaces, trailing newline.  The output is re-parsed and compared before
    returning; a multigraph whose pairing the occurrence rule cannot express
    raises ValueError instead of being silently corrupted.
    """
    lines = [f"# {c}" for c in header_comments]
    lines.append(f"vertices: {m.vertex_count}")
    order: list[int] = []
    for v in range(m.vertex_count):
        rot = m.rotations[v]
        order.extend(rot)
        lines.append(f"{v + 1}: " + " ".join(str(m.vertex_of[m.reverse[d]] + 1) for d in rot))
    text = "\n".join(lines) + "\n"

    pos = {d: i for i, d in enumerate(order)}
    expected = (
        tuple(m.vertex_of[d] for d in order),
        tuple(pos[m.next_in_rotation[d]] for d in order),
        tuple(pos[m.reverse[d]] for d in order),
    )
    back = parse(text)
    if (back.vertex_of, back.next_in_rotation, back.reverse) != expected:
        raise ValueError("parallel-edge pairing not representable in occurrence-paired text")
    return text


# -- isomorphism ------------------------------------------------------------------


def _root_code(m: Map, root: int) -> tuple[bytes, list[int]]:
    """Traversal encoding from one root dart, with the dart visit order."""
    sigma = m.next_in_rotation
    alpha = m.reverse
    newid = {root: 0}
    order = [root]
    head = 0
    while head < len(order):
        d = order[head]
        head += 1
        for e in (sigma[d], alpha[d]):
            if e not in newid:
                newid[e] = len(order)
                order.append(e)
    out = bytearray(struct.pack(">H", len(order)))
    for d in order:
        out += struct.pack(">HH", newid[sigma[d]], newid[alpha[d]])
    return bytes(out), order


def canonical_code(m: Map) -> bytes:
    """Orientation-preserving isomorphism invariant.

    Equal codes exactly when the maps differ by a relabeling of darts and
    vertices that preserves rotations.  A map and its mirror may get
    different codes; compare against ``canonical_code(m.mirror())`` to test
    equivalence up to orientation reversal.
    """
    return min(_root_code(m, r)[0] for r in range(m.dart_count))


def canonical_form(m: Map) -> Map:
    """The relabeled map realizing canonical_code. Labels are dropped."""
    code, order = min((_root_code(m, r) for r in range(m.dart_count)), key=lambda t: t[0])
    pos = {d: i for i, d in enumerate(order)}
    vmap: dict[int, int] = {}
    for d in order:
        v = m.vertex_of[d]
        if v not in vmap:
            vmap[v] = len(vmap)
    return Map(
        tuple(vmap[m.vertex_of[d]] for d in order),
        tuple(pos[m.next_in_rotation[d]] for d in order),
        tuple(pos[m.reverse[d]] for d in order),
    )


def maps_isomorphic_bruteforce(a: Map, b: Map) -> bool:
    """Search for an explicit orientation-preserving dart bijection.

    Independent of canonical_code: tries every image for dart 0 and extends
    by the equivariance constraints, then re-checks the finished bijection
    on every dart.  Exponential blow-up is avoided because the extension is
    forced once the image of one dart is fixed (the map is connected).
    """
    D = a.dart_count
    if D != b.dart_count or a.vertex_count != b.vertex_count:
        return False
    for root in range(D):
        h = {0: root}
        stack = [0]
        ok = True
        while stack and ok:
            d = stack.pop()
            for fa, fb in ((a.next_in_rotation, b.next_in_rotation), (a.reverse, b.reverse)):
                x, y = fa[d], fb[h[d]]
                if x in h:
                    if h[x] != y:
                        ok = False
                        break
                else:
                    h[x] = y
                    stack.append(x)
        if not ok or len(h) != D or len(set(h.values())) != D:
            continue
        if all(
            h[a.next_in_rotation[d]] == b.next_in_rotation[h[d]]
            and h[a.reverse[d]] == b.reverse[h[d]]
            for d in range(D)
        ):
            return True
    return False
