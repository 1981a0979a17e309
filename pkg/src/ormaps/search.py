"""Exhaustive search for small maps under declarative constraints.

Two engines cover the workloads.  The spanning-walk engine fixes the
boundary walk of a distinguished face first and then grows the rotation
system vertex by vertex; it powers ``enumerate_empty`` and the ten-case
certification report.  The face-gluing engine matches polygon sides when
the complete face multiset is known in advance; it powers the witness
searches, the spanning-9-gon search, and the torus embedding of the
complete graph.  Every find is re-checked by predicates built only from
the core and dual primitives, so generation and verification share no
code path.  Budgets count DFS nodes and wall-clock time, and exhaustion
is always reported, never silently turned into a verdict.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from .connectivity import vertex_connectivity
from .core import (
    Map,
    canonical_code,
    canonical_form,
    from_rotations,
    genus,
    validate,
    walk_vertices,
)
from .dual import doubly_intersecting, dual


class SearchError(ValueError):
    """A search request that cannot be run as stated."""


# -- budgets ---------------------------------------------------------------------


@dataclass(frozen=True)
class SearchBudget:
    """Limits for one search run; ``None`` means unlimited."""

    max_nodes: int | None = None
    max_seconds: float | None = None


class _OutOfBudget(Exception):
    pass


class _Clock:
    """Node and wall-clock accounting shared by one search run."""

    __slots__ = ("nodes", "max_nodes", "deadline", "start")

    def __init__(self, budget: SearchBudget | None):
        self.nodes = 0
        self.max_nodes = budget.max_nodes if budget else None
        self.start = time.monotonic()
        self.deadline = (
            self.start + budget.max_seconds
            if budget and budget.max_seconds is not None
            else None
        )

    def tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise _OutOfBudget
        # time syscalls are comparatively slow; sample them
        if self.deadline is not None and self.nodes & 1023 == 0:
            if time.monotonic() > self.deadline:
                raise _OutOfBudget

    @property
    def seconds(self) -> float:
        return time.monotonic() - self.start


# -- declarative specs -----------------------------------------------------------


@dataclass(frozen=True)
class EmptyCircuitSpec:
    """What to enumerate: maps on at most k vertices spanned by one face of
    size k (circuit mode) or by two edge-disjoint faces with sizes summing
    to k (pair mode), with a loop-free dual whose multi-edges all touch the
    spanning face(s).

    Side constraints narrow the family.  ``distinct_neighbors`` demands the
    k faces across the spanning edges be pairwise different;
    ``single_neighbor`` demands they all be one face; ``detached_face``
    demands some face share no edge with the spanning face; ``min_faces``
    puts a floor on the face count.  The vertex and edge bounds carve out
    sub-ranges for bounded emptiness sweeps.
    """

    k: int
    mode: str = "circuit"
    pair_sizes: tuple[int, int] | None = None
    distinct_neighbors: bool = False
    single_neighbor: bool = False
    detached_face: bool = False
    min_faces: int = 0
    min_vertices: int | None = None
    max_vertices: int | None = None
    max_edges: int | None = None

    def __post_init__(self) -> None:
        if self.k < 3:
            raise SearchError("spanning size must be at least 3")
        if self.mode not in ("circuit", "pair"):
            raise SearchError(f"unknown mode {self.mode!r}")
        if self.distinct_neighbors and self.single_neighbor:
            raise SearchError("distinct-neighbors and single-neighbor exclude each other")
        if self.detached_face and self.mode != "circuit":
            raise SearchError("detached-face applies to circuit mode only")
        if self.pair_sizes is not None:
            if self.mode != "pair":
                raise SearchError("pair_sizes needs pair mode")
            a, b = self.pair_sizes
            if a + b != self.k or min(a, b) < 3 or a > b:
                raise SearchError("pair sizes must be >= 3, ordered, and sum to k")


@dataclass(frozen=True)
class WitnessSpec:
    """A connectivity witness to hunt for: a ``connectivity``-connected map
    whose faces are a distinguished pair with sizes summing to ``pair_sum``
    plus triangles, subject to dual and pair demands, inside a hard vertex
    and edge budget."""

    connectivity: int
    pair_sum: int
    dual_demands: tuple[str, ...] = ("simple", "has-2-cut")
    pair_demand: str = "shares-two-vertices"
    max_vertices: int = 8
    max_edges: int = 21

    _DUAL = ("simple", "has-1-cut", "has-2-cut")
    _PAIR = ("shares-two-vertices", "doubly-intersecting", "none")

    def __post_init__(self) -> None:
        if self.connectivity < 1:
            raise SearchError("connectivity must be positive")
        if self.pair_sum < 6:
            raise SearchError("two faces cannot sum below 6")
        for demand in self.dual_demands:
            if demand not in self._DUAL:
                raise SearchError(f"unknown dual demand {demand!r}")
        if self.pair_demand not in self._PAIR:
            raise SearchError(f"unknown pair demand {self.pair_demand!r}")


def _parse_kv(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise SearchError(f"expected key=value, got {chunk!r}")
        key, value = chunk.split("=", 1)
        key = key.strip().lower()
        if key in out:
            raise SearchError(f"duplicate key {key!r}")
        out[key] = value.strip()
    return out


def _int_field(fields: dict[str, str], key: str) -> int | None:
    if key not in fields:
        return None
    try:
        return int(fields.pop(key))
    except ValueError:
        raise SearchError(f"{key} must be an integer") from None


def parse_empty_spec(text: str) -> EmptyCircuitSpec:
    """Build an EmptyCircuitSpec from its text form.

    Grammar: semicolon-separated ``key=value`` entries.  Keys: ``k``
    (required), ``mode`` (``circuit`` | ``pair`` | ``pair:a+b``),
    ``constraints`` (comma list of ``distinct-neighbors`` |
    ``single-neighbor`` | ``detached-face`` | ``min-faces:N``),
    ``min-vertices``, ``max-vertices``, ``max-edges``.  Example:
    ``k=6; mode=circuit; constraints=distinct-neighbors``.
    """
    fields = _parse_kv(text)
    k = _int_field(fields, "k")
    if k is None:
        raise SearchError("missing required key 'k'")
    kwargs: dict = {"k": k}
    mode = fields.pop("mode", "circuit")
    if mode.startswith("pair:"):
        try:
            a, b = (int(part) for part in mode[5:].split("+"))
        except ValueError:
            raise SearchError("pair sizes must look like pair:3+4") from None
        kwargs["mode"] = "pair"
        kwargs["pair_sizes"] = (a, b) if a <= b else (b, a)
    elif mode in ("circuit", "pair"):
        kwargs["mode"] = mode
    else:
        raise SearchError(f"unknown mode {mode!r}")
    constraints = fields.pop("constraints", "")
    for item in filter(None, (c.strip() for c in constraints.split(","))):
        if item == "distinct-neighbors":
            kwargs["distinct_neighbors"] = True
        elif item == "single-neighbor":
            kwargs["single_neighbor"] = True
        elif item == "detached-face":
            kwargs["detached_face"] = True
        elif item.startswith("min-faces:"):
            try:
                kwargs["min_faces"] = int(item.split(":", 1)[1])
            except ValueError:
                raise SearchError("min-faces needs an integer") from None
        else:
            raise SearchError(f"unknown constraint {item!r}")
    for key, kw in (
        ("min-vertices", "min_vertices"),
        ("max-vertices", "max_vertices"),
        ("max-edges", "max_edges"),
    ):
        value = _int_field(fields, key)
        if value is not None:
            kwargs[kw] = value
    if fields:
        raise SearchError(f"unknown keys: {', '.join(sorted(fields))}")
    return EmptyCircuitSpec(**kwargs)


def parse_witness_spec(text: str) -> WitnessSpec:
    """Build a WitnessSpec from its text form.

    Grammar: ``c=2; pair-sum=7`` plus optional ``dual`` (comma list of
    ``simple`` | ``has-1-cut`` | ``has-2-cut``), ``pair`` (one of
    ``shares-two-vertices`` | ``doubly-intersecting`` | ``none``),
    ``max-vertices``, ``max-edges``.
    """
    fields = _parse_kv(text)
    c = _int_field(fields, "c")
    total = _int_field(fields, "pair-sum")
    if c is None or total is None:
        raise SearchError("witness specs need both 'c' and 'pair-sum'")
    kwargs: dict = {"connectivity": c, "pair_sum": total}
    if "dual" in fields:
        kwargs["dual_demands"] = tuple(
            d.strip() for d in fields.pop("dual").split(",") if d.strip()
        )
    if "pair" in fields:
        kwargs["pair_demand"] = fields.pop("pair")
    for key, kw in (("max-vertices", "max_vertices"), ("max-edges", "max_edges")):
        value = _int_field(fields, key)
        if value is not None:
            kwargs[kw] = value
    if fields:
        raise SearchError(f"unknown keys: {', '.join(sorted(fields))}")
    return WitnessSpec(**kwargs)


# -- independent membership checker ------------------------------------------------


def _spanning_candidates(m: Map, spec: EmptyCircuitSpec):
    """Candidate spanning faces (circuit) or face pairs (pair mode)."""
    everything = frozenset(range(m.vertex_count))
    if spec.mode == "circuit":
        for f in m.faces:
            if f.size == spec.k and set(walk_vertices(m, f.darts)) == everything:
                yield (f,)
        return
    for fa, fb in itertools.combinations(m.faces, 2):
        a, b = sorted((fa.size, fb.size))
        if a + b != spec.k or a < 3:
            continue
        if spec.pair_sizes is not None and (a, b) != spec.pair_sizes:
            continue
        if {m.edge_id(d) for d in fa.darts} & {m.edge_id(d) for d in fb.darts}:
            continue
        covered = set(walk_vertices(m, fa.darts)) | set(walk_vertices(m, fb.darts))
        if covered == everything:
            yield (fa, fb)


def empty_map_problems(m: Map, spec: EmptyCircuitSpec) -> tuple[str, ...]:
    """Why ``m`` is not a member of the family ``spec`` describes; () if it is.

    Built from the dual and core primitives only, so it audits the
    enumerator's output without sharing any generator state.
    """
    report = validate(m)
    if not report.ok:
        return ("invalid map: " + "; ".join(report.problems),)
    if not m.is_simple_graph():
        return ("underlying graph is not simple",)
    problems = []
    if m.vertex_count > spec.k:
        problems.append(f"{m.vertex_count} vertices exceed the spanning size {spec.k}")
    if spec.min_vertices is not None and m.vertex_count < spec.min_vertices:
        problems.append(f"fewer than {spec.min_vertices} vertices")
    if spec.max_vertices is not None and m.vertex_count > spec.max_vertices:
        problems.append(f"more than {spec.max_vertices} vertices")
    if spec.max_edges is not None and m.edge_count > spec.max_edges:
        problems.append(f"more than {spec.max_edges} edges")
    if spec.min_faces and len(m.faces) < spec.min_faces:
        problems.append(f"fewer than {spec.min_faces} faces")
    if problems:
        return tuple(problems)
    rep = dual(m)
    if rep.loops:
        return ("dual has a loop",)
    fidx = m.face_index_of
    for cand in _spanning_candidates(m, spec):
        allowed = {f.index for f in cand}
        if any(not (set(pair) & allowed) for pair in rep.multi_pairs):
            continue
        across = [fidx[m.reverse[d]] for f in cand for d in f.darts]
        if spec.distinct_neighbors and len(set(across)) != spec.k:
            continue
        if spec.single_neighbor and len(set(across)) != 1:
            continue
        if spec.detached_face:
            others = set(range(len(m.faces))) - allowed - set(across)
            if not others:
                continue
        return ()
    kind = "spanning face" if spec.mode == "circuit" else "spanning face pair"
    return (f"no {kind} of size {spec.k} satisfies the side constraints",)


# -- boundary-walk shapes -----------------------------------------------------------


def _renumber(seq: tuple[int, ...]) -> tuple[int, ...]:
    table: dict[int, int] = {}
    out = []
    for v in seq:
        if v not in table:
            table[v] = len(table)
        out.append(table[v])
    return tuple(out)


def _circuit_transforms(s: tuple[int, ...]):
    k = len(s)
    for base in (s, tuple(reversed(s))):
        for i in range(k):
            yield _renumber(base[i:] + base[:i])


def _closed_walks(length: int, used: set, start: int, seen: int):
    """Closed walks of the given length whose edges are fresh and distinct.

    ``used`` holds edges claimed by an earlier walk and is left unchanged.
    New vertices appear in increasing order above ``seen``, so every walk
    comes out in joint first-occurrence form.  Yields (walk, top vertex).
    """
    walk = [start]
    local: list[frozenset[int]] = []

    def extend(pos: int, top: int):
        if pos == length:
            closing = frozenset((walk[-1], walk[0]))
            if walk[-1] != walk[0] and closing not in used and closing not in local:
                yield tuple(walk), top
            return
        for u in range(top + 2):
            if u == walk[-1]:
                continue
            e = frozenset((walk[-1], u))
            if e in used or e in local:
                continue
            walk.append(u)
            local.append(e)
            yield from extend(pos + 1, max(top, u))
            local.pop()
            walk.pop()

    yield from extend(1, seen)


def _circuit_shapes(k: int, min_v: int | None, max_v: int | None) -> list[tuple[int, ...]]:
    shapes = []
    for walk, top in _closed_walks(k, set(), 0, 0):
        v = top + 1
        if v < 3 or v < (min_v or 0) or (max_v is not None and v > max_v):
            continue
        if walk == min(_circuit_transforms(walk)):
            shapes.append(walk)
    return sorted(shapes)


def _pair_transforms(sa: tuple[int, ...], sb: tuple[int, ...]):
    variants = [(sa, sb), (tuple(reversed(sa)), tuple(reversed(sb)))]
    if len(sa) == len(sb):
        variants += [(sb, sa), (tuple(reversed(sb)), tuple(reversed(sa)))]
    for first, second in variants:
        for i in range(len(first)):
            for j in range(len(second)):
                merged = _renumber(first[i:] + first[:i] + second[j:] + second[:j])
                yield merged[: len(first)], merged[len(first) :]


def _pair_shapes(
    k: int,
    sizes: tuple[int, int] | None,
    min_v: int | None,
    max_v: int | None,
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    splits = [sizes] if sizes else [(a, k - a) for a in range(3, k // 2 + 1)]
    shapes = set()
    for a, b in splits:
        for first, top_a in _closed_walks(a, set(), 0, 0):
            used = {frozenset((first[i], first[(i + 1) % a])) for i in range(a)}
            # the second walk may start at any existing vertex or a fresh one
            for start in range(top_a + 2):
                for second, top in _closed_walks(b, used, start, max(top_a, start)):
                    v = top + 1
                    if v > k or v < (min_v or 0) or (max_v is not None and v > max_v):
                        continue
                    pair = (first, second)
                    if pair == min(_pair_transforms(first, second)):
                        shapes.add(pair)
    return sorted(shapes)


# -- the spanning-walk engine --------------------------------------------------------


class _WalkFrame:
    """Precomputed geometry of one shape: positions, darts, corner blocks.

    The out dart of position p is p itself and its reverse is k + p, placed
    at the next vertex of the same walk.  Internal darts are numbered
    upward from 2k in pairs, so the reverse of dart d >= 2k is d ^ 1.
    """

    def __init__(self, walks: tuple[tuple[int, ...], ...]):
        self.walks = walks
        flat: list[int] = []
        self.next_pos: list[int] = []
        self.walk_of: list[int] = []
        for w, walk in enumerate(walks):
            base = len(flat)
            n = len(walk)
            flat.extend(walk)
            self.next_pos.extend(base + (i + 1) % n for i in range(n))
            self.walk_of.extend([w] * n)
        self.k = len(flat)
        self.seq = flat
        self.V = max(flat) + 1
        self.edges = {
            frozenset((flat[p], flat[self.next_pos[p]])) for p in range(self.k)
        }
        # corner blocks in visit order: (reverse of the arriving dart, out
        # dart); the spanning orbit forces these two to sit consecutively
        # in the rotation
        self.blocks: list[list[tuple[int, int]]] = [[] for _ in range(self.V)]
        for p in range(self.k):
            vertex = flat[self.next_pos[p]]
            self.blocks[vertex].append((self.k + p, self.next_pos[p]))


def _run_walk_engine(frame: _WalkFrame, spec: EmptyCircuitSpec, clock: _Clock, sink) -> None:
    """Every completion of one walk shape into a member map, fed to ``sink``.

    Each vertex rotation is built one link at a time, and every face orbit
    is checked the instant its last link appears, so a forbidden face cuts
    off all orderings and edge choices that would share the same prefix.
    """
    k, V = frame.k, frame.V
    k2 = 2 * k
    seq = frame.seq
    max_edges = spec.max_edges
    distinct = spec.distinct_neighbors
    single = spec.single_neighbor

    vertex_of: list[int] = [0] * k2
    for p in range(k):
        vertex_of[p] = seq[p]
        vertex_of[k + p] = seq[frame.next_pos[p]]

    def alpha(d: int) -> int:
        if d < k:
            return d + k
        if d < k2:
            return d - k
        return d ^ 1

    succ: dict[int, int] = {}
    claimed: dict[int, int] = {}
    for p in range(k):
        claimed[p] = -1 - frame.walk_of[p]  # the spanning orbits are known a priori
    closed_backs: list[int] = []
    pending: list[list[int]] = [[] for _ in range(V)]
    degree = [2 * len(frame.blocks[v]) for v in range(V)]
    edge_total = [k]
    internal_top = [k2]

    def link_check(
        y: int,
        claims: list[int],
        _get=succ.get,
        _claimed=claimed,
        _closed=closed_backs,
        _k=k,
        _k2=k2,
        _distinct=distinct,
        _single=single,
    ) -> bool:
        """Inspect the face orbit a fresh link may have closed.

        True when the orbit is still open, is a pre-claimed spanning face,
        or closes as an admissible face (then its darts are claimed and
        recorded in ``claims``).  False kills the whole branch.
        """
        if y in _claimed:
            return True
        path = [y]
        append = path.append
        cur = y
        while True:
            a = cur + _k if cur < _k else (cur - _k if cur < _k2 else cur ^ 1)
            nxt = _get(a)
            if nxt is None:
                return True
            cur = nxt
            if cur == y:
                break
            append(cur)
        backs = 0
        for d in path:
            if _k <= d < _k2:
                backs += 1
        if backs:
            if _distinct and backs >= 2:
                return False
            if _single and backs < _k:
                return False
        on_face = set(path)
        shared: set[int] = set()
        for d in path:
            rev = d + _k if d < _k else (d - _k if d < _k2 else d ^ 1)
            if rev in on_face:
                return False  # both sides of one edge on this face: dual loop
            other = _claimed.get(rev)
            if other is not None and other >= 0:
                if other in shared:
                    return False  # two ordinary faces sharing two edges
                shared.add(other)
        fid = len(_closed)
        for d in path:
            _claimed[d] = fid
            claims.append(d)
        _closed.append(backs)
        return True

    def finish() -> None:
        if len(claimed) != len(vertex_of):
            raise RuntimeError("search invariant broken: unclaimed darts at completion")
        if spec.min_faces and len(frame.walks) + len(closed_backs) < spec.min_faces:
            return
        if spec.detached_face and 0 not in closed_backs:
            return
        m = Map(
            tuple(vertex_of),
            tuple(succ[d] for d in range(len(vertex_of))),
            tuple(alpha(d) for d in range(len(vertex_of))),
        )
        report = validate(m)
        if not report.ok:
            if all("connect" in p for p in report.problems):
                return  # pair walks may fail to join up; discard quietly
            raise RuntimeError("search produced a broken map: " + "; ".join(report.problems))
        sink(m)

    def place(v: int) -> None:
        blocks = frame.blocks[v]
        anchor = blocks[0]
        rest: list[tuple[int, ...]] = list(blocks[1:])
        rest.extend((d,) for d in pending[v])
        cand = [u for u in range(v + 1, V) if frozenset((v, u)) not in frame.edges]
        in_use: set[int] = set()
        anchor_head = anchor[0]
        last = V - 1

        def arrange(
            tail: int,
            todo: list[tuple[int, ...]],
            _succ=succ,
            _claimed=claimed,
            _closed=closed_backs,
            _check=link_check,
            _tick=clock.tick,
            _degree=degree,
            _edges=edge_total,
        ) -> None:
            _tick()
            if not todo:
                # wrap the rotation shut and move to the next vertex
                _succ[tail] = anchor_head
                claims: list[int] = []
                if _check(anchor_head, claims):
                    if v == last:
                        finish()
                    else:
                        place(v + 1)
                    for d in claims:
                        del _claimed[d]
                    if claims:
                        _closed.pop()
                del _succ[tail]
            for i in range(len(todo)):
                item = todo.pop(i)
                head = item[0]
                _succ[tail] = head
                claims = []
                if _check(head, claims):
                    if len(item) == 1:
                        arrange(head, todo)
                    else:
                        other = item[1]
                        _succ[head] = other
                        inner: list[int] = []
                        if _check(other, inner):
                            arrange(other, todo)
                            for d in inner:
                                del _claimed[d]
                            if inner:
                                _closed.pop()
                        del _succ[head]
                    for d in claims:
                        del _claimed[d]
                    if claims:
                        _closed.pop()
                del _succ[tail]
                todo.insert(i, item)
            if _degree[v] >= last:
                return
            if max_edges is not None and _edges[0] >= max_edges:
                return
            for u in cand:
                if u in in_use or _degree[u] >= last:
                    continue
                d_here = internal_top[0]
                internal_top[0] = d_here + 2
                vertex_of.append(v)
                vertex_of.append(u)
                pending[u].append(d_here + 1)
                _degree[u] += 1
                _degree[v] += 1
                _edges[0] += 1
                in_use.add(u)
                _succ[tail] = d_here
                claims = []
                if _check(d_here, claims):
                    arrange(d_here, todo)
                    for d in claims:
                        del _claimed[d]
                    if claims:
                        _closed.pop()
                del _succ[tail]
                in_use.discard(u)
                _edges[0] -= 1
                _degree[v] -= 1
                _degree[u] -= 1
                pending[u].pop()
                del vertex_of[d_here:]
                internal_top[0] = d_here

        if len(anchor) == 2:
            succ[anchor[0]] = anchor[1]
            start_claims: list[int] = []
            if link_check(anchor[1], start_claims):
                arrange(anchor[1], rest)
                for d in start_claims:
                    del claimed[d]
                if start_claims:
                    closed_backs.pop()
            del succ[anchor[0]]
        else:
            arrange(anchor[0], rest)

    place(0)


# -- empty enumeration ----------------------------------------------------------------


@dataclass(frozen=True)
class EnumerationOutcome:
    """Everything one enumeration run produced.

    ``maps`` holds canonical forms sorted by canonical code.  ``complete``
    is False exactly when a budget stopped the run early; partial results
    are still returned.
    """

    maps: tuple[Map, ...]
    complete: bool
    nodes: int
    seconds: float
    shapes: int


def enumerate_empty(
    spec: EmptyCircuitSpec, budget: SearchBudget | None = None
) -> EnumerationOutcome:
    """All members of the family ``spec`` describes, up to isomorphism.

    Enumerates boundary-walk shapes up to dihedral symmetry, completes each
    into full rotation systems with pruning on every closed face,
    deduplicates by canonical code, and re-adds mirror images afterwards.
    Every output is re-verified by ``empty_map_problems``.
    """
    if spec.k > 9:
        raise SearchError("spanning size above 9 is not supported")
    clock = _Clock(budget)
    if spec.mode == "circuit":
        frames = [
            _WalkFrame((s,))
            for s in _circuit_shapes(spec.k, spec.min_vertices, spec.max_vertices)
        ]
    else:
        frames = [
            _WalkFrame(s)
            for s in _pair_shapes(spec.k, spec.pair_sizes, spec.min_vertices, spec.max_vertices)
        ]

    found: dict[bytes, Map] = {}

    def sink(m: Map) -> None:
        cm = canonical_form(m)
        code = canonical_code(cm)
        if code in found:
            return
        problems = empty_map_problems(cm, spec)
        if problems:
            raise RuntimeError("enumerated a non-member: " + "; ".join(problems))
        found[code] = cm

    complete = True
    try:
        for frame in frames:
            _run_walk_engine(frame, spec, clock, sink)
    except _OutOfBudget:
        complete = False

    if complete:
        # shape canonicalization folded reflections away; restore chiral twins
        for m in list(found.values()):
            mirrored = canonical_form(m.mirror())
            code = canonical_code(mirrored)
            if code not in found:
                if empty_map_problems(mirrored, spec):
                    raise RuntimeError("mirror image fell outside the family")
                found[code] = mirrored

    ordered = tuple(found[code] for code in sorted(found))
    return EnumerationOutcome(ordered, complete, clock.nodes, clock.seconds, len(frames))


# -- the ten-case certification report -------------------------------------------------


@dataclass(frozen=True)
class CaseOutcome:
    """One certified (or merely exhausted) sub-case of the ten-case report."""

    case: str
    claim: str
    status: str  # "certified" | "exhausted"
    holds: bool | None
    detail: str
    found: int
    nodes: int
    seconds: float


@dataclass(frozen=True)
class Remark24Report:
    cases: tuple[CaseOutcome, ...]

    @property
    def ok(self) -> bool:
        return all(c.status == "certified" and c.holds for c in self.cases)

    def lines(self) -> list[str]:
        out = []
        for c in self.cases:
            verdict = {True: "holds", False: "FAILS", None: "undecided"}[c.holds]
            out.append(
                f"case {c.case}: {verdict} [{c.status}] {c.claim}"
                f" | {c.detail} | nodes={c.nodes} time={c.seconds:.2f}s"
            )
        return out


CASE_LABELS = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x")


def _case_empty(label: str, claim: str, specs, budget) -> CaseOutcome:
    nodes = 0
    seconds = 0.0
    found = 0
    details = []
    for spec in specs:
        outcome = enumerate_empty(spec, budget)
        nodes += outcome.nodes
        seconds += outcome.seconds
        found += len(outcome.maps)
        scope = f"k={spec.k}"
        if spec.max_vertices is not None:
            scope += f" V<={spec.max_vertices}"
        if spec.min_vertices is not None:
            scope += f" V>={spec.min_vertices}"
        if spec.max_edges is not None:
            scope += f" E<={spec.max_edges}"
        details.append(f"{scope}: {len(outcome.maps)} found")
        if not outcome.complete:
            return CaseOutcome(
                label, claim, "exhausted", None, "; ".join(details), found, nodes, seconds
            )
    return CaseOutcome(
        label, claim, "certified", found == 0, "; ".join(details), found, nodes, seconds
    )


def _case_bounds(label, claim, spec, v_exact, e_min, budget) -> CaseOutcome:
    outcome = enumerate_empty(spec, budget)
    if not outcome.complete:
        return CaseOutcome(
            label, claim, "exhausted", None,
            f"partial: {len(outcome.maps)} found", len(outcome.maps),
            outcome.nodes, outcome.seconds,
        )
    holds = all(m.vertex_count == v_exact and m.edge_count >= e_min for m in outcome.maps)
    edges = sorted({m.edge_count for m in outcome.maps})
    detail = f"{len(outcome.maps)} maps, edge counts {edges}" if outcome.maps else "none found"
    return CaseOutcome(
        label, claim, "certified", holds, detail, len(outcome.maps),
        outcome.nodes, outcome.seconds,
    )


def _remark_case_table() -> dict[str, tuple]:
    def circuit(k: int, **kw) -> EmptyCircuitSpec:
        return EmptyCircuitSpec(k=k, mode="circuit", **kw)

    def pair(k: int, **kw) -> EmptyCircuitSpec:
        return EmptyCircuitSpec(k=k, mode="pair", **kw)

    return {
        "i": ("empty", "no circuits with pairwise different neighbor faces, k=3,4,5",
              [circuit(x, distinct_neighbors=True) for x in (3, 4, 5)]),
        "ii": ("empty", "no circuits with a face detached from the spanning face, k=3,4,5",
               [circuit(x, detached_face=True) for x in (3, 4, 5)]),
        "iii": ("bounds", "6-circuits with distinct neighbors: 6 vertices, >= 13 edges",
                circuit(6, distinct_neighbors=True), 6, 13),
        "iv": ("empty", "no 6-circuits with >= 3 faces and a single neighbor face",
               [circuit(6, single_neighbor=True, min_faces=3)]),
        "v": ("bounds", "6-pairs with distinct neighbors: 6 vertices, >= 12 edges",
              pair(6, distinct_neighbors=True), 6, 12),
        "vi": ("empty", "no 6-pairs with >= 4 faces sharing edges with one face only",
               [pair(6, single_neighbor=True, min_faces=4)]),
        "vii": ("empty", "7-circuits with distinct neighbors need 7 vertices and >= 15 edges",
                [circuit(7, distinct_neighbors=True, max_vertices=6),
                 circuit(7, distinct_neighbors=True, min_vertices=7, max_edges=14)]),
        "viii": ("empty", "no 7-circuits with >= 3 faces and a single neighbor face",
                 [circuit(7, single_neighbor=True, min_faces=3)]),
        "ix": ("empty", "7-pairs with distinct neighbors need 7 vertices and >= 14 edges",
               [pair(7, distinct_neighbors=True, max_vertices=6),
                pair(7, distinct_neighbors=True, min_vertices=7, max_edges=13)]),
        "x": ("empty", "no 7-pairs with >= 4 faces sharing edges with one face only",
              [pair(7, single_neighbor=True, min_faces=4)]),
    }


def verify_remark24(cases=None, budget: SearchBudget | None = None) -> Remark24Report:
    """Certify the ten small-map claims by exhaustive enumeration.

    Emptiness cases report zero finds over the full, finite family.  The
    two k=7 distinct-neighbor cases are certified by two emptiness sweeps
    each: one over at most 6 vertices, one over exactly 7 vertices with the
    edge count below the claimed minimum; together these decide the claim
    because simplicity bounds the rest of the range.  A budget stop
    downgrades a case to "exhausted" with its node count, never to a
    verdict.
    """
    table = _remark_case_table()
    wanted = list(cases) if cases is not None else list(CASE_LABELS)
    results = []
    for label in wanted:
        if label not in table:
            raise SearchError(f"unknown case {label!r}; pick from {', '.join(CASE_LABELS)}")
        row = table[label]
        if row[0] == "empty":
            results.append(_case_empty(label, row[1], row[2], budget))
        else:
            results.append(_case_bounds(label, row[1], row[2], row[3], row[4], budget))
    return Remark24Report(tuple(results))


# -- the face-gluing engine ------------------------------------------------------------


@dataclass(frozen=True)
class _GlueRules:
    """Structural constraints the side-matching DFS enforces.

    The engine only builds maps whose underlying graph is simple and whose
    dual is loop-free (a block is never matched to itself).  Under
    ``dual_simple``, two blocks may share at most one edge, except pairs
    containing ``exempt_block``.  ``forced_target`` sends every dart of one
    block into another block; ``spanning_block`` demands every vertex carry
    exactly one corner of that block.
    """

    sizes: tuple[int, ...]
    dual_simple: bool = True
    exempt_block: int | None = None
    forced_target: tuple[tuple[int, int], ...] = ()
    min_degree: int = 2
    max_degree: int = 64
    max_vertices: int = 64
    spanning_block: int | None = None


def _run_glue_engine(rules: _GlueRules, clock: _Clock, accept, stop_after=None) -> bool:
    """Match polygon sides into maps; True means the space was exhausted.

    ``accept`` inspects each structurally valid completion and returns True
    to record it; recording ``stop_after`` maps ends the walk early.
    """
    sizes = rules.sizes
    n = sum(sizes)
    phi = [0] * n
    block_of = [0] * n
    block_start = []
    pos = 0
    for b, s in enumerate(sizes):
        block_start.append(pos)
        for i in range(s):
            phi[pos + i] = pos + (i + 1) % s
            block_of[pos + i] = b
        pos += s
    size_peers = [[p for p in range(b) if sizes[p] == s] for b, s in enumerate(sizes)]
    forced = dict(rules.forced_target)

    alpha = [-1] * n
    snext = [-1] * n
    matched_in_block = [0] * len(sizes)
    pair_count: dict[tuple[int, int], int] = {}
    parent = list(range(n))
    comp_size = [1] * n
    span_count = [0] * n
    if rules.spanning_block is not None:
        start = block_start[rules.spanning_block]
        for d in range(start, start + sizes[rules.spanning_block]):
            span_count[d] = 1
    vertex_id = [-1] * n
    vertices: list[tuple[int, ...]] = []
    vedge_count: dict[tuple[int, int], int] = {}
    exhausted = [True]
    accepted = [0]

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def union(a: int, b: int, trail: list) -> bool:
        ra, rb = find(a), find(b)
        if ra == rb:
            return True
        if comp_size[ra] + comp_size[rb] > rules.max_degree:
            return False  # the rotation chain only ever grows
        if comp_size[ra] < comp_size[rb]:
            ra, rb = rb, ra
        trail.append(("union", (rb, ra, comp_size[ra], span_count[ra])))
        parent[rb] = ra
        comp_size[ra] += comp_size[rb]
        span_count[ra] += span_count[rb]
        if rules.spanning_block is not None and span_count[ra] > 1:
            return False
        return True

    def close_cycle(x: int):
        path = [x]
        cur = snext[x]
        while cur != x:
            if cur == -1:
                return None
            path.append(cur)
            cur = snext[cur]
        return path

    def vertex_checks(cycle: list[int], trail: list) -> bool:
        if len(cycle) < rules.min_degree:
            return False
        if len(vertices) >= rules.max_vertices:
            return False
        if rules.spanning_block is not None:
            corners = sum(1 for d in cycle if block_of[d] == rules.spanning_block)
            if corners != 1:
                return False
        vid = len(vertices)
        on_cycle = set(cycle)
        for d in cycle:
            rev = alpha[d]
            if rev in on_cycle:
                return False  # the edge would close on a single vertex
            w = vertex_id[rev]
            if w >= 0:
                key = (w, vid) if w < vid else (vid, w)
                hits = vedge_count.get(key, 0) + 1
                if hits >= 2:
                    return False  # parallel edge between two finished vertices
                vedge_count[key] = hits
                trail.append(("vedge", key))
        for d in cycle:
            vertex_id[d] = vid
            trail.append(("vid", d))
        vertices.append(tuple(cycle))
        trail.append(("vpop", None))
        return True

    def undo(trail: list) -> None:
        for tag, payload in reversed(trail):
            if tag == "vid":
                vertex_id[payload] = -1
            elif tag == "vpop":
                vertices.pop()
            elif tag == "vedge":
                vedge_count[payload] -= 1
                if not vedge_count[payload]:
                    del vedge_count[payload]
            else:
                child, root, size, span = payload
                parent[child] = child
                comp_size[root] = size
                span_count[root] = span

    def completion() -> None:
        order = sorted(range(len(vertices)), key=lambda i: min(vertices[i]))
        rank = {old: new for new, old in enumerate(order)}
        vertex_of = [0] * n
        for old, cycle in enumerate(vertices):
            for d in cycle:
                vertex_of[d] = rank[old]
        m = Map(tuple(vertex_of), tuple(snext), tuple(alpha))
        if not validate(m).ok:
            return  # typically disconnected, never structural damage
        if accept(m):
            accepted[0] += 1

    def step(lo: int) -> None:
        while lo < n and alpha[lo] != -1:
            lo += 1
        if lo == n:
            completion()
            return
        d0 = lo
        b0 = block_of[d0]
        want0 = forced.get(b0)
        for d1 in range(d0 + 1, n):
            if alpha[d1] != -1:
                continue
            b1 = block_of[d1]
            if b1 == b0:
                continue  # one face on both sides of an edge: dual loop
            if want0 is not None and b1 != want0:
                continue
            if forced.get(b1, b0) != b0:
                continue
            key = (b0, b1) if b0 < b1 else (b1, b0)
            cnt = pair_count.get(key, 0)
            if cnt and rules.dual_simple and rules.exempt_block not in key:
                continue
            if matched_in_block[b1] == 0:
                if d1 != block_start[b1]:
                    continue  # a fresh block may only be entered at its start
                if any(
                    p != b0 and matched_in_block[p] == 0 for p in size_peers[b1]
                ):
                    continue  # an earlier fresh block of this size comes first
            if find(d0) == find(d1):
                continue  # both ends of this edge would land on one vertex
            clock.tick()
            trail: list = []
            alpha[d0], alpha[d1] = d1, d0
            snext[d0], snext[d1] = phi[d1], phi[d0]
            matched_in_block[b0] += 1
            matched_in_block[b1] += 1
            pair_count[key] = cnt + 1
            ok = union(d0, phi[d1], trail) and union(d1, phi[d0], trail)
            if ok:
                seen = set()
                for x in (d0, d1):
                    if vertex_id[x] == -1:
                        cycle = close_cycle(x)
                        if cycle is not None and vertex_id[cycle[0]] == -1:
                            root = min(cycle)
                            if root in seen:
                                continue
                            seen.add(root)
                            if not vertex_checks(cycle, trail):
                                ok = False
                                break
            if ok:
                step(lo)
            undo(trail)
            pair_count[key] = cnt
            if not cnt:
                del pair_count[key]
            matched_in_block[b0] -= 1
            matched_in_block[b1] -= 1
            alpha[d0] = alpha[d1] = -1
            snext[d0] = snext[d1] = -1
            if stop_after is not None and accepted[0] >= stop_after:
                exhausted[0] = False
                return

    step(0)
    return exhausted[0]


# -- witness search ---------------------------------------------------------------------


@dataclass(frozen=True)
class WitnessOutcome:
    """Result of a witness hunt.

    ``map`` is the first find, already canonical, or None.  ``complete``
    distinguishes a definitive answer (found, or certified non-existence
    over the whole budgeted range) from plain budget exhaustion.
    """

    map: Map | None
    complete: bool
    nodes: int
    seconds: float
    swept: tuple[str, ...]


def _witness_demands(m: Map, spec: WitnessSpec, sizes: tuple[int, int]) -> bool:
    if not m.is_simple_graph():
        return False
    if vertex_connectivity(m) != spec.connectivity:
        return False
    rep = dual(m)
    if "simple" in spec.dual_demands and not rep.simple:
        return False
    if "has-1-cut" in spec.dual_demands or "has-2-cut" in spec.dual_demands:
        dual_kappa = vertex_connectivity(rep.dual)
        if "has-1-cut" in spec.dual_demands and dual_kappa != 1:
            return False
        if "has-2-cut" in spec.dual_demands and dual_kappa > 2:
            return False
    if spec.pair_demand == "none":
        return True
    a, b = sizes
    for fa in m.faces:
        if fa.size != a:
            continue
        for fb in m.faces:
            if fb.index == fa.index or fb.size != b:
                continue
            if spec.pair_demand == "shares-two-vertices":
                va = set(walk_vertices(m, fa.darts))
                vb = set(walk_vertices(m, fb.darts))
                if len(va & vb) >= 2:
                    return True
            elif doubly_intersecting(m, fa, fb):
                return True
    return False


def search_witness(spec: WitnessSpec, budget: SearchBudget | None = None) -> WitnessOutcome:
    """Hunt for a witness map, sweeping face multisets by increasing edge count.

    For every split of the pair sum and every triangle count that fits the
    edge budget, exhausts all maps with that exact face multiset.  Returns
    the first find; when every sweep completes empty, non-existence is
    certified for the entire budgeted range.
    """
    clock = _Clock(budget)
    swept: list[str] = []
    hit: list[Map | None] = [None]
    complete = True

    combos = []
    for a in range(3, spec.pair_sum // 2 + 1):
        b = spec.pair_sum - a
        t = (a + b) % 2  # 2E = a + b + 3t must stay even
        while True:
            edges2 = a + b + 3 * t
            if edges2 // 2 > spec.max_edges:
                break
            combos.append((edges2 // 2, a, b, t))
            t += 2
    combos.sort()

    try:
        for edges, a, b, t in combos:
            # a simple graph needs E <= V(V-1)/2, and demanding kappa = c
            # forces minimum degree c, hence V <= 2E/c and V >= c+1
            max_v = min(spec.max_vertices, 2 * edges // spec.connectivity)
            if max_v * (max_v - 1) // 2 < edges or max_v < spec.connectivity + 1:
                swept.append(f"pair=({a},{b}) triangles={t}: infeasible")
                continue
            sizes = tuple(sorted((a, b) + (3,) * t, reverse=True))
            rules = _GlueRules(
                sizes=sizes,
                dual_simple="simple" in spec.dual_demands,
                min_degree=spec.connectivity,
                max_degree=max_v - 1,
                max_vertices=max_v,
            )

            def accept(m: Map) -> bool:
                if _witness_demands(m, spec, (a, b)):
                    hit[0] = m
                    return True
                return False

            finished = _run_glue_engine(rules, clock, accept, stop_after=1)
            swept.append(f"pair=({a},{b}) triangles={t}: " + ("done" if finished else "hit"))
            if hit[0] is not None:
                return WitnessOutcome(
                    canonical_form(hit[0]), True, clock.nodes, clock.seconds, tuple(swept)
                )
    except _OutOfBudget:
        complete = False
        swept.append("budget exhausted")
    return WitnessOutcome(None, complete, clock.nodes, clock.seconds, tuple(swept))


# -- the spanning 9-gon neighboring a single 15-gon --------------------------------------


@dataclass(frozen=True)
class NineCycleOutcome:
    maps: tuple[Map, ...]
    complete: bool
    nodes: int
    seconds: float


_NINE_SIZES = (15, 9, 3, 3, 3, 3, 3, 3)  # 2E = 42 forces E=21, F=8, genus 3


def search_empty_9_cycle(
    budget: SearchBudget | None = None, *, stop_at_first: bool = False
) -> NineCycleOutcome:
    """Find 9-vertex maps spanned by a 9-gon whose edges all border one 15-gon.

    The face multiset is fully determined: one 15-gon, the spanning 9-gon,
    and six triangles, hence 21 edges and genus 3.  The gluing engine runs
    with the 9-gon's sides forced into the 15-gon and dual multi-edges
    allowed only at the 9-gon.  Reports every find within budget unless
    told to stop at the first.  An empty result is no non-existence claim;
    only ``complete`` says whether the space was finished.
    """
    clock = _Clock(budget)
    rules = _GlueRules(
        sizes=_NINE_SIZES,
        dual_simple=True,
        exempt_block=1,
        forced_target=((1, 0),),
        min_degree=2,
        max_degree=8,
        max_vertices=9,
        spanning_block=1,
    )
    member_spec = EmptyCircuitSpec(k=9, mode="circuit", single_neighbor=True)
    found: dict[bytes, Map] = {}

    def accept(m: Map) -> bool:
        if m.vertex_count != 9 or genus(m) != 3:
            return False
        if empty_map_problems(m, member_spec):
            return False
        cm = canonical_form(m)
        code = canonical_code(cm)
        if code in found:
            return False
        found[code] = cm
        return True

    complete = True
    try:
        complete = _run_glue_engine(
            rules, clock, accept, stop_after=1 if stop_at_first else None
        )
    except _OutOfBudget:
        complete = False
    ordered = tuple(found[code] for code in sorted(found))
    return NineCycleOutcome(ordered, complete, clock.nodes, clock.seconds)


# -- complete graph embeddings -------------------------------------------------------------


_COMPLETE_CACHE: dict[int, Map] = {}


def triangular_complete_map(n: int) -> Map:
    """An all-triangle embedding of the complete graph on n vertices.

    Euler counting admits one only for n = 4 (the sphere) and n = 7 (the
    torus) in this range: n = 5 gives a fractional face count and n = 6 an
    odd Euler characteristic.  The result is cached and canonical, so
    repeated calls are cheap and deterministic.
    """
    if n in _COMPLETE_CACHE:
        return _COMPLETE_CACHE[n]
    if n not in (4, 7):
        raise SearchError(f"no all-triangle embedding of the complete graph on {n} vertices")
    edges = n * (n - 1) // 2
    degree = n - 1
    rules = _GlueRules(
        sizes=(3,) * (2 * edges // 3),
        min_degree=degree,
        max_degree=degree,
        max_vertices=n,
    )
    candidates: list[Map] = []

    def accept(m: Map) -> bool:
        if m.vertex_count != n or not m.is_simple_graph():
            return False
        candidates.append(m)
        return True

    # a handful of completions suffices; the smallest canonical code wins
    _run_glue_engine(rules, _Clock(None), accept, stop_after=9)
    if not candidates:
        raise RuntimeError(f"found no all-triangle embedding for n={n}")
    best = min((canonical_form(m) for m in candidates), key=canonical_code)
    assert genus(best) == (0 if n == 4 else 1)
    assert vertex_connectivity(best) == degree
    _COMPLETE_CACHE[n] = best
    return best


# -- the small-map corpus --------------------------------------------------------------------


_CORPUS_CACHE: dict[int, tuple[Map, ...]] = {}


def enumerate_connected_maps(max_edges: int) -> tuple[Map, ...]:
    """Every connected simple map with 1..max_edges edges, one per class.

    Grown by edge augmentation: each map with E+1 edges arises from one
    with E edges by attaching a fresh leaf into some rotation gap or by
    joining two non-adjacent vertices, because deleting a leaf edge or a
    non-bridge edge of any connected map keeps it connected.  Chiral pairs
    appear as two classes.
    """
    if max_edges < 1:
        raise SearchError("need at least one edge")
    if max_edges in _CORPUS_CACHE:
        return _CORPUS_CACHE[max_edges]
    base = canonical_form(from_rotations([[1], [0]]))
    levels: list[dict[bytes, Map]] = [{canonical_code(base): base}]
    while len(levels) < max_edges:
        grown: dict[bytes, Map] = {}
        for m in levels[-1].values():
            nl = [[m.vertex_of[m.reverse[d]] for d in cycle] for cycle in m.rotations]
            V = len(nl)
            children = []
            for u in range(V):
                for slot in range(len(nl[u])):
                    rot = nl[u][:slot] + [V] + nl[u][slot:]
                    children.append([*nl[:u], rot, *nl[u + 1 :], [u]])
            for u in range(V):
                adjacent = set(nl[u])
                for w in range(u + 1, V):
                    if w in adjacent:
                        continue
                    for su in range(len(nl[u])):
                        for sw in range(len(nl[w])):
                            rows = [list(r) for r in nl]
                            rows[u].insert(su, w)
                            rows[w].insert(sw, u)
                            children.append(rows)
            for rows in children:
                child = canonical_form(from_rotations(rows))
                grown.setdefault(canonical_code(child), child)
        levels.append(grown)
    merged: list[Map] = []
    for level in levels:
        merged.extend(level[code] for code in sorted(level))
    result = tuple(merged)
    _CORPUS_CACHE[max_edges] = result
    return result
