import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import connected_simple_maps
from ormaps.connectivity import (
    adjacency_of,
    cut_inventory,
    find_cutsets,
    is_separating_cycle,
    vertex_connectivity,
    vertex_connectivity_bruteforce,
    vertex_connectivity_flow,
)
from ormaps.dual import dual
from test_dual import make_bowtie, make_dumbbell, make_octahedron


def complete_graph(n):
    return [set(range(n)) - {v} for v in range(n)]


def cycle_graph(n):
    return [{(v - 1) % n, (v + 1) % n} for v in range(n)]


def path_graph(n):
    return [{w for w in (v - 1, v + 1) if 0 <= w < n} for v in range(n)]


def petersen_graph():
    adj = [set() for _ in range(10)]
    for i in range(5):
        pairs = [(i, (i + 1) % 5), (i, 5 + i), (5 + i, 5 + (i + 2) % 5)]
        for a, b in pairs:
            adj[a].add(b)
            adj[b].add(a)
    return adj


BOTH_ROUTES = [vertex_connectivity_bruteforce, vertex_connectivity_flow]


class TestVertexConnectivity:
    @pytest.mark.parametrize("kappa_fn", BOTH_ROUTES)
    def test_small_named_graphs(self, kappa_fn):
        assert kappa_fn(complete_graph(4)) == 3
        assert kappa_fn(cycle_graph(5)) == 2
        assert kappa_fn(path_graph(4)) == 1
        assert kappa_fn(petersen_graph()) == 3

    @pytest.mark.parametrize("kappa_fn", BOTH_ROUTES)
    def test_complete_graph_convention(self, kappa_fn):
        for n in range(2, 7):
            assert kappa_fn(complete_graph(n)) == n - 1

    def test_map_inputs(self, tetrahedron):
        assert vertex_connectivity(tetrahedron) == 3
        assert vertex_connectivity(make_bowtie()) == 1
        assert vertex_connectivity(make_octahedron()) == 4
        assert vertex_connectivity(dual(tetrahedron).dual) == 3

    @pytest.mark.parametrize("kappa_fn", BOTH_ROUTES + [vertex_connectivity])
    def test_disconnected_rejected(self, kappa_fn):
        with pytest.raises(ValueError, match="disconnected"):
            kappa_fn([{1}, {0}, {3}, {2}])

    @pytest.mark.parametrize("kappa_fn", BOTH_ROUTES)
    def test_single_vertex_rejected(self, kappa_fn):
        with pytest.raises(ValueError):
            kappa_fn([set()])

    @given(connected_simple_maps(max_vertices=8, max_extra_edges=8))
    @settings(max_examples=120, deadline=None)
    def test_flow_equals_bruteforce(self, m):
        assert vertex_connectivity_flow(m) == vertex_connectivity_bruteforce(m)

    @given(connected_simple_maps(max_vertices=7, max_extra_edges=6))
    @settings(max_examples=60, deadline=None)
    def test_kappa_at_most_min_degree(self, m):
        kappa = vertex_connectivity(m)
        assert kappa <= min(m.degree(v) for v in range(m.vertex_count))


class TestFindCutsets:
    def test_bowtie_wedge_vertex(self):
        assert find_cutsets(make_bowtie(), 1) == [frozenset({0})]

    def test_three_connected_graph_has_no_small_cuts(self, tetrahedron):
        assert find_cutsets(dual(tetrahedron).dual, 2) == []

    def test_cycle_cutsets_are_nonadjacent_pairs(self):
        cuts = find_cutsets(cycle_graph(5), 2)
        assert len(cuts) == 5
        assert all(len(c) == 2 for c in cuts)
        adj = adjacency_of(cycle_graph(5))
        for c in cuts:
            a, b = sorted(c)
            assert b not in adj[a]

    def test_inclusion_minimality(self):
        cuts = find_cutsets(make_dumbbell(), 2)
        assert frozenset({2}) in cuts and frozenset({3}) in cuts
        for c in cuts:
            assert not (frozenset({2}) < c or frozenset({3}) < c)

    def test_deterministic_order(self):
        cuts = find_cutsets(cycle_graph(6), 2)
        assert cuts == sorted(cuts, key=lambda c: (len(c), sorted(c)))

    def test_cap_truncates(self):
        cuts = find_cutsets(cycle_graph(6), 2, cap=3)
        assert len(cuts) == 3


class TestCutInventory:
    def test_cycle(self):
        inv = cut_inventory(cycle_graph(5))
        assert inv.connectivity == 2
        assert len(inv.min_cuts) == 5
        assert not inv.capped

    def test_complete_graph_has_no_cuts(self):
        inv = cut_inventory(complete_graph(4))
        assert inv.connectivity == 3
        assert inv.min_cuts == ()

    def test_capped_flag(self):
        inv = cut_inventory(cycle_graph(6), cap=2)
        assert inv.capped
        assert len(inv.min_cuts) == 2

    @given(connected_simple_maps(max_vertices=6, max_extra_edges=5))
    @settings(max_examples=50, deadline=None)
    def test_every_listed_cut_disconnects(self, m):
        inv = cut_inventory(m)
        adj = m.adjacency
        for cut in inv.min_cuts:
            assert len(cut) == inv.connectivity
            remaining = [v for v in range(len(adj)) if v not in cut]
            seen = {remaining[0]}
            stack = [remaining[0]]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in cut and w not in seen:
                        seen.add(w)
                        stack.append(w)
            assert len(seen) < len(remaining)

    @given(connected_simple_maps(max_vertices=6, max_extra_edges=5))
    @settings(max_examples=50, deadline=None)
    def test_noncomplete_graphs_list_at_least_one_cut(self, m):
        inv = cut_inventory(m)
        n = m.vertex_count
        if any(len(m.adjacency[v]) < n - 1 for v in range(n)):
            assert inv.min_cuts


class TestIsSeparatingCycle:
    def test_octahedron_equator(self):
        assert is_separating_cycle(make_octahedron(), [1, 2, 3, 4])

    def test_tetrahedron_facial_triangle(self, tetrahedron):
        assert not is_separating_cycle(tetrahedron, tetrahedron.faces[0])

    def test_bowtie_triangle_leaves_other_triangle_intact(self):
        assert not is_separating_cycle(make_bowtie(), [0, 1, 2])

    def test_rejects_non_cycles(self, tetrahedron):
        with pytest.raises(ValueError, match="at least 3"):
            is_separating_cycle(tetrahedron, [0, 1])
        with pytest.raises(ValueError, match="repeats"):
            is_separating_cycle(tetrahedron, [0, 1, 0, 2])
        with pytest.raises(ValueError, match="not adjacent"):
            is_separating_cycle(make_bowtie(), [1, 2, 3])


def test_adjacency_of_drops_loops():
    adj = adjacency_of([{0, 1}, {0}])
    assert adj == (frozenset({1}), frozenset({0}))
