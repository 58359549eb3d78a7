from math import comb

import pytest
from hypothesis import given, strategies as st

from turan.combinat import (
    CompleteHypergraph,
    EdgeSet,
    WebSpec,
    WheelSpec,
    clique_edge_set,
    cyclic,
    cyclic_span,
    enumerate_cliques,
    is_clique_free,
    rank_edge,
    unrank_edge,
    web_clique,
    web_edge_set,
    web_edge_span,
    wheel_clique,
    wheel_edge_set,
    wheel_edge_span,
    window_edge_set,
)
from turan.config import max_edges, set_max_edges
from turan.errors import CapExceededError

from strategies import clique_free_sets, edge_sets


class TestRanking:
    @pytest.mark.parametrize(
        "edge, expected",
        [((1, 2), 0), ((1, 3), 1), ((2, 3), 2), ((1, 4), 3), ((1, 2, 3), 0), ((1, 2, 4), 1), ((3, 4, 5), 9)],
    )
    def test_rank_examples(self, edge, expected):
        assert rank_edge(edge) == expected

    @pytest.mark.parametrize("n", range(2, 13))
    @pytest.mark.parametrize("r", range(1, 5))
    def test_round_trip(self, n, r):
        if r > n:
            return
        for k in range(comb(n, r)):
            e = unrank_edge(k, n, r)
            assert len(e) == r and list(e) == sorted(set(e)) and e[-1] <= n
            assert rank_edge(e) == k

    def test_colex_is_stable_under_growing_n(self):
        small = CompleteHypergraph(5, 2).edges()
        big = CompleteHypergraph(9, 2).edges()
        assert big[: len(small)] == small

    @pytest.mark.parametrize("bad", [(2, 1), (1, 1), (0, 2), ()])
    def test_malformed_edges(self, bad):
        with pytest.raises(ValueError):
            rank_edge(bad)

    @pytest.mark.parametrize("k", [-1, 10])
    def test_unrank_out_of_range(self, k):
        with pytest.raises(ValueError):
            unrank_edge(k, 5, 2)


class TestCompleteHypergraph:
    def test_edge_count(self):
        assert CompleteHypergraph(7, 3).edge_count == 35

    def test_cap(self):
        with pytest.raises(CapExceededError):
            CompleteHypergraph(100, 2)

    def test_cap_override_env(self, monkeypatch):
        monkeypatch.setenv("TURAN_MAX_EDGES", "5")
        assert max_edges() == 5
        with pytest.raises(CapExceededError):
            CompleteHypergraph(4, 2)

    def test_cap_override_explicit(self):
        set_max_edges(10_000)
        try:
            assert CompleteHypergraph(100, 2).edge_count == 4950
        finally:
            set_max_edges(None)

    @pytest.mark.parametrize("n, r", [(3, 1), (2, 3)])
    def test_invalid(self, n, r):
        with pytest.raises(ValueError):
            CompleteHypergraph(n, r)


class TestEdgeSet:
    def test_construction_and_order(self):
        s = EdgeSet.from_edges(4, 2, [(2, 3), (1, 2)])
        assert s.edges() == [(1, 2), (2, 3)]
        assert s.ranks() == [0, 2]
        assert len(s) == 2 and (1, 2) in s and (1, 3) not in s
        assert s.vertices() == [1, 2, 3]

    def test_bits_out_of_range(self):
        with pytest.raises(ValueError):
            EdgeSet(3, 2, 1 << 3)

    def test_edge_outside_ambient(self):
        with pytest.raises(ValueError):
            EdgeSet.from_edges(3, 2, [(1, 4)])

    def test_set_algebra(self):
        a = EdgeSet.from_edges(4, 2, [(1, 2), (1, 3)])
        b = EdgeSet.from_edges(5, 2, [(1, 3), (4, 5)])
        assert (a | b).edges() == [(1, 2), (1, 3), (4, 5)]
        assert (a & b).edges() == [(1, 3)]
        assert (a - b).edges() == [(1, 2)]
        assert (a & b).issubset(b)
        assert (a | b).n == 5

    def test_mixed_uniformity_rejected(self):
        with pytest.raises(ValueError):
            EdgeSet.complete(4, 2) | EdgeSet.complete(4, 3)

    def test_with_without(self):
        s = EdgeSet.complete(4, 2).without_edge((1, 2))
        assert len(s) == 5 and (1, 2) not in s
        assert s.with_edge((1, 2)) == EdgeSet.complete(4, 2)

    def test_embed(self):
        s = EdgeSet.complete(4, 2)
        assert s.embed(6).bits == s.bits and s.embed(6).n == 6
        with pytest.raises(ValueError):
            EdgeSet.complete(6, 2).embed(4)

    def test_json_round_trip(self):
        s = EdgeSet.from_edges(5, 3, [(1, 2, 3), (2, 4, 5)])
        d = s.to_dict()
        assert d == {"n": 5, "r": 3, "edges": [[1, 2, 3], [2, 4, 5]]}
        assert EdgeSet.from_dict(d) == s

    @given(edge_sets(), edge_sets())
    def test_algebra_properties(self, x, y):
        n = max(x.n, y.n)
        x, y = x.embed(n), y.embed(n)
        assert len(x | y) + len(x & y) == len(x) + len(y)
        assert (x - y) & y == EdgeSet(n, 2, 0)
        assert x.issubset(x | y)


class TestCliques:
    @pytest.mark.parametrize("n, r, a, count", [(4, 2, 3, 4), (5, 2, 4, 5), (6, 3, 4, 15), (8, 2, 5, 56)])
    def test_counts(self, n, r, a, count):
        qs = enumerate_cliques(n, r, a)
        assert len(qs) == count == comb(n, a)
        assert len(set(qs)) == count and all(len(q) == a for q in qs)

    def test_colex_order(self):
        assert enumerate_cliques(4, 2, 3) == [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]

    def test_a_above_n_is_empty(self):
        assert enumerate_cliques(4, 2, 5) == []

    def test_a_at_most_r_rejected(self):
        with pytest.raises(ValueError):
            enumerate_cliques(5, 3, 3)

    @pytest.mark.parametrize(
        "clique, r, edges",
        [
            ((1, 2, 3), 2, [(1, 2), (1, 3), (2, 3)]),
            ((1, 2, 3, 4), 3, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]),
            ((2, 4, 5, 6), 2, [(2, 4), (2, 5), (4, 5), (2, 6), (4, 6), (5, 6)]),
        ],
    )
    def test_clique_edge_set(self, clique, r, edges):
        assert clique_edge_set(clique, r).edges() == edges

    def test_clique_free_examples(self):
        k4 = EdgeSet.complete(4, 2)
        assert is_clique_free(k4.without_edge((1, 2)), 4)
        assert not is_clique_free(k4, 4)
        k22 = EdgeSet.from_edges(4, 2, [(1, 3), (1, 4), (2, 3), (2, 4)])
        assert is_clique_free(k22, 3)

    @given(clique_free_sets(a=3))
    def test_down_monotone(self, s):
        assert is_clique_free(s, 3)
        for e in s.edges():
            assert is_clique_free(s.without_edge(e), 3)

    @given(edge_sets(n_min=4, n_max=6, r=3))
    def test_clique_free_matches_definition(self, s):
        expected = not any(clique_edge_set(q, 3, s.n).issubset(s) for q in enumerate_cliques(s.n, 3, 4))
        assert is_clique_free(s, 4) == expected


class TestCycles:
    def test_cyclic(self):
        assert [cyclic(i, 5) for i in (0, 1, 5, 6, 11)] == [5, 1, 5, 1, 1]

    @pytest.mark.parametrize("vs, m, span", [((1, 2), 5, 2), ((5, 1), 5, 2), ((1, 3), 7, 3), ((2, 6), 7, 4), ((3,), 5, 1)])
    def test_span(self, vs, m, span):
        assert cyclic_span(vs, m) == span


class TestWheels:
    @pytest.mark.parametrize("l, a, r, size", [(8, 4, 3, 21), (6, 3, 2, 10), (8, 3, 2, 14), (8, 4, 2, 21)])
    def test_sizes(self, l, a, r, size):
        assert len(wheel_edge_set(WheelSpec(l, a, r))) == size

    def test_w6_spokes_and_rim(self):
        s = wheel_edge_set(WheelSpec(6, 3, 2))
        spokes = [e for e in s.edges() if 6 in e]
        assert len(spokes) == 5
        assert sorted(e for e in s.edges() if 6 not in e) == [(1, 2), (1, 5), (2, 3), (3, 4), (4, 5)]

    @pytest.mark.parametrize("l, a, r, i, q", [(6, 3, 2, 1, (1, 2, 6)), (6, 3, 2, 5, (1, 5, 6)), (8, 4, 3, 7, (1, 2, 7, 8))])
    def test_clique_labels(self, l, a, r, i, q):
        assert wheel_clique(WheelSpec(l, a, r), i) == q

    def test_clique_index_range(self):
        with pytest.raises(ValueError):
            wheel_clique(WheelSpec(6, 3, 2), 6)

    @pytest.mark.parametrize("l, a, r", [(4, 3, 2), (6, 4, 2), (6, 3, 3), (6, 3, 1)])
    def test_spec_invariants(self, l, a, r):
        with pytest.raises(ValueError):
            WheelSpec(l, a, r)

    @given(st.integers(2, 5).flatmap(lambda r: st.tuples(st.just(r), st.integers(r + 1, 6))).flatmap(
        lambda ra: st.tuples(st.just(ra[0]), st.just(ra[1]), st.integers(2 * ra[1] - 1, 12))))
    def test_cardinality_and_spans(self, rla):
        r, a, l = rla
        spec = WheelSpec(l, a, r)
        s = wheel_edge_set(spec)
        if len(s) > 4096:
            return
        assert len(s) == (l - 1) * comb(a - 1, r - 1)
        cliques = [clique_edge_set(wheel_clique(spec, i), r, l) for i in range(1, l)]
        for e in s.edges():
            beta = wheel_edge_span(spec, e)
            assert sum(e in q for q in cliques) == a - beta

    def test_cap(self):
        with pytest.raises(CapExceededError):
            wheel_edge_set(WheelSpec(40, 5, 4))


class TestWebs:
    @pytest.mark.parametrize("l, a, r, size", [(7, 3, 2, 14), (9, 4, 3, 27), (6, 3, 2, 12)])
    def test_sizes(self, l, a, r, size):
        assert len(web_edge_set(WebSpec(l, a, r))) == size

    def test_w7_edges(self):
        s = web_edge_set(WebSpec(7, 3, 2))
        expected = {tuple(sorted((i, (i + d - 1) % 7 + 1))) for i in range(1, 8) for d in (1, 2)}
        assert set(s.edges()) == expected

    def test_figure_web_outside_web_spec(self):
        # 3-uniform web on 7 vertices with windows of 4 consecutive vertices
        with pytest.raises(ValueError):
            WebSpec(7, 4, 3)
        s = window_edge_set(7, 7, 4, 3)
        assert len(s) == 7 * comb(3, 2)
        assert all(cyclic_span(e, 7) <= 4 for e in s.edges())

    def test_clique_labels(self):
        spec = WebSpec(7, 3, 2)
        assert web_clique(spec, 1) == (1, 2, 3)
        assert web_clique(spec, 7) == (1, 2, 7)

    @given(st.integers(2, 4).flatmap(lambda r: st.tuples(st.just(r), st.integers(r + 1, 5))).flatmap(
        lambda ra: st.tuples(st.just(ra[0]), st.just(ra[1]), st.integers(2 * ra[1], 12))))
    def test_cardinality_and_windows(self, rla):
        r, a, l = rla
        spec = WebSpec(l, a, r)
        s = web_edge_set(spec)
        assert len(s) == l * comb(a - 1, r - 1)
        assert all(web_edge_span(spec, e) <= a for e in s.edges())
