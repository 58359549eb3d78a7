from fractions import Fraction
from math import comb, floor

import pytest
from hypothesis import given, strategies as st

from turan.combinat import EdgeSet, WheelSpec, is_clique_free, wheel_edge_set
from turan.errors import CapExceededError
from turan.extremal import (
    ex_complete,
    ex_exact,
    ex_oracle,
    t_table,
    turan_bound,
    turan_graph,
    turan_part_sizes,
)

from strategies import edge_sets


def brute_force_max(support, a, weights=None):
    """Exhaustive maximum over all subsets of the support (independent of the oracle)."""
    ranks = support.ranks()
    w = weights or {}
    best, best_sets = -1, []
    for sub in range(1 << len(ranks)):
        bits = 0
        val = 0
        for i, k in enumerate(ranks):
            if sub >> i & 1:
                bits |= 1 << k
                val += w.get(k, 1)
        if val < best:
            continue
        x = EdgeSet(support.n, support.r, bits)
        if is_clique_free(x, a):
            if val > best:
                best, best_sets = val, [x]
            else:
                best_sets.append(x)
    return best, best_sets


class TestTable:
    def test_a3(self):
        assert [t for _, t in t_table(3, 8).rows] == [2, 4, 6, 9, 12, 16]

    def test_a4(self):
        table = t_table(4, 8)
        assert table[4] == 5 and table[8] == 21

    def test_serialization(self):
        table = t_table(4, 6)
        assert table.to_dict() == {"a": 4, "rows": [{"n": 4, "t": 5}, {"n": 5, "t": 8}, {"n": 6, "t": 12}]}
        assert table.to_csv() == "n,t\n4,5\n5,8\n6,12\n"

    def test_lookup_outside(self):
        with pytest.raises(KeyError):
            t_table(4, 6)[7]

    @pytest.mark.parametrize("a, n_max", [(2, 5), (5, 4)])
    def test_invalid(self, a, n_max):
        with pytest.raises(ValueError):
            t_table(a, n_max)

    def test_big_integers_exact(self):
        # well past any fixed-width range; Python ints do not wrap
        t = t_table(3, 20_000)[20_000]
        assert t == 20_000 ** 2 // 4


class TestExExact:
    @pytest.mark.parametrize("n, a, value", [(7, 3, 12), (8, 4, 21), (5, 5, 9), (6, 6, 14)])
    def test_examples(self, n, a, value):
        assert ex_exact(n, a) == value

    @pytest.mark.parametrize("n", range(3, 40))
    def test_mantel(self, n):
        assert ex_exact(n, 3) == n * n // 4

    @pytest.mark.parametrize("a", range(3, 8))
    @pytest.mark.parametrize("n", range(3, 30))
    def test_equals_turan_graph_size(self, n, a):
        if n < a:
            return
        assert ex_exact(n, a) == len(turan_graph(n, a))

    @given(st.integers(3, 12).flatmap(lambda a: st.tuples(st.just(a), st.integers(a, 60))))
    def test_monotone_chain(self, an):
        a, n = an
        e0, e1 = ex_exact(n, a), ex_exact(n + 1, a)
        assert e1 <= floor(Fraction(n + 1, n - 1) * e0)
        assert e0 <= floor(Fraction(n, n + 2) * e1)

    @given(st.integers(3, 10).flatmap(lambda a: st.tuples(st.just(a), st.integers(a, 80))))
    def test_turan_bound(self, an):
        a, n = an
        bound = turan_bound(n, a)
        assert ex_exact(n, a) <= bound
        assert (ex_exact(n, a) == bound) == (n % (a - 1) == 0)


class TestTuranGraph:
    def test_c4(self):
        assert turan_graph(4, 3).edges() == [(1, 3), (2, 3), (1, 4), (2, 4)]

    def test_k33(self):
        assert len(turan_graph(6, 3)) == 9

    def test_parts(self):
        assert turan_part_sizes(8, 4) == [3, 3, 2]
        assert len(turan_graph(8, 4)) == 21

    @pytest.mark.parametrize("n, a", [(n, a) for a in range(3, 6) for n in range(a, 11)])
    def test_clique_free_and_balanced(self, n, a):
        g = turan_graph(n, a)
        assert is_clique_free(g, a)
        sizes = turan_part_sizes(n, a)
        assert max(sizes) - min(sizes) <= 1 and sum(sizes) == n and len(sizes) == a - 1

    def test_bound_values(self):
        assert turan_bound(6, 3) == 9
        assert turan_bound(7, 3) == Fraction(49, 4)
        assert turan_bound(8, 4) == Fraction(64, 3)


class TestOracle:
    def test_k5(self):
        assert ex_oracle(EdgeSet.complete(5, 2), 3).value == 6

    @pytest.mark.parametrize("a", range(3, 7))
    def test_single_clique(self, a):
        res = ex_oracle(EdgeSet.complete(a, 2), a)
        assert res.value == comb(a, 2) - 1
        assert len(res.optima) == comb(a, 2)

    def test_wheel(self):
        assert ex_oracle(wheel_edge_set(WheelSpec(6, 3, 2)), 3).value == 7

    @pytest.mark.parametrize("n, a, count", [(4, 3, 3), (6, 3, 10), (8, 3, 35), (9, 3, 126), (8, 4, 280)])
    def test_optimum_counts(self, n, a, count):
        # counts of labelled Turán graphs: multinomial / symmetries of equal parts
        res = ex_oracle(EdgeSet.complete(n, 2), a)
        assert len(res.optima) == count
        assert all(len(x) == res.value and is_clique_free(x, a) for x in res.optima)
        assert [x.bits for x in res.optima] == sorted(x.bits for x in res.optima)

    def test_weighted(self):
        # doubling vertex 1 of K_4: weight 2 at vertex 1; max is ex(5,3) = 6
        weights = {(1, v): 2 for v in range(2, 5)}
        assert ex_oracle(EdgeSet.complete(4, 2), 3, weights).value == 6

    def test_zero_weights_dropped(self):
        res = ex_oracle(EdgeSet.complete(3, 2), 3, {0: 0})
        assert res.value == 2
        assert all(0 not in x.ranks() for x in res.optima)

    def test_bad_weights(self):
        with pytest.raises(ValueError):
            ex_oracle(EdgeSet.complete(3, 2), 3, {0: -1})
        with pytest.raises(ValueError):
            ex_oracle(EdgeSet.complete(3, 2), 3, {(1, 4): 1})

    def test_truncation(self):
        res = ex_oracle(EdgeSet.complete(6, 2), 3, max_optima=4)
        assert res.truncated and len(res.optima) == 4

    def test_cap(self):
        with pytest.raises(CapExceededError):
            ex_oracle(EdgeSet.complete(17, 2), 3)

    def test_hypergraph(self):
        assert ex_complete(5, 4, 3) == 7
        assert ex_complete(4, 4, 3) == 3
        assert ex_complete(3, 4, 3) == 1

    def test_find_all_false_same_value(self):
        k = EdgeSet.complete(8, 2)
        assert ex_oracle(k, 4, find_all=False).value == ex_oracle(k, 4).value

    @given(edge_sets(n_min=3, n_max=6), st.sampled_from([3, 4]))
    def test_matches_brute_force(self, support, a):
        if len(support) > 12:
            support = EdgeSet.from_ranks(support.n, 2, support.ranks()[:12])
        best, sets = brute_force_max(support, a)
        res = ex_oracle(support, a)
        assert res.value == best
        assert sorted(x.bits for x in res.optima) == sorted(x.bits for x in sets)

    @given(edge_sets(n_min=4, n_max=5), st.data())
    def test_weighted_matches_brute_force(self, support, data):
        ranks = support.ranks()
        weights = {k: data.draw(st.integers(0, 4)) for k in ranks}
        best, _ = brute_force_max(support, 3, weights)
        assert ex_oracle(support, 3, weights).value == max(best, 0)
