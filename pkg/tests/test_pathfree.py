from __future__ import annotations

from itertools import combinations

import brute
import pytest
from conftest import hypergraphs
from hypothesis import given
from hypothesis import strategies as st

from loosepath import constructions as con
from loosepath.hypercore import Hypergraph
from loosepath.pathfree import (
    contains_triangle,
    find_loose_path,
    find_triangle,
    is_p2_free,
    is_p33_free,
    is_p42_free,
    is_star_union,
    star_groups,
)


def K(k, n):
    return Hypergraph(k, n, tuple(combinations(range(n), k)))


class TestFindLoosePath:
    def test_two_edges_one_shared_vertex(self):
        w = find_loose_path(Hypergraph(4, 7, ((0, 1, 2, 3), (3, 4, 5, 6))), 2)
        assert w is not None and w.junctions == (3,)
        w.validate(4)

    def test_two_star_has_none(self):
        assert find_loose_path(con.two_star(range(2, 12), (0, 1)), 2) is None

    def test_complete_k3_7(self):
        w = find_loose_path(K(3, 7), 3)
        assert w is not None
        w.validate(3)

    def test_length_one(self):
        assert find_loose_path(Hypergraph(3, 3), 1) is None
        assert find_loose_path(Hypergraph(3, 3, ((0, 1, 2),)), 1).edges == ((0, 1, 2),)

    def test_bad_length(self):
        with pytest.raises(ValueError):
            find_loose_path(Hypergraph(3, 3), 0)

    def test_lexicographically_least(self):
        H = Hypergraph(3, 9, ((0, 1, 2), (2, 3, 4), (4, 5, 6), (6, 7, 8)))
        assert find_loose_path(H, 2).edges == ((0, 1, 2), (2, 3, 4))

    @given(hypergraphs(3, max_n=8, max_edges=9), st.integers(2, 3))
    def test_agrees_with_naive_k3(self, H, length):
        w = find_loose_path(H, length)
        assert (w is not None) == brute.has_path(H.edges, 3, length)
        if w is not None:
            w.validate(3)
            assert all(e in H for e in w.edges)

    @given(hypergraphs(4, max_n=9, max_edges=9), st.integers(2, 3))
    def test_agrees_with_naive_k4(self, H, length):
        w = find_loose_path(H, length)
        assert (w is not None) == brute.has_path(H.edges, 4, length)

    @given(hypergraphs(3, max_n=8, max_edges=8), st.data())
    def test_monotone_under_supergraphs(self, H, data):
        pool = [e for e in combinations(range(H.n), 3) if e not in H]
        extra = data.draw(st.lists(st.sampled_from(pool), unique=True, max_size=4)) if pool else []
        bigger = H.with_edges(H.edges + tuple(extra))
        if find_loose_path(H, 3) is not None:
            assert find_loose_path(bigger, 3) is not None


class TestFastChecks:
    def test_examples(self):
        assert is_p42_free(con.thick_clique(20))
        assert is_p42_free(con.f413())
        assert not is_p42_free(Hypergraph(4, 7, ((0, 1, 2, 3), (3, 4, 5, 6))))

    def test_wrong_uniformity(self):
        with pytest.raises(ValueError):
            is_p42_free(Hypergraph(3, 3))
        with pytest.raises(ValueError):
            is_p33_free(Hypergraph(4, 4))

    @given(hypergraphs(4, max_n=9, max_edges=12))
    def test_p42_fast_matches_search(self, H):
        assert is_p42_free(H) == (find_loose_path(H, 2) is None) == (not brute.has_path(H.edges, 4, 2))

    @given(hypergraphs(3, max_n=8, max_edges=10))
    def test_p32_is_pairwise(self, H):
        pairwise = not any(len(set(a) & set(b)) == 1 for a, b in combinations(H.edges, 2))
        assert is_p2_free(H) == pairwise == (not brute.has_path(H.edges, 3, 2))

    @given(hypergraphs(3, max_n=8, max_edges=12))
    def test_p33_fast_matches_naive(self, H):
        assert is_p33_free(H) == (not brute.has_path(H.edges, 3, 3))

    def test_p33_on_large_free_graphs(self):
        assert is_p33_free(con.max_quasi_bipartite(60))
        assert is_p33_free(con.star(range(1, 40), 0))
        assert not is_p33_free(K(3, 7))


class TestTriangle:
    def test_definition_instance(self):
        H = Hypergraph(3, 6, ((0, 1, 2), (2, 3, 4), (0, 4, 5)))
        assert contains_triangle(H)
        es = find_triangle(H)
        assert sorted(es) == list(H.edges)

    def test_quasi_bipartite_has_none(self):
        for s in range(1, 5):
            for t in range(1, 6):
                assert not contains_triangle(con.quasi_bipartite(s, t))

    def test_complete_star(self):
        assert not contains_triangle(con.star(range(1, 12), 0))

    def test_wrong_uniformity(self):
        with pytest.raises(ValueError):
            contains_triangle(Hypergraph(4, 4))

    @given(hypergraphs(3, max_n=8, max_edges=9))
    def test_matches_naive(self, H):
        naive = False
        for a, b, c in combinations(H.edges, 3):
            ab, bc, ca = set(a) & set(b), set(b) & set(c), set(c) & set(a)
            if len(ab) == len(bc) == len(ca) == 1 and len(ab | bc | ca) == 3:
                naive = True
                break
        assert contains_triangle(H) == naive


class TestStarUnion:
    def test_complete_two_star(self):
        assert is_star_union(con.two_star(range(2, 10), (0, 1)), 1, 2)

    def test_joined_stars(self):
        a = con.two_star(range(2, 8), (0, 1), 16)
        b = [tuple(v + 8 for v in e) for e in a.edges]
        H = Hypergraph(4, 16, a.edges + tuple(b) + ((0, 1, 8, 9),))
        for t in (1, 2, 3, 4, 10):
            assert not is_star_union(H, t, 2)

    def test_empty(self):
        assert is_star_union(Hypergraph(4, 10), 0, 2)
        assert is_star_union(Hypergraph(3, 10), 4, 1)

    def test_bad_centre_size(self):
        with pytest.raises(ValueError):
            is_star_union(Hypergraph(4, 4), 4, 1)
        with pytest.raises(ValueError):
            is_star_union(Hypergraph(3, 4), 4, 2)

    def test_groups_report_centres(self):
        g = star_groups(con.star(range(1, 5), 0, 10), 1)
        assert [c for c, _ in g] == [(0,)]

    @given(hypergraphs(3, max_n=7, max_edges=6), st.integers(1, 3))
    def test_matches_naive_k3(self, H, t):
        assert is_star_union(H, t, 1) == brute.star_union(H.edges, H.n, t, 1)

    @given(hypergraphs(4, max_n=8, max_edges=6), st.integers(1, 2))
    def test_matches_naive_k4(self, H, t):
        assert is_star_union(H, t, 2) == brute.star_union(H.edges, H.n, t, 2)
