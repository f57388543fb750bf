from __future__ import annotations

from itertools import combinations

import brute
import pytest
from conftest import hypergraphs
from hypothesis import given
from hypothesis import strategies as st

from loosepath import constructions as con
from loosepath.hypercore import (
    Hypergraph,
    HypergraphFormatError,
    component_graphs,
    components,
    degree,
    dumps,
    load,
    loads,
    max_degree,
    signature,
    store,
    twins,
)


def K(k, n):
    return Hypergraph(k, n, tuple(combinations(range(n), k)))


class TestDegrees:
    def test_single_edge(self):
        assert degree(Hypergraph(4, 4, ((0, 1, 2, 3),)), 0) == 1

    def test_complete_k4_5(self):
        H = K(4, 5)
        assert [degree(H, v) for v in range(5)] == [4] * 5

    def test_thick_clique_10(self):
        H = con.thick_clique(10)
        assert {degree(H, v) for v in range(10)} == {4}

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            degree(Hypergraph(4, 4), 4)

    def test_max_degree_values(self):
        assert max_degree(Hypergraph(4, 5)) == 0
        assert max_degree(con.two_star(range(2, 8), (0, 1))) == 15
        assert max_degree(con.quasi_bipartite(2, 4)) == 4

    @given(hypergraphs(4, max_edges=12))
    def test_handshake(self, H):
        assert sum(H.degrees) == H.k * H.m


class TestValidation:
    @pytest.mark.parametrize("edges", [((0, 1, 2),), ((0, 1, 1, 2),), ((0, 1, 2, 9),), ((0, 1, 2, 3), (3, 2, 1, 0))])
    def test_rejects_bad_edges(self, edges):
        with pytest.raises(HypergraphFormatError):
            Hypergraph(4, 6, edges)

    def test_canonical_order(self):
        H = Hypergraph(3, 5, ((4, 3, 2), (2, 1, 0)))
        assert H.edges == ((0, 1, 2), (2, 3, 4))
        assert (3, 4, 2) in H


class TestSignature:
    def test_thick_clique_edge(self):
        H = con.thick_clique(10)
        sg = signature(H, (0, 1, 2, 3))
        assert set(sg.parts) == {frozenset({0, 1}), frozenset({2, 3})}

    def test_two_star_edge(self):
        H = Hypergraph(4, 6, ((0, 1, 2, 3), (0, 1, 4, 5)))
        assert set(signature(H, (0, 1, 2, 3)).parts) == {frozenset({0, 1})}

    def test_large_two_star(self):
        H = con.two_star(range(2, 16), (0, 1))
        sg = signature(H, (0, 1, 2, 3))
        assert sg.dubletons == [(0, 1)]
        assert sg.triples == [(0, 1, 2), (0, 1, 3)]
        assert sg.singletons == []

    def test_non_edge_subset(self):
        H = con.thick_clique(8)
        sg = signature(H, (0, 2))
        assert set(sg.parts) == {frozenset({0}), frozenset({2}), frozenset({0, 2})}

    @given(hypergraphs(4, max_edges=10), st.data())
    def test_matches_naive_definition(self, H, data):
        if H.m:
            e = data.draw(st.sampled_from(H.edges))
            assert set(signature(H, e).parts) == brute.signature(H.edges, e, skip=e)
        S = data.draw(st.sets(st.integers(0, H.n - 1), min_size=1, max_size=H.n))
        if tuple(sorted(S)) not in H:
            assert set(signature(H, S).parts) == brute.signature(H.edges, S)

    @given(hypergraphs(3, max_edges=10))
    def test_parts_are_proper_nonempty(self, H):
        for e in H.edges:
            parts = signature(H, e).parts
            assert frozenset() not in parts
            assert frozenset(e) not in parts


class TestTwins:
    def test_thick_clique_dubletons(self):
        assert set(twins(con.thick_clique(10)).pairs) == {(0, 1), (2, 3), (4, 5), (6, 7), (8, 9)}

    def test_two_star_centres(self):
        T = twins(con.two_star(range(2, 8), (0, 1)))
        assert set(T.pairs) == {(0, 1)}
        assert T.covered == frozenset({0, 1})

    def test_empty(self):
        assert not twins(Hypergraph(4, 6)).pairs

    def test_classes_transitive(self):
        H = Hypergraph(4, 4, ((0, 1, 2, 3),))
        assert twins(H).classes() == [(0, 1, 2, 3)]

    @given(hypergraphs(4, max_edges=10))
    def test_matches_naive(self, H):
        assert set(twins(H).pairs) == brute.twins(H.edges, H.n)

    @given(hypergraphs(3, max_edges=8), st.data())
    def test_adding_edge_never_creates_twins(self, H, data):
        pool = [e for e in combinations(range(H.n), 3) if e not in H]
        if not pool:
            return
        e = data.draw(st.sampled_from(pool))
        before = set(twins(H).pairs)
        after = set(twins(H.with_edges(H.edges + (e,))).pairs)
        # pairs that were present and are still non-isolated can only disappear
        new_pairs = after - before
        assert all(x in e or y in e for x, y in new_pairs)
        assert all(not (x in e) ^ (y in e) for x, y in new_pairs)


class TestComponents:
    def test_path(self):
        C = components(Hypergraph(3, 5, ((0, 1, 2), (2, 3, 4))))
        assert C.parts == ((0, 1, 2, 3, 4),)

    def test_two_edges(self):
        C = components(Hypergraph(3, 7, ((0, 1, 2), (3, 4, 5))))
        assert C.parts == ((0, 1, 2), (3, 4, 5))
        assert C.isolated == (6,)

    @pytest.mark.filterwarnings("ignore")
    def test_h41_small(self):
        # the F413 block is not wired to the joined stars
        C = components(con.gallery("H41", 8))
        assert len(C.parts) == 2

    @given(hypergraphs(3, max_edges=10))
    def test_matches_naive(self, H):
        assert [list(p) for p in components(H).parts] == brute.components(H.edges, H.n)
        assert sum(G.m for G in component_graphs(H)) == H.m


class TestSerialisation:
    def test_roundtrip_f413(self, tmp_path):
        H = con.f413()
        p = tmp_path / "f.hg"
        store(H, p)
        assert load(p) == H
        assert p.read_bytes() == dumps(H).encode()

    @pytest.mark.parametrize(
        "text",
        [
            "4 8 2\n0 1 2 3\n0 1 2 3\n",
            "4 8 1\n0 1 2\n",
            "4 8\n0 1 2 3\n",
            "4 8 2\n0 1 2 3\n",
            "4 5 1\n0 1 2 7\n",
            "",
        ],
    )
    def test_malformed(self, text):
        with pytest.raises(HypergraphFormatError):
            loads(text)

    @given(hypergraphs(4, max_edges=12))
    def test_roundtrip(self, H):
        assert loads(dumps(H)) == H
        assert dumps(loads(dumps(H))) == dumps(H)
