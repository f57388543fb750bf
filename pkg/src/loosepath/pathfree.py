"""Loose path, triangle and star-union detection."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from operator import and_

from .hypercore import Edge, Hypergraph, components


@dataclass(frozen=True)
class PathWitness:
    edges: tuple[Edge, ...]
    junctions: tuple[int, ...]

    def validate(self, k: int) -> None:
        """Raise ``AssertionError`` unless the edges form a loose k-path."""
        es = [set(e) for e in self.edges]
        ell = len(es)
        assert all(len(e) == k for e in es)
        for i in range(ell):
            for j in range(i + 1, ell):
                inter = es[i] & es[j]
                if j == i + 1:
                    assert len(inter) == 1, (self.edges[i], self.edges[j])
                    assert inter == {self.junctions[i]}
                else:
                    assert not inter, (self.edges[i], self.edges[j])
        assert len(set().union(*es)) == k * ell - ell + 1


def _require_k(H: Hypergraph, k: int) -> None:
    if H.k != k:
        raise ValueError(f"expected a {k}-graph, got k={H.k}")


def _single_neighbours(H: Hypergraph, i: int) -> list[int]:
    """Edge indices meeting edge i in exactly one vertex, ascending."""
    masks = H.masks
    mi = masks[i]
    out = set()
    for v in H.edges[i]:
        for j in H.incidence[v]:
            if j != i and (masks[j] & mi).bit_count() == 1:
                out.add(j)
    return sorted(out)


def _has_disjoint_links(H: Hypergraph) -> bool:
    """True iff two edges meet in exactly one vertex (a copy of P^k_2)."""
    masks = H.masks
    for v, inc in enumerate(H.incidence):
        if len(inc) < 2:
            continue
        bit = 1 << v
        if reduce(and_, (masks[i] for i in inc)) & ~bit:
            continue  # all links share a vertex
        links = [masks[i] & ~bit for i in inc]
        for a in range(len(links)):
            la = links[a]
            for b in range(a + 1, len(links)):
                if not la & links[b]:
                    return True
    return False


def is_p42_free(H: Hypergraph) -> bool:
    _require_k(H, 4)
    return not _has_disjoint_links(H)


def is_p2_free(H: Hypergraph) -> bool:
    """P^k_2-freeness for any uniformity: no two edges share exactly one vertex."""
    return not _has_disjoint_links(H)


def _p33_witness_fast(H: Hypergraph) -> tuple[Edge, Edge, Edge] | None:
    """Find some loose 3-path in a 3-graph, or None.

    Treats each edge as the middle edge {a,b,c}.  The edges meeting it only
    in ``a`` have links forming a graph A on V minus the edge; its size and
    degrees follow from pair counts, so most middle edges are dismissed in
    O(1).  Only when two of the three link graphs are nonempty do we scan one
    of them for a member disjoint from some member of the other.
    """
    pc = H.pair_counts
    deg = H.degrees
    eset = H.edge_index
    inc = H.incidence
    edges = H.edges

    def pcount(x: int, y: int) -> int:
        return pc.get((x, y) if x < y else (y, x), 0)

    def has(*vs: int) -> bool:
        return tuple(sorted(vs)) in eset

    for e in edges:
        sizes = {}
        for a in e:
            b, c = (v for v in e if v != a)
            sizes[a] = deg[a] - pcount(a, b) - pcount(a, c) + 1
        live = [a for a in e if sizes[a] > 0]
        if len(live) < 2:
            continue
        for a, b in combinations(live, 2):
            # scan the smaller family
            if sizes[a] > sizes[b]:
                a, b = b, a
            c = next(v for v in e if v != a and v != b)
            na = sizes[b]
            # q ranges over links of edges meeting e only in a
            for i in inc[a]:
                f = edges[i]
                if b in f or c in f:
                    continue
                q1, q2 = (v for v in f if v != a)

                def deg_in(x: int) -> int:
                    return pcount(b, x) - has(b, x, a) - has(b, x, c)

                meeting = deg_in(q1) + deg_in(q2) - has(b, q1, q2)
                if meeting < na:
                    for j in inc[b]:
                        g = edges[j]
                        if a in g or c in g or q1 in g or q2 in g:
                            continue
                        return f, e, g
    return None


def is_p33_free(H: Hypergraph) -> bool:
    _require_k(H, 3)
    return _p33_witness_fast(H) is None


def _witness(H: Hypergraph, idx: list[int]) -> PathWitness:
    es = tuple(H.edges[i] for i in idx)
    junctions = tuple(next(iter(set(a) & set(b))) for a, b in zip(es, es[1:]))
    return PathWitness(es, junctions)


def find_loose_path(H: Hypergraph, length: int) -> PathWitness | None:
    """Lexicographically least loose path of the given length, by edge order."""
    if length < 1:
        raise ValueError("path length must be >= 1")
    if not H.edges:
        return None
    if length == 1:
        return _witness(H, [0])
    if length == 2 and not _has_disjoint_links(H):
        return None
    if length == 3 and H.k == 3 and _p33_witness_fast(H) is None:
        return None

    masks = H.masks
    nbrs: dict[int, list[int]] = {}

    def neighbours(i: int) -> list[int]:
        if i not in nbrs:
            nbrs[i] = _single_neighbours(H, i)
        return nbrs[i]

    path: list[int] = []

    # `behind` is the union of all path edges except the last one
    def extend(behind: int) -> bool:
        if len(path) == length:
            return True
        last = path[-1]
        for j in neighbours(last):
            if masks[j] & behind:
                continue
            path.append(j)
            if extend(behind | masks[last]):
                return True
            path.pop()
        return False

    for i in range(H.m):
        path.append(i)
        if extend(0):
            return _witness(H, path)
        path.pop()
    return None


def contains_triangle(H: Hypergraph) -> bool:
    """Linear 3-cycle: three edges pairwise meeting in distinct single vertices."""
    return find_triangle(H) is not None


def find_triangle(H: Hypergraph) -> tuple[Edge, Edge, Edge] | None:
    _require_k(H, 3)
    thirds: dict[tuple[int, int], list[int]] = {}
    for e in H.edges:
        for x, y in combinations(e, 2):
            z = next(v for v in e if v != x and v != y)
            thirds.setdefault((x, y), []).append(z)
    for i, e1 in enumerate(H.edges):
        s1 = set(e1)
        for j in _single_neighbours(H, i):
            if j < i:
                continue
            e2 = H.edges[j]
            (a,) = s1.intersection(e2)
            span = s1.union(e2)
            for b in e2:
                if b == a:
                    continue
                for c in e1:
                    if c == a:
                        continue
                    for w in thirds.get((b, c) if b < c else (c, b), ()):
                        if w not in span:
                            return e1, e2, tuple(sorted((b, c, w)))
    return None


def _check_center_size(H: Hypergraph, c: int) -> None:
    if (c, H.k) not in ((2, 4), (1, 3)):
        raise ValueError(f"center size {c} is only defined for k={4 if c == 2 else 3}, got k={H.k}")


def star_groups(H: Hypergraph, c: int) -> list[tuple[tuple[int, ...], tuple[Edge, ...]]] | None:
    """Split H into vertex-disjoint stars with c-element centers, or None.

    Each star is a connected component whose edges share at least c common
    vertices; the reported center is the lexicographically least c-subset of
    that common core.
    """
    out = []
    comp = components(H)
    owner = {}
    for idx, part in enumerate(comp.parts):
        for v in part:
            owner[v] = idx
    groups: list[list[Edge]] = [[] for _ in comp.parts]
    for e in H.edges:
        groups[owner[e[0]]].append(e)
    for es in groups:
        core = set(es[0]).intersection(*es[1:])
        if len(core) < c:
            return None
        out.append((tuple(sorted(core))[:c], tuple(es)))
    return out


def is_star_union(H: Hypergraph, t: int, c: int) -> bool:
    """True iff H is a union of at most t vertex-disjoint (c-centred) stars."""
    _check_center_size(H, c)
    groups = star_groups(H, c)
    return groups is not None and len(groups) <= t
