"""Uniform hypergraphs on dense integer labels.

A :class:`Hypergraph` is an immutable k-uniform edge family on vertices
``0..n-1``.  Edges are stored as ascending tuples and the edge list is kept
in lexicographic order, so equality, hashing and the ``.hg`` text format are
all canonical.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Edge = tuple[int, ...]


class HypergraphFormatError(ValueError):
    """Raised for malformed ``.hg`` input or invalid edge families."""


@dataclass(frozen=True)
class Hypergraph:
    k: int
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        k, n = self.k, self.n
        if k < 2:
            raise HypergraphFormatError(f"uniformity must be >= 2, got {k}")
        if n < 0:
            raise HypergraphFormatError(f"negative vertex count {n}")
        canon = []
        for e in self.edges:
            t = tuple(sorted(e))
            if len(t) != k or len(set(t)) != k:
                raise HypergraphFormatError(f"edge {tuple(e)} is not a {k}-set")
            if t[0] < 0 or t[-1] >= n:
                raise HypergraphFormatError(f"edge {t} has a vertex outside 0..{n - 1}")
            canon.append(t)
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise HypergraphFormatError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, e: object) -> bool:
        return tuple(sorted(e)) in self.edge_index  # type: ignore[arg-type]

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    @cached_property
    def incidence(self) -> list[list[int]]:
        """Edge indices through each vertex, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return inc

    @cached_property
    def masks(self) -> list[int]:
        return [sum(1 << v for v in e) for e in self.edges]

    @cached_property
    def pair_counts(self) -> Counter:
        """Number of edges containing each vertex pair (keys are ascending tuples)."""
        c: Counter = Counter()
        for e in self.edges:
            c.update(combinations(e, 2))
        return c

    @cached_property
    def subset_counts(self) -> Counter:
        """Number of edges containing each nonempty proper subset of some edge."""
        c: Counter = Counter()
        for e in self.edges:
            for r in range(1, self.k):
                c.update(combinations(e, r))
        return c

    def vertices(self) -> range:
        return range(self.n)

    def non_isolated(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees) if d]

    def with_edges(self, edges: Iterable[Sequence[int]]) -> Hypergraph:
        return Hypergraph(self.k, self.n, tuple(tuple(e) for e in edges))

    def induced(self, vertices: Iterable[int]) -> Hypergraph:
        """H[W] on the same label space."""
        w = set(vertices)
        return self.with_edges(e for e in self.edges if w.issuperset(e))

    def remove_edges(self, drop: Iterable[Sequence[int]]) -> Hypergraph:
        gone = {tuple(sorted(e)) for e in drop}
        return self.with_edges(e for e in self.edges if e not in gone)

    def exact_intersections(self, e: Edge) -> dict[Edge, int]:
        """For an edge ``e`` of H, count the other edges f with f ∩ e = Q.

        Keys are the nonempty proper subsets Q of ``e`` with a positive count.
        Uses Möbius inversion over ``subset_counts`` so the cost is 2^k per
        edge rather than a scan of the neighbourhood.
        """
        c = self.subset_counts
        k = self.k
        # containment counts excluding e itself
        sup = {}
        for r in range(1, k):
            for q in combinations(e, r):
                sup[q] = c[q] - 1
        out = {}
        for q, _ in sup.items():
            rest = [v for v in e if v not in q]
            total = 0
            for r in range(0, len(rest)):
                sign = -1 if r % 2 else 1
                for extra in combinations(rest, r):
                    w = tuple(sorted(q + extra))
                    total += sign * sup[w]
            if total:
                out[q] = total
        return out


@dataclass(frozen=True)
class Signature:
    base: frozenset
    parts: frozenset

    def by_size(self, size: int) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(p)) for p in self.parts if len(p) == size)

    @property
    def singletons(self) -> list[tuple[int, ...]]:
        return self.by_size(1)

    @property
    def dubletons(self) -> list[tuple[int, ...]]:
        return self.by_size(2)

    @property
    def triples(self) -> list[tuple[int, ...]]:
        return self.by_size(3)


@dataclass(frozen=True)
class TwinSet:
    pairs: frozenset
    covered: frozenset

    def classes(self) -> list[tuple[int, ...]]:
        """Twin equivalence classes of size >= 2 (twinness is transitive)."""
        parent = {v: v for v in self.covered}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x, y in self.pairs:
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
        groups: dict[int, list[int]] = {}
        for v in sorted(self.covered):
            groups.setdefault(find(v), []).append(v)
        return sorted(tuple(g) for g in groups.values())


@dataclass(frozen=True)
class Components:
    parts: tuple[tuple[int, ...], ...]
    isolated: tuple[int, ...]


def _check_vertex(H: Hypergraph, v: int) -> None:
    if not 0 <= v < H.n:
        raise IndexError(f"vertex {v} out of range 0..{H.n - 1}")


def degree(H: Hypergraph, v: int) -> int:
    _check_vertex(H, v)
    return H.degrees[v]


def max_degree(H: Hypergraph) -> int:
    return max(H.degrees, default=0)


def signature(H: Hypergraph, S: Iterable[int]) -> Signature:
    """Distinct nonempty traces S ∩ e over the edges of H.

    When S is itself an edge, that edge is left out, so the full set S only
    appears if some strictly larger structure forces it (it cannot for a
    simple k-graph).
    """
    base = tuple(sorted(set(S)))
    for v in base:
        _check_vertex(H, v)
    if len(base) == H.k and base in H.edge_index:
        parts = frozenset(frozenset(q) for q in H.exact_intersections(base))
        return Signature(frozenset(base), parts)
    seen: set[int] = set()
    parts = set()
    inc = H.incidence
    bs = set(base)
    for v in base:
        for i in inc[v]:
            if i in seen:
                continue
            seen.add(i)
            parts.add(frozenset(bs.intersection(H.edges[i])))
    return Signature(frozenset(base), frozenset(parts))


def twins(H: Hypergraph) -> TwinSet:
    """Pairs of non-isolated vertices that no edge meets in exactly one vertex."""
    deg = H.degrees
    pairs = frozenset(p for p, c in H.pair_counts.items() if c == deg[p[0]] == deg[p[1]])
    covered = frozenset(v for p in pairs for v in p)
    return TwinSet(pairs, covered)


def components(H: Hypergraph) -> Components:
    parent = list(range(H.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in H.edges:
        r0 = find(e[0])
        for v in e[1:]:
            r = find(v)
            if r != r0:
                if r < r0:
                    parent[r0] = r
                    r0 = r
                else:
                    parent[r] = r0
    groups: dict[int, list[int]] = {}
    isolated = []
    deg = H.degrees
    for v in range(H.n):
        if deg[v] == 0:
            isolated.append(v)
        else:
            groups.setdefault(find(v), []).append(v)
    parts = tuple(sorted(tuple(g) for g in groups.values()))
    return Components(parts, tuple(isolated))


def component_graphs(H: Hypergraph) -> list[Hypergraph]:
    """Edge sets of the components, each on the full label space."""
    comp = components(H)
    owner = {}
    for idx, part in enumerate(comp.parts):
        for v in part:
            owner[v] = idx
    buckets: list[list[Edge]] = [[] for _ in comp.parts]
    for e in H.edges:
        buckets[owner[e[0]]].append(e)
    return [H.with_edges(b) for b in buckets]


# -- .hg text format -------------------------------------------------------


def dumps(H: Hypergraph) -> str:
    lines = [f"{H.k} {H.n} {H.m}"]
    lines.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(lines) + "\n"


def loads(text: str) -> Hypergraph:
    rows = text.splitlines()
    if not rows:
        raise HypergraphFormatError("empty input")
    try:
        k, n, m = (int(x) for x in rows[0].split())
    except ValueError:
        raise HypergraphFormatError(f"malformed header {rows[0]!r}") from None
    body = [r for r in rows[1:] if r.strip()]
    if len(body) != m:
        raise HypergraphFormatError(f"header declares {m} edges, found {len(body)}")
    edges = []
    for lineno, row in enumerate(body, start=2):
        try:
            e = tuple(int(x) for x in row.split())
        except ValueError:
            raise HypergraphFormatError(f"line {lineno}: non-integer vertex") from None
        if len(e) != k:
            raise HypergraphFormatError(f"line {lineno}: expected {k} vertices, got {len(e)}")
        edges.append(e)
    return Hypergraph(k, n, tuple(edges))


def load(path: str | os.PathLike) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def store(H: Hypergraph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(H))
