"""Exact small-n solvers for P-free extremal problems.

All searches walk candidate edges in lexicographic order and branch
include-first, pruning only when a bound shows a branch cannot *strictly*
beat the incumbent.  The first optimum met is therefore the
lexicographically least optimal edge set, which makes witnesses
reproducible.  Any nonempty solution can be relabelled to contain the edge
{0, ..., k-1}, and doing so cannot make its sorted edge list larger, so that
edge is fixed up front.

For l = 2 the freeness condition is pairwise (no two edges share exactly one
vertex), so the search is a maximum-clique search on the compatibility
graph with greedy-colouring bounds.  For k = 3, l = 3 a new edge can close a
path together with two existing edges, so the search keeps, for each pair of
candidates, the mask of chosen edges that would complete a path with them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from . import constructions
from .hypercore import Edge, Hypergraph, max_degree
from .pathfree import find_loose_path, is_star_union, star_groups


class BudgetExceeded(RuntimeError):
    pass


class InfeasibleError(ValueError):
    pass


@dataclass(frozen=True)
class SearchResult:
    value: int
    witness: Hypergraph
    nodes_explored: int
    elapsed: float
    method: str
    complete: bool = True
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "complete": self.complete,
            "nodes_explored": self.nodes_explored,
            "elapsed": round(self.elapsed, 6),
            "witness_edges": [list(e) for e in self.witness.edges],
            **self.extra,
        }


@dataclass(frozen=True)
class PinResult:
    lo: int
    hi: int
    provenance: dict

    @property
    def determined(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int | None:
        return self.lo if self.determined else None

    def to_json(self) -> dict:
        out = {"lo": self.lo, "hi": self.hi, "provenance": self.provenance}
        if self.determined:
            out = {"determined": self.lo, **out}
        return out


class _Exhausted(Exception):
    pass


class _Budget:
    def __init__(self, max_nodes: int | None, max_seconds: float | None):
        self.max_nodes = max_nodes
        self.deadline = None if max_seconds is None else time.perf_counter() + max_seconds
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise _Exhausted
        if self.deadline is not None and not self.nodes & 1023 and time.perf_counter() > self.deadline:
            raise _Exhausted


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


class _Candidates:
    """All k-subsets of range(n) in lexicographic order, with bitset tables."""

    def __init__(self, k: int, n: int):
        self.k, self.n = k, n
        self.edges: list[Edge] = list(combinations(range(n), k))
        self.masks = [sum(1 << v for v in e) for e in self.edges]
        N = len(self.edges)
        self.N = N
        self.single = [0] * N  # candidates meeting i in exactly one vertex
        self.disjoint = [0] * N
        for i in range(N):
            mi = self.masks[i]
            s = d = 0
            for j in range(N):
                if i == j:
                    continue
                c = (mi & self.masks[j]).bit_count()
                if c == 1:
                    s |= 1 << j
                elif c == 0:
                    d |= 1 << j
            self.single[i], self.disjoint[i] = s, d
        self.vmask = [0] * n  # candidates through each vertex
        for i, e in enumerate(self.edges):
            for v in e:
                self.vmask[v] |= 1 << i

    def graph(self, idx) -> Hypergraph:
        return Hypergraph(self.k, self.n, tuple(self.edges[i] for i in idx))


def _suffix_colour_bounds(order: list[int], adj: list[int]) -> list[int]:
    """ub[i] bounds the largest clique inside order[i:] (greedy colouring from the back)."""
    classes: list[int] = []
    ub = [0] * len(order)
    for i in range(len(order) - 1, -1, -1):
        v = order[i]
        av = adj[v]
        for ci, cls in enumerate(classes):
            if not cls & av:
                classes[ci] = cls | (1 << v)
                break
        else:
            classes.append(1 << v)
        ub[i] = len(classes)
    return ub


def _clique_max(adj: list[int], start: list[int], pool: int, budget: _Budget) -> tuple[list[int], bool]:
    """Lexicographically least maximum clique extending `start` by members of `pool`."""
    best = list(start)
    cand0 = pool
    for v in start:
        cand0 &= adj[v]

    def rec(cur: list[int], cand: int) -> None:
        budget.tick()
        if len(cur) > len(best):
            best[:] = cur
        if not cand:
            return
        order = _bits(cand)
        ub = _suffix_colour_bounds(order, adj)
        for i, v in enumerate(order):
            if len(cur) + ub[i] <= len(best):
                return
            rest = cand & ~((2 << v) - 1)
            cur.append(v)
            rec(cur, rest & adj[v])
            cur.pop()

    try:
        rec(list(start), cand0)
    except _Exhausted:
        return best, False
    return best, True


def _clique_exact(adj: list[int], cands: _Candidates, start: list[int], m: int, cap: int, budget: _Budget) -> list[int] | None:
    """Lexicographically least clique of size m extending `start` with max degree <= cap."""
    n, k = cands.n, cands.k
    deg = [0] * n
    for i in start:
        for v in cands.edges[i]:
            deg[v] += 1
    if any(d > cap for d in deg):
        return None
    cand0 = (1 << len(adj)) - 1
    for v in start:
        cand0 &= adj[v]
    if start:
        cand0 &= ~((2 << max(start)) - 1)
    for v in range(n):
        if deg[v] >= cap:
            cand0 &= ~cands.vmask[v]
    found: list[int] = []

    def rec(cur: list[int], cand: int) -> bool:
        budget.tick()
        need = m - len(cur)
        if need == 0:
            found[:] = cur
            return True
        if sum(cap - d for d in deg) < k * need:
            return False
        order = _bits(cand)
        if len(order) < need:
            return False
        ub = _suffix_colour_bounds(order, adj)
        for i, v in enumerate(order):
            if ub[i] < need or len(order) - i < need:
                return False
            rest = cand & ~((2 << v) - 1) & adj[v]
            e = cands.edges[v]
            for u in e:
                deg[u] += 1
                if deg[u] == cap:
                    rest &= ~cands.vmask[u]
            cur.append(v)
            if rec(cur, rest):
                return True
            cur.pop()
            for u in e:
                deg[u] -= 1
        return False

    if len(start) > m:
        return None
    if rec(list(start), cand0):
        return found
    return None


class _PathTable:
    """For k=3, l=3: P[a][b] = mask of edges g such that {a, b, g} is a loose 3-path."""

    def __init__(self, cands: _Candidates):
        N = cands.N
        S, D = cands.single, cands.disjoint
        self.P = [[0] * N for _ in range(N)]
        for a in range(N):
            row = self.P[a]
            for b in range(N):
                if a == b:
                    continue
                if S[a] >> b & 1:
                    row[b] = (S[a] & D[b]) | (S[b] & D[a])
                elif D[a] >> b & 1:
                    row[b] = S[a] & S[b]


def _subset_max(cands: _Candidates, table: _PathTable, start: list[int], pool: int, budget: _Budget) -> tuple[list[int], bool]:
    """Lexicographically least maximum P^3_3-free set extending `start` by members of `pool`."""
    P = table.P
    cur_bits = 0
    for v in start:
        cur_bits |= 1 << v
    first = [c for c in _bits(pool & ~cur_bits) if _free_with(P, start, c)]
    best = list(start)

    def rec(cur: list[int], bits: int, cs: list[int]) -> None:
        budget.tick()
        if len(cur) > len(best):
            best[:] = cur
        L = len(cs)
        if not L or len(cur) + L <= len(best):
            return
        pairs = _suffix_conflict_pairs(P, cs, bits)
        base = len(cur)
        for i, a in enumerate(cs):
            if base + (L - i) - pairs[i] <= len(best):
                return
            Pa = P[a]
            nxt = [b for b in cs[i + 1:] if not Pa[b] & bits]
            cur.append(a)
            rec(cur, bits | (1 << a), nxt)
            cur.pop()

    try:
        rec(list(start), cur_bits, first)
    except _Exhausted:
        return best, False
    return best, True


def _free_with(P: list[list[int]], chosen: list[int], c: int) -> bool:
    """Is chosen + [c] free, given chosen is? Checks every path through c."""
    bits = 0
    for v in chosen:
        bits |= 1 << v
    for i, a in enumerate(chosen):
        if P[c][a] & bits:
            return False
    return True


def _suffix_conflict_pairs(P: list[list[int]], cs: list[int], bits: int) -> list[int]:
    """pairs[i] = greedy count of disjoint mutually exclusive pairs inside cs[i:]."""
    L = len(cs)
    matched = [False] * L
    pairs = [0] * (L + 1)
    for i in range(L - 1, -1, -1):
        got = 0
        Pa = P[cs[i]]
        for j in range(i + 1, L):
            if not matched[j] and Pa[cs[j]] & bits:
                matched[j] = matched[i] = True
                got = 1
                break
        pairs[i] = pairs[i + 1] + got
    return pairs


def _subset_exact(cands: _Candidates, table: _PathTable, start: list[int], m: int, cap: int, budget: _Budget) -> list[int] | None:
    P = table.P
    n, k = cands.n, cands.k
    deg = [0] * n
    bits = 0
    for i in start:
        bits |= 1 << i
        for v in cands.edges[i]:
            deg[v] += 1
    if any(d > cap for d in deg) or len(start) > m:
        return None
    lo = max(start) + 1 if start else 0
    first = [
        c for c in range(lo, cands.N)
        if _free_with(P, start, c) and all(deg[v] < cap for v in cands.edges[c])
    ]
    found: list[int] = []

    def rec(cur: list[int], bits: int, cs: list[int]) -> bool:
        budget.tick()
        need = m - len(cur)
        if need == 0:
            found[:] = cur
            return True
        L = len(cs)
        if L < need or sum(cap - d for d in deg) < k * need:
            return False
        pairs = _suffix_conflict_pairs(P, cs, bits)
        for i, a in enumerate(cs):
            if (L - i) - pairs[i] < need:
                return False
            e = cands.edges[a]
            for u in e:
                deg[u] += 1
            Pa = P[a]
            nxt = [b for b in cs[i + 1:] if not Pa[b] & bits and all(deg[u] < cap for u in cands.edges[b])]
            cur.append(a)
            if rec(cur, bits | (1 << a), nxt):
                return True
            cur.pop()
            for u in e:
                deg[u] -= 1
        return False

    if rec(list(start), bits, first):
        return found
    return None


def _generic_free(cands: _Candidates, idx: list[int], length: int) -> bool:
    return find_loose_path(cands.graph(idx), length) is None


def _generic_max(cands: _Candidates, length: int, start: list[int], pool: int, budget: _Budget) -> tuple[list[int], bool]:
    best = list(start)

    def rec(cur: list[int], cs: list[int]) -> None:
        budget.tick()
        if len(cur) > len(best):
            best[:] = cur
        for i, a in enumerate(cs):
            if len(cur) + len(cs) - i <= len(best):
                return
            cur.append(a)
            rec(cur, [b for b in cs[i + 1:] if _generic_free(cands, cur + [b], length)])
            cur.pop()

    try:
        rec(list(start), [c for c in _bits(pool) if c not in start and _generic_free(cands, start + [c], length)])
    except _Exhausted:
        return best, False
    return best, True


def _generic_exact(cands: _Candidates, length: int, start: list[int], m: int, cap: int, budget: _Budget) -> list[int] | None:
    found: list[int] = []

    def ok(idx: list[int]) -> bool:
        g = cands.graph(idx)
        return max_degree(g) <= cap and find_loose_path(g, length) is None

    def rec(cur: list[int], cs: list[int]) -> bool:
        budget.tick()
        if len(cur) == m:
            found[:] = cur
            return True
        for i, a in enumerate(cs):
            if len(cur) + len(cs) - i < m:
                return False
            cur.append(a)
            if rec(cur, [b for b in cs[i + 1:] if ok(cur + [b])]):
                return True
            cur.pop()
        return False

    if not ok(start):
        return None
    lo = max(start) + 1 if start else 0
    if rec(list(start), [c for c in range(lo, cands.N) if ok(start + [c])]):
        return found
    return None


_CAND_CACHE: dict[tuple[int, int], _Candidates] = {}
_TABLE_CACHE: dict[tuple[int, int], _PathTable] = {}


def _candidates(k: int, n: int) -> _Candidates:
    key = (k, n)
    if key not in _CAND_CACHE:
        _CAND_CACHE[key] = _Candidates(k, n)
    return _CAND_CACHE[key]


def _compat(cands: _Candidates) -> list[int]:
    full = (1 << cands.N) - 1
    return [full & ~cands.single[i] & ~(1 << i) for i in range(cands.N)]


def _table(cands: _Candidates) -> _PathTable:
    key = (cands.k, cands.n)
    if key not in _TABLE_CACHE:
        _TABLE_CACHE[key] = _PathTable(cands)
    return _TABLE_CACHE[key]


def _method(k: int, length: int) -> str:
    if length == 2:
        return "clique-reduction"
    return "branch-and-bound"


def _check_args(k: int, length: int, n: int) -> None:
    if k < 2 or length < 1:
        raise ValueError("need k >= 2 and l >= 1")
    if n < k:
        raise ValueError(f"n={n} is below the uniformity k={k}")


def max_pfree_edges(
    k: int,
    length: int,
    n: int,
    *,
    max_nodes: int | None = None,
    max_seconds: float | None = None,
    start: list[Edge] | None = None,
) -> SearchResult:
    """Maximum number of edges in a P^k_l-free k-graph on n vertices.

    With ``start`` the maximum is taken over graphs containing those edges
    (no relabelling symmetry is then assumed).
    """
    _check_args(k, length, n)
    t0 = time.perf_counter()
    budget = _Budget(max_nodes, max_seconds)
    cands = _candidates(k, n)
    if length == 1:
        return SearchResult(0, Hypergraph(k, n), 0, 0.0, "exhaustive")
    full = (1 << cands.N) - 1
    if start is None:
        # symmetry: some optimum contains edge 0, and then only later edges need trying
        seed, pool = [0], full & ~1
    else:
        seed = sorted(cands.edges.index(tuple(sorted(e))) for e in start)
        pool = full
        for i in seed:
            pool &= ~(1 << i)
    if length == 2:
        adj = _compat(cands)
        if any(not adj[a] >> b & 1 for a, b in combinations(seed, 2)):
            raise InfeasibleError("start edges already contain a path")
        best, complete = _clique_max(adj, seed, pool, budget)
    elif k == 3 and length == 3:
        table = _table(cands)
        if any(not _free_with(table.P, seed[:i], seed[i]) for i in range(len(seed))):
            raise InfeasibleError("start edges already contain a path")
        best, complete = _subset_max(cands, table, seed, pool, budget)
    else:
        if not _generic_free(cands, seed, length):
            raise InfeasibleError("start edges already contain a path")
        best, complete = _generic_max(cands, length, seed, pool, budget)
    return SearchResult(
        len(best), cands.graph(best), budget.nodes, time.perf_counter() - t0, _method(k, length), complete
    )


def min_max_degree(
    k: int,
    length: int,
    n: int,
    m: int,
    *,
    max_nodes: int | None = None,
    max_seconds: float | None = None,
) -> SearchResult:
    """f^k_l(n, m): least max degree over P^k_l-free k-graphs with n vertices and m edges."""
    _check_args(k, length, n)
    t0 = time.perf_counter()
    if m < 0:
        raise InfeasibleError("m must be >= 0")
    if m == 0:
        return SearchResult(0, Hypergraph(k, n), 0, 0.0, _method(k, length))
    if length == 1:
        raise InfeasibleError("a P_1-free graph has no edges")
    budget = _Budget(max_nodes, max_seconds)
    cands = _candidates(k, n)
    if m > cands.N:
        raise InfeasibleError(f"m={m} exceeds C({n},{k})")
    top = comb(n - 1, k - 1)
    lo = -(-k * m // n)
    if length == 2:
        adj = _compat(cands)
    elif k == 3 and length == 3:
        table = _table(cands)
    tried = []
    try:
        for cap in range(lo, top + 1):
            if length == 2:
                found = _clique_exact(adj, cands, [0], m, cap, budget)
            elif k == 3 and length == 3:
                found = _subset_exact(cands, table, [0], m, cap, budget)
            else:
                found = _generic_exact(cands, length, [0], m, cap, budget)
            tried.append(cap)
            if found is not None:
                return SearchResult(
                    cap, cands.graph(found), budget.nodes, time.perf_counter() - t0, _method(k, length),
                    extra={"caps_tried": tried},
                )
    except _Exhausted:
        raise BudgetExceeded(f"budget exhausted after {budget.nodes} nodes; caps refuted: {tried}") from None
    raise InfeasibleError(f"no P-free {k}-graph with n={n}, m={m}")


def p32_max_edges(n: int, **budget) -> SearchResult:
    """Maximum P^3_2-free 3-graph on n vertices."""
    return max_pfree_edges(3, 2, n, **budget)


TRIANGLE = ((0, 1, 2), (0, 4, 5), (2, 3, 4))


def max_pfree_with_triangle(n: int, **budget) -> SearchResult:
    """Maximum P^3_3-free 3-graph on n vertices containing the fixed triangle on 0..5."""
    if n < 6:
        raise ValueError("a triangle needs 6 vertices")
    return max_pfree_edges(3, 3, n, start=list(TRIANGLE), **budget)


# -- deletion distance ----------------------------------------------------


def deletion_distance(
    H: Hypergraph,
    t: int,
    c: int,
    *,
    max_nodes: int | None = None,
    max_seconds: float | None = None,
    exact_limit: int = 24,
) -> SearchResult:
    """Fewest edges to delete so that H becomes a union of <= t disjoint c-centred stars.

    Tries deletion sizes 0, 1, 2, ... and all subsets of each size in
    lexicographic order, so the deleted set returned is the lex-least among
    minimum ones.  The witness is the remaining graph; ``extra["deleted"]``
    lists the removed edges.
    """
    is_star_union(Hypergraph(H.k, H.n), t, c)  # validates (k, c)
    if H.m > exact_limit:
        raise ValueError(f"exact deletion distance is limited to {exact_limit} edges, got {H.m}")
    t0 = time.perf_counter()
    budget = _Budget(max_nodes, max_seconds)
    edges = H.edges
    idx = range(H.m)
    try:
        for d in range(H.m + 1):
            for drop in combinations(idx, d):
                budget.tick()
                gone = set(drop)
                keep = [edges[i] for i in idx if i not in gone]
                if _star_union_ok(keep, t, c):
                    return SearchResult(
                        d, H.with_edges(keep), budget.nodes, time.perf_counter() - t0, "exhaustive",
                        extra={"deleted": [list(edges[i]) for i in drop]},
                    )
    except _Exhausted:
        raise BudgetExceeded(f"budget exhausted after {budget.nodes} subsets") from None
    raise AssertionError("deleting every edge always leaves a star union")


def _star_union_ok(edges: list[Edge], t: int, c: int) -> bool:
    """Lightweight twin of is_star_union on a bare edge list."""
    groups: list[list] = []  # [vertex set, core]
    for e in edges:
        hit = [g for g in groups if not g[0].isdisjoint(e)]
        if not hit:
            groups.append([set(e), set(e)])
            continue
        merged = hit[0]
        for g in hit[1:]:
            merged[0] |= g[0]
            merged[1] &= g[1]
            groups.remove(g)
        merged[0].update(e)
        merged[1].intersection_update(e)
        if len(merged[1]) < c:
            return False
    return len(groups) <= t


# -- pinning f(n, m) at large n -------------------------------------------


def pin_f_value(k: int, length: int, n: int, m: int) -> PinResult:
    """Bracket f^4_2(n, m) in the thick-clique regime m <= C(floor(n/2), 2).

    The lower side is floor(4m/(n-1)); the upper side is the max degree of
    an explicit near-regular thick-clique subgraph, which is certified by
    construction.
    """
    if (k, length) != (4, 2):
        raise ValueError("pinning is implemented for (k, l) = (4, 2) only")
    cap = comb(n // 2, 2)
    if n < 4 or m < 0 or m > cap:
        raise ValueError(f"m={m} is outside the regime 0 <= m <= C(floor(n/2),2)={cap}")
    lo = (4 * m) // (n - 1)
    H = constructions.near_regular_thick_subgraph(n, m)
    hi = max_degree(H)
    return PinResult(
        lo,
        hi,
        {
            "lo": "floor(4m/(n-1))",
            "hi": "near_regular_thick_subgraph",
            "ceil_4m_over_n": -((-4 * m) // n),
        },
    )


def certify(result: SearchResult, k: int, length: int, statistic: str) -> None:
    """Re-check a witness through the public detectors; raise AssertionError on mismatch."""
    W = result.witness
    assert W.k == k
    assert find_loose_path(W, length) is None, "witness contains the forbidden path"
    if statistic == "edges":
        assert W.m == result.value, (W.m, result.value)
    elif statistic == "max_degree":
        assert max_degree(W) == result.value, (max_degree(W), result.value)
    else:
        raise ValueError(statistic)


__all__ = [
    "BudgetExceeded",
    "InfeasibleError",
    "PinResult",
    "SearchResult",
    "certify",
    "deletion_distance",
    "max_pfree_edges",
    "max_pfree_with_triangle",
    "min_max_degree",
    "p32_max_edges",
    "pin_f_value",
    "star_groups",
]
