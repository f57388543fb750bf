"""R/S/T decompositions of P^4_2-free 4-graphs and P^3_3-free 3-graphs.

Vertices of low degree are peeled into R one at a time (always the lowest
label first, degrees recomputed after every removal).  In the remaining
graph, S collects the twin vertices (plus, for 3-graphs, every vertex that
some edge sees as a singleton in its signature) and T is the rest.  The
edge classes are H_R (edges meeting R), H_S (edges inside S) and H_T (the
rest, which should form disjoint stars centred in S).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import Enum
from math import comb

from .hypercore import Edge, Hypergraph, components, component_graphs, signature, twins
from .pathfree import find_triangle, is_p33_free, is_p42_free

# degree at or below which a vertex is peeled, and the |H_R| / |R| ratio
PEEL_THRESHOLD = {4: 10, 3: 6}
CENTER_SIZE = {4: 2, 3: 1}


class NotPathFreeError(ValueError):
    pass


class SignatureKind(str, Enum):
    TWO_DISJOINT_DUBLETONS = "TwoDisjointDubletons"
    DUBLETON_PLUS_TWO_TRIPLES = "DubletonPlusTwoTriples"
    SINGLETON_PLUS_DISJOINT_DUBLETON = "SingletonPlusDisjointDubleton"
    TWO_DUBLETONS_MEETING_IN_SINGLETON = "TwoDubletonsMeetingInSingleton"
    OTHER = "Other"


@dataclass(frozen=True)
class SignatureClass:
    kind: SignatureKind
    reason: str = ""


ALLOWED_RESIDUAL = {
    4: {SignatureKind.TWO_DISJOINT_DUBLETONS, SignatureKind.DUBLETON_PLUS_TWO_TRIPLES},
    3: {SignatureKind.SINGLETON_PLUS_DISJOINT_DUBLETON, SignatureKind.TWO_DUBLETONS_MEETING_IN_SINGLETON},
}


def _fmt(parts) -> str:
    return "{" + ", ".join(str(tuple(sorted(p))) for p in sorted(parts, key=lambda p: (len(p), sorted(p)))) + "}"


def classify_edge_signature(H: Hypergraph, e) -> SignatureClass:
    e = tuple(sorted(e))
    if e not in H.edge_index:
        raise ValueError(f"{e} is not an edge")
    sg = signature(H, e)
    parts = [frozenset(p) for p in sg.parts]
    by = {1: [], 2: [], 3: []}
    for p in parts:
        by.setdefault(len(p), []).append(p)
    ones, twos, threes = by[1], by[2], by[3]
    other = SignatureClass(SignatureKind.OTHER, f"signature {_fmt(parts)}")
    if H.k == 4:
        if len(parts) == 2 and len(twos) == 2 and not twos[0] & twos[1]:
            return SignatureClass(SignatureKind.TWO_DISJOINT_DUBLETONS)
        if len(parts) == 3 and len(twos) == 1 and len(threes) == 2 and threes[0] & threes[1] == twos[0]:
            return SignatureClass(SignatureKind.DUBLETON_PLUS_TWO_TRIPLES)
        return other
    if H.k == 3:
        if len(parts) == 2 and len(ones) == 1 and len(twos) == 1 and not ones[0] & twos[0]:
            return SignatureClass(SignatureKind.SINGLETON_PLUS_DISJOINT_DUBLETON)
        if len(parts) == 3 and len(twos) == 2 and len(ones) == 1 and twos[0] & twos[1] == ones[0]:
            return SignatureClass(SignatureKind.TWO_DUBLETONS_MEETING_IN_SINGLETON)
        return other
    return SignatureClass(SignatureKind.OTHER, f"no classification for k={H.k}")


@dataclass(frozen=True)
class Decomposition:
    k: int
    n: int
    R: frozenset
    S: frozenset
    T: frozenset
    H_R: tuple[Edge, ...]
    H_S: tuple[Edge, ...]
    H_T: tuple[Edge, ...]
    peel_order: tuple[int, ...]
    stars: tuple[tuple[tuple[int, ...], tuple[Edge, ...]], ...]
    triangle_components: tuple[tuple[int, ...], ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def residual_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.H_S + self.H_T))

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "R": sorted(self.R),
            "S": sorted(self.S),
            "T": sorted(self.T),
            "sizes": {"H_R": len(self.H_R), "H_S": len(self.H_S), "H_T": len(self.H_T)},
            "peel_order": list(self.peel_order),
            "stars": [{"center": list(c), "edges": len(es)} for c, es in self.stars],
            "triangle_components": [list(c) for c in self.triangle_components],
            "warnings": list(self.warnings),
        }


def _peel(H: Hypergraph, threshold: int, preset: list[int]) -> tuple[list[int], list[bool]]:
    """Remove `preset`, then repeatedly the lowest-labelled vertex of degree <= threshold."""
    deg = list(H.degrees)
    alive = [True] * H.m
    removed = [False] * H.n
    order: list[int] = []
    heap: list[int] = []

    def remove(v: int) -> None:
        removed[v] = True
        order.append(v)
        for i in H.incidence[v]:
            if not alive[i]:
                continue
            alive[i] = False
            for u in H.edges[i]:
                if u == v:
                    continue
                deg[u] -= 1
                if deg[u] == threshold and not removed[u]:
                    heapq.heappush(heap, u)

    for v in preset:
        remove(v)
    heap.extend(v for v in range(H.n) if not removed[v] and deg[v] <= threshold)
    heapq.heapify(heap)
    while heap:
        v = heapq.heappop(heap)
        if not removed[v]:
            remove(v)
    return order, alive


def _star_inventory(H_T: tuple[Edge, ...], S: frozenset, k: int, n: int):
    if not H_T:
        return ()
    out = []
    for g in component_graphs(Hypergraph(k, n, H_T)):
        core = set(g.edges[0]).intersection(*g.edges[1:])
        out.append((tuple(sorted(core & S)), g.edges))
    return tuple(sorted(out))


def _decompose(H: Hypergraph, preset: list[int], triangle_parts) -> Decomposition:
    k = H.k
    order, alive = _peel(H, PEEL_THRESHOLD[k], preset)
    R = frozenset(order)
    H_R = tuple(e for e, a in zip(H.edges, alive) if not a)
    residual = H.with_edges(e for e, a in zip(H.edges, alive) if a)
    ts = twins(residual)
    S = set(ts.covered)
    notes = []
    for cls in ts.classes():
        if len(cls) > 2:
            notes.append(f"overlapping twins {list(cls)}: all placed in S")
    if k == 3:
        for e in residual.edges:
            for q in residual.exact_intersections(e):
                if len(q) == 1:
                    S.add(q[0])
    S = frozenset(S)
    T = frozenset(v for v in range(H.n) if v not in R and v not in S)
    H_S = tuple(e for e in residual.edges if S.issuperset(e))
    H_T = tuple(e for e in residual.edges if not S.issuperset(e))
    return Decomposition(
        k=k,
        n=H.n,
        R=R,
        S=S,
        T=T,
        H_R=H_R,
        H_S=H_S,
        H_T=H_T,
        peel_order=tuple(order),
        stars=_star_inventory(H_T, S, k, H.n),
        triangle_components=tuple(triangle_parts),
        warnings=tuple(notes),
    )


def decompose4(H: Hypergraph) -> Decomposition:
    if H.k != 4:
        raise ValueError(f"decompose4 needs a 4-graph, got k={H.k}")
    if not is_p42_free(H):
        raise NotPathFreeError("input contains a loose path of length 2")
    return _decompose(H, [], [])


def decompose3(H: Hypergraph) -> Decomposition:
    if H.k != 3:
        raise ValueError(f"decompose3 needs a 3-graph, got k={H.k}")
    if not is_p33_free(H):
        raise NotPathFreeError("input contains a loose path of length 3")
    parts = []
    for g in component_graphs(H):
        if find_triangle(g) is not None:
            parts.append(tuple(sorted({v for e in g.edges for v in e})))
    preset = sorted(v for p in parts for v in p)
    return _decompose(H, preset, parts)


def decompose(H: Hypergraph) -> Decomposition:
    if H.k == 4:
        return decompose4(H)
    if H.k == 3:
        return decompose3(H)
    raise ValueError(f"no decomposition for k={H.k}")


# -- validation ---------------------------------------------------------


@dataclass
class Check:
    passed: bool
    detail: str = ""
    witness: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"passed": self.passed, "detail": self.detail, "witness": [list(w) if isinstance(w, tuple) else w for w in self.witness]}


@dataclass
class ValidationReport:
    checks: dict[str, Check]
    largest_star: int

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failures(self) -> dict[str, Check]:
        return {k: c for k, c in self.checks.items() if not c.passed}

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "largest_star": self.largest_star,
            "checks": {k: c.to_json() for k, c in self.checks.items()},
        }


def _class_sizes_ok(G: Hypergraph, allowed: set[tuple[int, ...]]) -> tuple[bool, list]:
    """Check each edge of G splits into twin classes with sizes in `allowed`."""
    ts = twins(G)
    cls_of = {}
    for cls in ts.classes():
        for v in cls:
            cls_of[v] = cls
    bad = []
    for e in G.edges:
        seen = []
        for v in e:
            c = cls_of.get(v, (v,))
            if c not in seen:
                seen.append(c)
        if not set(seen[0]).union(*seen[1:]) == set(e):
            bad.append(e)
            continue
        if tuple(sorted(len(c) for c in seen)) not in allowed:
            bad.append(e)
    return not bad, bad


def is_thick_clique_subgraph(G: Hypergraph) -> tuple[bool, list]:
    """Every twin class has even size, equivalently edges are unions of two fixed pairs."""
    ts = twins(G)
    odd_classes = [c for c in ts.classes() if len(c) % 2]
    ok, bad = _class_sizes_ok(G, {(2, 2), (4,)})
    if odd_classes:
        ok = False
    return ok, bad


def is_quasi_bipartite(G: Hypergraph) -> tuple[bool, list]:
    """Every edge is a twin pair plus one further vertex (or a lone 3-class)."""
    return _class_sizes_ok(G, {(1, 2), (3,)})


def validate(d: Decomposition, H: Hypergraph) -> ValidationReport:
    if d.k != H.k or d.n != H.n:
        raise ValueError(f"decomposition is for (k={d.k}, n={d.n}), graph is (k={H.k}, n={H.n})")
    k, n = H.k, H.n
    R, S, T = d.R, d.S, d.T
    checks: dict[str, Check] = {}

    overlap = sorted((R & S) | (R & T) | (S & T))
    missing = sorted(set(range(n)) - (R | S | T))
    stray = sorted((R | S | T) - set(range(n)))
    checks["vertex_partition"] = Check(
        not (overlap or missing or stray),
        f"overlap={overlap} missing={missing} out_of_range={stray}" if overlap or missing or stray else "",
        overlap + missing + stray,
    )

    want_R = {e for e in H.edges if R.intersection(e)}
    want_S = {e for e in H.edges if S.issuperset(e)}
    want_T = {e for e in H.edges if not R.intersection(e) and T.intersection(e)}
    got_R, got_S, got_T = set(d.H_R), set(d.H_S), set(d.H_T)
    diff = sorted((want_R ^ got_R) | (want_S ^ got_S) | (want_T ^ got_T))
    cover = got_R | got_S | got_T
    disjoint = not (got_R & got_S or got_R & got_T or got_S & got_T)
    extra = sorted(cover ^ set(H.edges))
    checks["edge_classes"] = Check(
        not diff and disjoint and not extra,
        "" if not diff and disjoint and not extra else "edge classes disagree with their definitions",
        diff + extra,
    )

    ratio = PEEL_THRESHOLD[k]
    checks["hr_bound"] = Check(len(d.H_R) <= ratio * len(R), f"|H_R|={len(d.H_R)} vs {ratio}|R|={ratio * len(R)}")

    HS = Hypergraph(k, n, d.H_S)
    if k == 4:
        ok, bad = is_thick_clique_subgraph(HS)
        bound = comb(len(S) // 2, 2)
        checks["hs_structure"] = Check(ok, "" if ok else "H_S is not a thick clique subgraph", bad)
        checks["hs_bound"] = Check(len(d.H_S) <= bound, f"|H_S|={len(d.H_S)} vs {bound}")
    else:
        ok, bad = is_quasi_bipartite(HS)
        checks["hs_structure"] = Check(ok, "" if ok else "H_S is not quasi-bipartite", bad)
        checks["hs_bound"] = Check(8 * len(d.H_S) <= len(S) ** 2, f"|H_S|={len(d.H_S)} vs |S|^2/8={len(S) ** 2 / 8}")

    c = CENTER_SIZE[k]
    bad_star = []
    groups = _star_inventory(d.H_T, S, k, n)
    for center, es in groups:
        traces = {tuple(v for v in e if v in S) for e in es}
        if len(traces) != 1 or len(center) != c or traces != {center}:
            bad_star.extend(es)
        elif any(v not in T for e in es for v in e if v not in S):
            bad_star.extend(es)
    consistent = tuple(groups) == tuple(d.stars)
    checks["ht_stars"] = Check(
        not bad_star and consistent,
        "" if not bad_star and consistent else ("star inventory mismatch" if not bad_star else "H_T is not a union of disjoint stars centred in S"),
        bad_star,
    )
    checks["ht_bound"] = Check(len(d.H_T) <= comb(len(T), 2), f"|H_T|={len(d.H_T)} vs C(|T|,2)={comb(len(T), 2)}")

    residual = Hypergraph(k, n, tuple(sorted(got_S | got_T)))
    low = [v for v in range(n) if v not in R and residual.degrees[v] <= ratio]
    checks["residual_min_degree"] = Check(not low, f"vertices outside R with degree <= {ratio}: {low}" if low else "", low)

    allowed = ALLOWED_RESIDUAL[k]
    bad_sig = []
    for e in residual.edges:
        cls = classify_edge_signature(residual, e)
        if cls.kind not in allowed:
            bad_sig.append(e)
    checks["residual_signatures"] = Check(not bad_sig, f"{len(bad_sig)} residual edges outside the allowed classes" if bad_sig else "", bad_sig)

    largest = max((len(es) for _, es in groups), default=0)
    return ValidationReport(checks, largest)
