"""Generators for the extremal P-free hypergraphs.

Every generator returns a :class:`Hypergraph`; :func:`build` additionally
returns a :class:`ConstructionSpec` whose labeling maps role names to vertex
ids, so tests and the CLI can address "center", "base" or "dubleton i"
symbolically.

Labeling conventions
--------------------
* thick cliques: dubleton ``i`` is ``(2i, 2i+1)``; for odd n the last vertex
  is isolated.
* quasi-bipartite: ``x_i = 2i``, ``y_i = 2i+1`` for ``i < s'``, then
  ``z_j = 2s' + j``.
* star unions from :func:`balanced_star_union`: centers first, then leaves, star
  after star.
"""

from __future__ import annotations

import heapq
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Sequence

from .hypercore import Edge, Hypergraph


@dataclass(frozen=True)
class ConstructionSpec:
    name: str
    params: dict[str, int]
    labeling: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": dict(self.params),
            "labeling": {k: list(v) for k, v in self.labeling.items()},
        }


class SmallParameterWarning(UserWarning):
    """Gallery graph built below the size at which it is claimed extremal."""


def _dubletons(n: int) -> list[tuple[int, int]]:
    return [(2 * i, 2 * i + 1) for i in range(n // 2)]


def thick_clique(n: int) -> Hypergraph:
    """Every pair of dubletons forms an edge."""
    if n < 4:
        raise ValueError(f"thick clique needs n >= 4, got {n}")
    d = _dubletons(n)
    return Hypergraph(4, n, tuple(p + q for p, q in combinations(d, 2)))


def thick_clique_general(n: int, r: int) -> Hypergraph:
    """(4r)-graph: every 2r dubletons form an edge."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if n < 4 * r:
        raise ValueError(f"thick {4 * r}-clique needs n >= {4 * r}, got {n}")
    d = _dubletons(n)
    edges = tuple(sum(group, ()) for group in combinations(d, 2 * r))
    return Hypergraph(4 * r, n, edges)


def _star_edges(center: Sequence[int], leaves: Sequence[int]) -> list[Edge]:
    c = tuple(center)
    return [c + pair for pair in combinations(sorted(leaves), 2)]


def two_star(leaves: Sequence[int], centers: Sequence[int], n: int | None = None) -> Hypergraph:
    """Complete 2-star: all 4-sets made of both centers and two leaves."""
    if len(centers) != 2 or len(set(centers)) != 2:
        raise ValueError("a 2-star needs exactly two distinct centers")
    if set(centers) & set(leaves):
        raise ValueError("centers and leaves overlap")
    if n is None:
        n = max([*leaves, *centers]) + 1
    return Hypergraph(4, n, tuple(_star_edges(centers, leaves)))


def star(leaves: Sequence[int], center: int, n: int | None = None) -> Hypergraph:
    """Complete 3-uniform star: all triples through the center."""
    if center in set(leaves):
        raise ValueError("center and leaves overlap")
    if n is None:
        n = max([*leaves, center]) + 1
    return Hypergraph(3, n, tuple(_star_edges((center,), leaves)))


def quasi_bipartite(s: int, t: int) -> Hypergraph:
    if s < 1 or t < 1:
        raise ValueError(f"quasi-bipartite needs s' >= 1 and t >= 1, got {s}, {t}")
    edges = tuple((2 * i, 2 * i + 1, 2 * s + j) for i in range(s) for j in range(t))
    return Hypergraph(3, 2 * s + t, edges)


def best_quasi_bipartite_split(n: int) -> int:
    """s' maximizing s'(n - 2s'); ties go to the larger s' (smaller max degree)."""
    if n < 3:
        raise ValueError(f"quasi-bipartite needs n >= 3, got {n}")
    return max(range(1, (n - 1) // 2 + 1), key=lambda s: (s * (n - 2 * s), s))


def max_quasi_bipartite(n: int) -> Hypergraph:
    s = best_quasi_bipartite_split(n)
    return quasi_bipartite(s, n - 2 * s)


F413_BASE = (0, 1, 2, 3)


def f413() -> Hypergraph:
    """4-subsets of {0..7} with at least three elements in {0,1,2,3}."""
    edges = tuple(e for e in combinations(range(8), 4) if len(set(e) & set(F413_BASE)) >= 3)
    return Hypergraph(4, 8, edges)


def _relabel(H: Hypergraph, offset: int) -> list[Edge]:
    return [tuple(v + offset for v in e) for e in H.edges]


def _gallery_layout(name: str, k: int) -> tuple[int, list[Edge], dict[str, tuple[int, ...]]]:
    if k < 6:
        raise ValueError(f"gallery star size must be >= 6, got {k}")
    labels: dict[str, tuple[int, ...]] = {}
    edges: list[Edge] = []
    if name == "H41":
        # three 2-stars on k vertices, joined on their centers, plus F413
        centers = []
        for s in range(3):
            base = s * k
            c, leaves = (base, base + 1), range(base + 2, base + k)
            centers.append(c)
            labels[f"center {s}"] = c
            labels[f"leaves {s}"] = tuple(leaves)
            edges += _star_edges(c, leaves)
        edges += [p + q for p, q in combinations(centers, 2)]
        edges += _relabel(f413(), 3 * k)
        labels["base"] = tuple(3 * k + v for v in F413_BASE)
        labels["f413"] = tuple(range(3 * k, 3 * k + 8))
        return 3 * k + 8, edges, labels
    if name == "H42":
        # thick clique on 10 vertices; 2-stars rooted on dubletons 0, 1, 2
        edges += [p + q for p, q in combinations(_dubletons(10), 2)]
        for i, d in enumerate(_dubletons(10)):
            labels[f"dubleton {i}"] = d
        for s in range(3):
            c = (2 * s, 2 * s + 1)
            leaves = range(10 + s * (k - 2), 10 + (s + 1) * (k - 2))
            labels[f"center {s}"] = c
            labels[f"leaves {s}"] = tuple(leaves)
            edges += _star_edges(c, leaves)
        return 3 * k + 4, edges, labels
    if name == "H43":
        # three 2-stars on k vertices joined on their centers, plus K^4_6
        centers = []
        for s in range(3):
            base = s * k
            c, leaves = (base, base + 1), range(base + 2, base + k)
            centers.append(c)
            labels[f"center {s}"] = c
            labels[f"leaves {s}"] = tuple(leaves)
            edges += _star_edges(c, leaves)
        edges += [p + q for p, q in combinations(centers, 2)]
        edges += [tuple(3 * k + v for v in e) for e in combinations(range(6), 4)]
        labels["clique"] = tuple(range(3 * k, 3 * k + 6))
        return 3 * k + 6, edges, labels
    raise ValueError(f"unknown gallery graph {name!r}")


def gallery(name: str, k: int) -> Hypergraph:
    """The 4-graphs H41, H42, H43 built from three large 2-stars on k vertices."""
    if name == "H41" and k < 100:
        warnings.warn(f"H41 with k={k} < 100 is below its stated extremal range", SmallParameterWarning, stacklevel=2)
    n, edges, _ = _gallery_layout(name, k)
    return Hypergraph(4, n, tuple(edges))


def _near_regular_graph(d: int, m: int) -> list[tuple[int, int]]:
    """Simple graph on d vertices with m edges and degrees differing by <= 1.

    Havel-Hakimi on the almost-regular degree sequence, which is always
    graphic when m <= C(d, 2).
    """
    if m == 0:
        return []
    q, r = divmod(2 * m, d)
    target = [q + 1 if i < r else q for i in range(d)]
    heap = [(-t, i) for i, t in enumerate(target) if t]
    heapq.heapify(heap)
    out = []
    while heap:
        negt, v = heapq.heappop(heap)
        need = -negt
        picked = [heapq.heappop(heap) for _ in range(need)]
        if len(picked) < need:
            raise AssertionError("degree sequence not graphic")
        for negu, u in picked:
            out.append((min(u, v), max(u, v)))
            if negu + 1 < 0:
                heapq.heappush(heap, (negu + 1, u))
    return sorted(out)


def near_regular_thick_subgraph(n: int, m: int) -> Hypergraph:
    """m edges of the thick clique on n vertices with dubleton degrees within 1.

    Max degree is ceil(2m / floor(n/2)), which equals ceil(4m/n) for even n.
    """
    d = n // 2
    if m < 0 or m > comb(d, 2):
        raise ValueError(f"m={m} exceeds thick clique capacity C({d},2)={comb(d, 2)}")
    dub = _dubletons(n)
    return Hypergraph(4, n, tuple(dub[a] + dub[b] for a, b in _near_regular_graph(d, m)))


def near_regular_quasi_bipartite(n: int, m: int) -> Hypergraph:
    """m edges of max_quasi_bipartite(n), spread along diagonals of the pair x z grid."""
    s = best_quasi_bipartite_split(n)
    t = n - 2 * s
    if m < 0 or m > s * t:
        raise ValueError(f"m={m} exceeds quasi-bipartite capacity {s * t}")
    cells = sorted(((j - i) % t, i, j) for i in range(s) for j in range(t))[:m]
    return Hypergraph(3, n, tuple((2 * i, 2 * i + 1, 2 * s + j) for _, i, j in cells))


# -- star unions ----------------------------------------------------------


def star_capacity(v: int, k: int) -> int:
    """Edges of a complete (2-)star spanning v vertices."""
    c = 2 if k == 4 else 1
    return comb(v - c, 2) if v >= c + 2 else 0


def _min_vertices(e: int, k: int) -> int:
    """Fewest vertices a star with e edges needs."""
    if e == 0:
        return 0
    lo, hi = k, k
    while star_capacity(hi, k) < e:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if star_capacity(mid, k) >= e:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _star_sizes(n: int, k: int, cap: int, stars: int = 4) -> list[int]:
    """Greedy fill: as many stars of `cap` edges as fit, then one partial star."""
    need = _min_vertices(cap, k)
    sizes, left = [], n
    for _ in range(stars):
        if cap and left >= need:
            sizes.append(cap)
            left -= need
        else:
            rest = min(cap, star_capacity(left, k))
            if rest:
                sizes.append(rest)
            break
    return sizes


def star_union_degree(n: int, m: int, k: int, stars: int = 4) -> int:
    """Smallest max star size over unions of <= `stars` disjoint stars with m edges."""
    if k not in (3, 4):
        raise ValueError("star unions are defined for k in {3, 4}")
    top = star_capacity(n, k)
    if m < 0 or m > top:
        raise ValueError(f"m={m} infeasible for a star union on {n} vertices (max {top})")
    if m == 0:
        return 0
    lo, hi = 1, top
    while lo < hi:
        mid = (lo + hi) // 2
        if sum(_star_sizes(n, k, mid, stars)) >= m:
            hi = mid
        else:
            lo = mid + 1
    return lo


def balanced_star_union(n: int, m: int, k: int) -> Hypergraph:
    """Union of at most four disjoint complete-ish (2-)stars with exactly m edges.

    Star sizes minimize the largest star (hence the max degree) over all
    such unions: binary search on the cap, then fill stars to the cap.
    """
    return _star_union_layout(n, m, k)[0]


def _star_union_layout(n: int, m: int, k: int):
    cap = star_union_degree(n, m, k)
    c = 2 if k == 4 else 1
    edges: list[Edge] = []
    labels: dict[str, tuple[int, ...]] = {}
    left, nxt = m, 0
    idx = 0
    while left:
        e = min(cap, left)
        v = _min_vertices(e, k)
        center = tuple(range(nxt, nxt + c))
        leaves = range(nxt + c, nxt + v)
        pairs = combinations(leaves, 2)
        edges += [center + next(pairs) for _ in range(e)]
        labels[f"center {idx}"] = center
        labels[f"leaves {idx}"] = tuple(leaves)
        nxt += v
        left -= e
        idx += 1
    if nxt > n:
        raise AssertionError("star layout overflowed the vertex budget")
    return Hypergraph(k, n, tuple(edges)), labels


def h_formula(n: int) -> int:
    """Maximum edges of a P^4_2-free 4-graph on n vertices."""
    if n < 4:
        raise ValueError("n must be >= 4")
    if n <= 6:
        return comb(n, 4)
    return {7: 15, 8: 17}.get(n, comb(n - 2, 2))


def hhat_formula(n: int) -> int:
    """Maximum edges of a P^3_3-free 3-graph on n vertices."""
    if n < 3:
        raise ValueError("n must be >= 3")
    if n <= 6:
        return comb(n, 3)
    return 20 if n == 7 else comb(n - 1, 2)


def p32_formula(n: int) -> int:
    """Claimed maximum edges of a P^3_2-free 3-graph on n vertices."""
    return (n + 1) // 4 + 3 * (n // 4)


# -- registry used by the CLI ---------------------------------------------


def _spec_thick(n: int) -> dict[str, tuple[int, ...]]:
    lab = {f"dubleton {i}": d for i, d in enumerate(_dubletons(n))}
    if n % 2:
        lab["isolated"] = (n - 1,)
    return lab


def _build_thick(p):
    return thick_clique(p["n"]), _spec_thick(p["n"])


def _build_thick_general(p):
    return thick_clique_general(p["n"], p["r"]), _spec_thick(p["n"])


def _build_two_star(p):
    L = p["leaves"]
    return two_star(range(2, L + 2), (0, 1), p.get("n", L + 2)), {"center": (0, 1), "leaves": tuple(range(2, L + 2))}


def _build_star(p):
    L = p["leaves"]
    return star(range(1, L + 1), 0, p.get("n", L + 1)), {"center": (0,), "leaves": tuple(range(1, L + 1))}


def _qb_labels(s: int, t: int) -> dict[str, tuple[int, ...]]:
    lab = {}
    for i in range(s):
        lab[f"x_{i}"] = (2 * i,)
        lab[f"y_{i}"] = (2 * i + 1,)
    for j in range(t):
        lab[f"z_{j}"] = (2 * s + j,)
    return lab


def _build_qb(p):
    return quasi_bipartite(p["s"], p["t"]), _qb_labels(p["s"], p["t"])


def _build_max_qb(p):
    s = best_quasi_bipartite_split(p["n"])
    return max_quasi_bipartite(p["n"]), _qb_labels(s, p["n"] - 2 * s)


def _build_f413(p):
    return f413(), {"base": F413_BASE, "outside": (4, 5, 6, 7)}


def _build_gallery(name):
    def go(p):
        g = gallery(name, p["k"])
        return g, _gallery_layout(name, p["k"])[2]

    return go


def _build_near_regular(p):
    return near_regular_thick_subgraph(p["n"], p["m"]), _spec_thick(p["n"])


def _build_balanced(p):
    return _star_union_layout(p["n"], p["m"], p["k"])


BUILDERS: dict[str, tuple[Callable, tuple[str, ...]]] = {
    "thick-clique": (_build_thick, ("n",)),
    "thick-clique-general": (_build_thick_general, ("n", "r")),
    "two-star": (_build_two_star, ("leaves",)),
    "star": (_build_star, ("leaves",)),
    "quasi-bipartite": (_build_qb, ("s", "t")),
    "max-quasi-bipartite": (_build_max_qb, ("n",)),
    "f413": (_build_f413, ()),
    "H41": (_build_gallery("H41"), ("k",)),
    "H42": (_build_gallery("H42"), ("k",)),
    "H43": (_build_gallery("H43"), ("k",)),
    "near-regular": (_build_near_regular, ("n", "m")),
    "balanced-star-union": (_build_balanced, ("n", "m", "k")),
}


def build(name: str, params: dict[str, int]) -> tuple[Hypergraph, ConstructionSpec]:
    if name not in BUILDERS:
        raise ValueError(f"unknown construction {name!r}; choose from {', '.join(BUILDERS)}")
    fn, required = BUILDERS[name]
    missing = [r for r in required if r not in params]
    if missing:
        raise ValueError(f"{name} needs parameters: {', '.join(missing)}")
    H, labels = fn(params)
    return H, ConstructionSpec(name, dict(params), labels)
