"""Deliberately naive reference implementations, sharing no code with the package."""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp


def is_loose_path(seq, k):
    sets = [set(e) for e in seq]
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            size = len(sets[i] & sets[j])
            if j == i + 1 and size != 1:
                return False
            if j > i + 1 and size != 0:
                return False
    return len(set().union(*sets)) == k * len(sets) - len(sets) + 1


def has_path(edges, k, length):
    return any(is_loose_path(seq, k) for seq in permutations(edges, length))


def path_copies(k, n, length):
    """Every loose path on [n] as a frozenset of edges."""
    cands = list(combinations(range(n), k))
    found = set()
    for seq in permutations(cands, length):
        if is_loose_path(seq, k):
            found.add(frozenset(seq))
    return cands, found


def milp_max_free(k, n, length, fixed=()):
    """Maximum P-free edge count as a 0/1 program: each path copy keeps < length edges."""
    cands, copies = path_copies(k, n, length)
    index = {e: i for i, e in enumerate(cands)}
    rows = np.zeros((len(copies), len(cands)))
    for r, copy in enumerate(copies):
        for e in copy:
            rows[r, index[e]] = 1
    cons = [LinearConstraint(rows, -np.inf, length - 1)] if len(copies) else []
    lower = np.zeros(len(cands))
    for e in fixed:
        lower[index[tuple(sorted(e))]] = 1
    res = milp(-np.ones(len(cands)), constraints=cons, integrality=np.ones(len(cands)), bounds=Bounds(lower, 1))
    return round(-res.fun)


def degrees(edges, n):
    d = [0] * n
    for e in edges:
        for v in e:
            d[v] += 1
    return d


def min_max_degree(k, n, m, length):
    best = None
    for es in combinations(combinations(range(n), k), m):
        d = max(degrees(es, n)) if es else 0
        if best is not None and d >= best:
            continue
        if not has_path(es, k, length):
            best = d
    return best


def signature(edges, S, skip=None):
    S = set(S)
    parts = set()
    for e in edges:
        if skip is not None and tuple(e) == tuple(skip):
            continue
        inter = frozenset(S & set(e))
        if inter:
            parts.add(inter)
    return parts


def twins(edges, n):
    used = {v for e in edges for v in e}
    out = set()
    for x, y in combinations(sorted(used), 2):
        if all((x in e) == (y in e) for e in edges):
            out.add((x, y))
    return out


def components(edges, n):
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for e in edges:
        for v in e[1:]:
            parent[find(v)] = find(e[0])
    groups = {}
    for v in {v for e in edges for v in e}:
        groups.setdefault(find(v), set()).add(v)
    return sorted(sorted(g) for g in groups.values())


def star_union(edges, n, t, c):
    """Is there a choice of <= t disjoint c-sets so each edge holds exactly one and stars stay apart?"""
    if not edges:
        return True
    pools = list(combinations(range(n), c))
    for r in range(1, t + 1):
        for centers in combinations(pools, r):
            flat = [v for ctr in centers for v in ctr]
            if len(set(flat)) != len(flat):
                continue
            owner = []
            ok = True
            for e in edges:
                hits = [i for i, ctr in enumerate(centers) if set(ctr) <= set(e)]
                if len(hits) != 1:
                    ok = False
                    break
                owner.append(hits[0])
            if not ok:
                continue
            spans = [set() for _ in centers]
            for e, i in zip(edges, owner):
                spans[i] |= set(e)
            if all(not (spans[i] & spans[j]) for i, j in combinations(range(r), 2)):
                return True
    return False


def deletion_distance(edges, n, t, c):
    for d in range(len(edges) + 1):
        for drop in combinations(range(len(edges)), d):
            keep = [e for i, e in enumerate(edges) if i not in drop]
            if star_union(keep, n, t, c):
                return d
    raise AssertionError
