"""The acceptance criteria as runnable checks, plus the verify-all driver."""

from __future__ import annotations

import json
import random
import time
import warnings
from dataclasses import asdict, dataclass, field
from importlib import resources
from math import comb
from typing import Callable

from . import asymptotics as asy
from . import constructions as con
from . import decompose as dec
from . import oracle
from .hypercore import Hypergraph, component_graphs, components, max_degree
from .pathfree import find_loose_path, is_p33_free, is_p42_free

F413_DELETION_GOLDEN = 8


class _OutOfBudget(Exception):
    pass


@dataclass
class CriterionResult:
    id: int
    name: str
    status: str  # "pass" | "fail" | "skipped"
    elapsed: float = 0.0
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def line(self) -> str:
        return f"[{self.status.upper():>7}] criterion {self.id:>2} {self.name} ({self.elapsed:.2f}s)"


class _Ctx:
    """Collects sub-check outcomes and knows the remaining time."""

    def __init__(self, deadline: float | None):
        self.deadline = deadline
        self.detail: dict = {}
        self.failures: list[str] = []

    def remaining(self) -> float | None:
        if self.deadline is None:
            return None
        left = self.deadline - time.perf_counter()
        if left <= 0:
            raise _OutOfBudget
        return left

    def check(self, ok: bool, what: str) -> bool:
        if not ok:
            self.failures.append(what)
        return ok


def c1_p42_table(ctx: _Ctx) -> None:
    expected = {4: comb(4, 4), 5: comb(5, 4), 6: comb(6, 4), 7: 15, 8: 17}
    got = {}
    t0 = time.perf_counter()
    for n, want in expected.items():
        r = oracle.max_pfree_edges(4, 2, n, max_seconds=ctx.remaining())
        ctx.check(r.complete, f"n={n}: search incomplete")
        oracle.certify(r, 4, 2, "edges")
        got[n] = r.value
        ctx.check(r.value == want, f"h(4,2,{n})={r.value}, expected {want}")
    ctx.detail.update(values=got, seconds=round(time.perf_counter() - t0, 3))
    ctx.check(time.perf_counter() - t0 < 60, "slower than 60 s")


def c2_p33_table(ctx: _Ctx) -> None:
    expected = {n: comb(n, 3) for n in range(3, 7)} | {7: 20}
    got = {}
    t0 = time.perf_counter()
    for n, want in expected.items():
        r = oracle.max_pfree_edges(3, 3, n, max_seconds=ctx.remaining())
        ctx.check(r.complete, f"n={n}: search incomplete")
        oracle.certify(r, 3, 3, "edges")
        got[n] = r.value
        ctx.check(r.value == want, f"h(3,3,{n})={r.value}, expected {want}")
    ctx.detail.update(values=got, seconds=round(time.perf_counter() - t0, 3))
    ctx.check(time.perf_counter() - t0 < 600, "slower than 10 min")


def c3_constructions(ctx: _Ctx) -> None:
    t0 = time.perf_counter()
    for n in range(4, 201):
        ctx.remaining()
        H = con.thick_clique(n)
        ctx.check(H.m == comb(n // 2, 2), f"thick_clique({n}) has {H.m} edges")
        ctx.check(max_degree(H) == n // 2 - 1, f"thick_clique({n}) max degree {max_degree(H)}")
        ctx.check(is_p42_free(H), f"thick_clique({n}) contains P^4_2")
        Q = con.max_quasi_bipartite(n)
        ctx.check(Q.m == n * n // 8, f"max_quasi_bipartite({n}) has {Q.m} edges")
        ctx.check(max_degree(Q) <= -(-n // 2), f"max_quasi_bipartite({n}) max degree {max_degree(Q)}")
        ctx.check(is_p33_free(Q), f"max_quasi_bipartite({n}) contains P^3_3")
    ctx.detail["seconds"] = round(time.perf_counter() - t0, 3)
    ctx.check(time.perf_counter() - t0 < 10, "slower than 10 s")


def c4_f413_deletion(ctx: _Ctx) -> None:
    t0 = time.perf_counter()
    r = oracle.deletion_distance(con.f413(), 4, 2, max_seconds=ctx.remaining())
    ctx.detail.update(value=r.value, golden=F413_DELETION_GOLDEN, deleted=r.extra["deleted"])
    ctx.check(r.value >= 8, f"deletion distance {r.value} < 8")
    ctx.check(r.value == F413_DELETION_GOLDEN, f"deletion distance {r.value} differs from golden value")
    ctx.check(time.perf_counter() - t0 < 60, "slower than 60 s")


def c5_sandwich(ctx: _Ctx) -> None:
    t0 = time.perf_counter()
    table = {}
    for n in (7, 8, 9):
        prev = 0
        row = []
        for m in range(comb(n // 2, 2) + 1):
            r = oracle.min_max_degree(4, 2, n, m, max_seconds=ctx.remaining())
            if m:
                oracle.certify(r, 4, 2, "max_degree")
                ctx.check(r.witness.m == m, f"n={n} m={m}: witness has {r.witness.m} edges")
            lo, hi = (4 * m) // (n - 1), -((-4 * m) // n)
            ctx.check(lo <= r.value <= hi, f"n={n} m={m}: f={r.value} outside [{lo},{hi}]")
            ctx.check(r.value >= prev, f"n={n} m={m}: f decreased")
            prev = r.value
            row.append(r.value)
        table[n] = row
    ctx.detail["f_values"] = table
    ctx.check(time.perf_counter() - t0 < 300, "slower than 5 min")


def c6_curve(ctx: _Ctx) -> None:
    tol = 1e-12
    ctx.check(asy.f_of_x(0.2) == 0.0, "f(0.2) != 0")
    for b, left, right in ((asy.THIRD, "four_stars", "three_stars"), (asy.HALF, "three_stars", "two_stars")):
        a, c = asy.branch_value(left, b), asy.branch_value(right, b)
        ctx.detail[f"at_{b}"] = [a, c]
        ctx.check(abs(a - c) <= tol, f"branches disagree at {b}: {a} vs {c}")
        ctx.check(abs(asy.f_of_x(b) - a) <= tol, f"f({b}) is not the common branch value")
    lo, hi = asy.jump_at_quarter()
    ctx.detail["jump"] = [lo, hi]
    ctx.check(abs(lo) <= tol and abs(hi - 1 / 16) <= tol, f"jump at 1/4 is {(lo, hi)}")
    ctx.check(abs(asy.f_of_x(1) - 1) <= tol, "f(1) != 1")


def c7_convergence(ctx: _Ctx) -> None:
    t0 = time.perf_counter()
    n = 1000
    ratios = {}
    for x in (0.30, 0.40, 0.75, 1.00):
        ctx.remaining()
        ratio, fx = asy.construction_ratio(x, n, 4), asy.f_of_x(x)
        ratios[str(x)] = [ratio, fx]
        ctx.check(abs(ratio - fx) <= 0.02 * fx, f"x={x}: ratio {ratio} vs f {fx}")
    top = comb(n // 2, 2)
    samples = [1 + (top - 1) * i // 19 for i in range(20)]
    for m in samples:
        ctx.remaining()
        d = max_degree(con.near_regular_thick_subgraph(n, m))
        ctx.check(d <= -((-4 * m) // n), f"m={m}: near-regular max degree {d} > ceil(4m/n)")
    ctx.detail.update(ratios=ratios, sampled_m=samples)
    ctx.check(time.perf_counter() - t0 < 30, "slower than 30 s")


def _disjoint_union(k: int, parts: list[Hypergraph]) -> Hypergraph:
    edges, off = [], 0
    for P in parts:
        edges += [tuple(v + off for v in e) for e in P.edges]
        off += P.n
    return Hypergraph(k, off, tuple(edges))


def decomposition_gallery() -> list[tuple[str, Hypergraph, int]]:
    """(label, graph, random-subgraph quota) for the invariant suite."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", con.SmallParameterWarning)
        tri9 = oracle.max_pfree_with_triangle(9).witness
        four = [
            ("thick_clique(26)", con.thick_clique(26), 60),
            ("thick_clique(41)", con.thick_clique(41), 60),
            ("star_union4(40,300)", con.balanced_star_union(40, 300, 4), 80),
            ("star_union4(60,1200)", con.balanced_star_union(60, 1200, 4), 60),
            ("two_star", con.two_star(range(2, 30), (0, 1)), 40),
            ("f413+thick", _disjoint_union(4, [con.f413(), con.thick_clique(24)]), 80),
            ("f413+stars", _disjoint_union(4, [con.f413(), con.balanced_star_union(30, 200, 4)]), 80),
            ("H41(12)", con.gallery("H41", 12), 60),
            ("H42(12)", con.gallery("H42", 12), 40),
            ("H43(12)", con.gallery("H43", 12), 40),
            ("H41(100)", con.gallery("H41", 100), 5),
        ]
        three = [
            ("max_quasi_bipartite(30)", con.max_quasi_bipartite(30), 80),
            ("quasi_bipartite(5,9)", con.quasi_bipartite(5, 9), 40),
            ("star_union3(40,400)", con.balanced_star_union(40, 400, 3), 80),
            ("triangle9+qb", _disjoint_union(3, [tri9, con.max_quasi_bipartite(20)]), 80),
            ("triangle9+stars", _disjoint_union(3, [tri9, con.balanced_star_union(20, 100, 3)]), 115),
        ]
    return four + three


def c8_decomposition(ctx: _Ctx, seed: int = 20240611) -> None:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    checked = randoms = 0
    for label, G, quota in decomposition_gallery():
        randoms += quota
        samples = [G] + [G.with_edges([e for e in G.edges if rng.random() < p]) for p in
                         (rng.uniform(0.2, 0.95) for _ in range(quota))]
        for i, H in enumerate(samples):
            ctx.remaining()
            rep = dec.validate(dec.decompose(H), H)
            checked += 1
            if not rep.ok:
                ctx.check(False, f"{label} sample {i}: {[c for c, _ in rep.failures()]}")
    ctx.detail.update(graphs_checked=checked, random_subgraphs=randoms)
    ctx.check(randoms >= 1000, f"only {randoms} random subgraphs")
    ctx.check(time.perf_counter() - t0 < 120, "slower than 2 min")


def _is_3graph_star2(H: Hypergraph) -> bool:
    core = set(H.edges[0]).intersection(*H.edges[1:])
    return len(core) >= 2


def c9_p32(ctx: _Ctx) -> None:
    rows = {}
    for n in range(3, 9):
        r = oracle.p32_max_edges(n, max_seconds=ctx.remaining())
        oracle.certify(r, 3, 2, "edges")
        formula = con.p32_formula(n)
        shapes = []
        for C in component_graphs(r.witness):
            if C.m == 0:
                continue
            span = len({v for e in C.edges for v in e})
            ok = span <= 4 or _is_3graph_star2(C)
            shapes.append("K4-sub" if span <= 4 else "2-star")
            ctx.check(ok, f"n={n}: component {C.edges} is neither a 2-star nor inside K^3_4")
        rows[n] = {"search": r.value, "formula": formula, "components": shapes}
        # discrepancies are recorded, not hidden
        if r.value != formula:
            rows[n]["discrepancy"] = f"search {r.value} vs closed form {formula}"
        ctx.check(r.value == formula, f"n={n}: search {r.value} vs closed form {formula}")
    ctx.detail["table"] = rows


def _component_of(H: Hypergraph, v: int) -> Hypergraph:
    for part in components(H).parts:
        if v in part:
            keep = set(part)
            return H.with_edges([e for e in H.edges if e[0] in keep])
    raise ValueError(v)


def c10_triangle(ctx: _Ctx, seed: int = 7, per_n: int = 150) -> None:
    rng = random.Random(seed)
    maxima, corpus = {}, 0
    for n in range(6, 10):
        r = oracle.max_pfree_with_triangle(n, max_seconds=ctx.remaining())
        ctx.check(r.complete, f"n={n}: search incomplete")
        oracle.certify(r, 3, 3, "edges")
        maxima[n] = r.value
        # any connected graph on <= n vertices containing C has at most r.value edges
        ctx.check(r.value <= 4 * n, f"n={n}: {r.value} edges exceed 4n")
        graphs = [r.witness]
        for _ in range(per_n):
            graphs.append(_random_maximal_extension(n, rng))
        for G in graphs:
            ctx.remaining()
            C = _component_of(G, 0)
            span = len({v for e in C.edges for v in e})
            corpus += 1
            ctx.check(C.m <= 4 * span, f"n={n}: component with {C.m} edges on {span} vertices")
    ctx.detail.update(max_edges_with_triangle=maxima, corpus_size=corpus)


def _random_maximal_extension(n: int, rng: random.Random) -> Hypergraph:
    from itertools import combinations

    pool = [e for e in combinations(range(n), 3) if e not in oracle.TRIANGLE]
    rng.shuffle(pool)
    chosen = list(oracle.TRIANGLE)
    for e in pool:
        trial = Hypergraph(3, n, tuple(chosen + [e]))
        if find_loose_path(trial, 3) is None:
            chosen.append(e)
    return Hypergraph(3, n, tuple(chosen))


CRITERIA: list[tuple[int, str, Callable[[_Ctx], None]]] = [
    (1, "max P^4_2-free edges for n=4..8", c1_p42_table),
    (2, "max P^3_3-free edges for n=3..7", c2_p33_table),
    (3, "thick clique and quasi-bipartite extremal constructions", c3_constructions),
    (4, "F413 deletion distance to four 2-stars", c4_f413_deletion),
    (5, "sandwich bounds on f(n,m) for n=7,8,9", c5_sandwich),
    (6, "limit curve breakpoints", c6_curve),
    (7, "constructions converge to the limit curve", c7_convergence),
    (8, "decomposition invariants over the gallery", c8_decomposition),
    (9, "P^3_2-free maxima against the closed form", c9_p32),
    (10, "edge bound for components containing a triangle", c10_triangle),
]


def run_criterion(cid: int, budget: float | None = None) -> CriterionResult:
    _, name, fn = next(c for c in CRITERIA if c[0] == cid)
    t0 = time.perf_counter()
    if budget is not None and budget <= 0:
        return CriterionResult(cid, name, "skipped", 0.0, {"reason": "no budget left"})
    ctx = _Ctx(None if budget is None else t0 + budget)
    try:
        fn(ctx)
    except (_OutOfBudget, oracle.BudgetExceeded):
        return CriterionResult(cid, name, "skipped", time.perf_counter() - t0, {"reason": "budget exhausted", **ctx.detail})
    except Exception as exc:  # a crash is a failed criterion, not a crashed report
        ctx.failures.append(f"{type(exc).__name__}: {exc}")
    detail = dict(ctx.detail)
    if ctx.failures:
        detail["failures"] = ctx.failures
    return CriterionResult(cid, name, "fail" if ctx.failures else "pass", time.perf_counter() - t0, detail)


def verify_all(budget: float | None = None, only: list[int] | None = None) -> dict:
    """Run the criteria in order against a shared wall-clock budget (seconds)."""
    t0 = time.perf_counter()
    results = []
    for cid, _, _ in CRITERIA:
        if only and cid not in only:
            continue
        left = None if budget is None else budget - (time.perf_counter() - t0)
        results.append(run_criterion(cid, left))
    counts = {s: sum(r.status == s for r in results) for s in ("pass", "fail", "skipped")}
    return {
        "budget_seconds": budget,
        "elapsed": round(time.perf_counter() - t0, 3),
        "criteria": [_jsonable(asdict(r)) for r in results],
        "summary": {"passed": counts["pass"], "failed": counts["fail"], "skipped": counts["skipped"],
                    "all_passed": counts["pass"] == len(results)},
    }


def _jsonable(obj):
    return json.loads(json.dumps(obj, default=str))


def report_schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("report.schema.json").read_text())


def validate_report(report: dict) -> None:
    import jsonschema

    jsonschema.validate(report, report_schema())
