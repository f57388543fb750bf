"""The limiting curve f(x) of the rescaled min-max-degree and its finite-n companions."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from math import comb, floor, sqrt
from numbers import Rational

from . import constructions
from .hypercore import max_degree

QUARTER = Fraction(1, 4)
THIRD = Fraction(1, 3)
HALF = Fraction(1, 2)

BRANCHES = ("thick", "four_stars", "three_stars", "two_stars")


class UndefinedAtTransition(ValueError):
    """f is not defined at x = 1/4, where it jumps."""


def branch_of(x: float | Rational) -> str:
    if x < 0 or x > 1:
        raise ValueError(f"x={x} outside [0, 1]")
    if x == QUARTER:
        raise UndefinedAtTransition("f(x) is undefined at x = 1/4")
    if x < QUARTER:
        return "thick"
    if x < THIRD:
        return "four_stars"
    if x < HALF:
        return "three_stars"
    return "two_stars"


def _root(v: float) -> float:
    # breakpoint arguments can land a few ulps below zero
    return sqrt(max(v, 0.0))


def branch_value(branch: str, x: float | Rational) -> float:
    """Evaluate one piece of f at x, ignoring which interval x lies in."""
    x = float(x)
    if branch == "thick":
        return 0.0
    if branch == "four_stars":
        return (1 + 2 * x + _root(12 * x - 3)) / 24
    if branch == "three_stars":
        return (1 + 3 * x + 2 * _root(6 * x - 2)) / 18
    if branch == "two_stars":
        return (x + _root(2 * x - 1)) / 2
    raise ValueError(f"unknown branch {branch!r}")


def f_of_x(x: float | Rational) -> float:
    """Limit of max degree / C(n-2,2) for P-free graphs of density x.

    The k=4 and k=3 problems share this curve; only the normalizer differs.
    """
    return branch_value(branch_of(x), x)


def jump_at_quarter() -> tuple[float, float]:
    """(left, right) limits of f at 1/4."""
    return branch_value("thick", QUARTER), branch_value("four_stars", QUARTER)


def degree_bounds(n: int, m: int) -> tuple[int, int]:
    """floor(4m/(n-1)) and ceil(4m/n), valid for m <= C(floor(n/2), 2)."""
    if n < 4:
        raise ValueError("n must be >= 4")
    if m < 0 or m > comb(n // 2, 2):
        raise ValueError(f"m={m} outside the thick-clique regime m <= {comb(n // 2, 2)}")
    return (4 * m) // (n - 1), -((-4 * m) // n)


def normalizer(n: int, k: int) -> int:
    if k == 4:
        return comb(n - 2, 2)
    if k == 3:
        return comb(n - 1, 2)
    raise ValueError("k must be 3 or 4")


def _as_fraction(v: float | str | Rational) -> Fraction:
    if isinstance(v, float):
        return Fraction(repr(v))
    return Fraction(v)


def construction_ratio(x: float | Rational, n: int, k: int) -> float:
    """Max degree / normalizer of the best construction at density x."""
    N = normalizer(n, k)
    x = _as_fraction(x)
    m = floor(x * N)
    if x < QUARTER:
        if k == 4:
            m = min(m, comb(n // 2, 2))
            H = constructions.near_regular_thick_subgraph(n, m)
        else:
            s = constructions.best_quasi_bipartite_split(n)
            H = constructions.near_regular_quasi_bipartite(n, min(m, s * (n - 2 * s)))
    else:
        H = constructions.balanced_star_union(n, m, k)
    return max_degree(H) / N


@dataclass(frozen=True)
class CurvePoint:
    x: Fraction
    fx: float
    branch: str
    ub: float | None = None
    ub_n: int | None = None


def emit_curve(x_min, x_max, step, n_for_ub: int | None = None, k: int = 4) -> list[CurvePoint]:
    """Curve points on the grid x_min, x_min+step, ..., skipping x = 1/4.

    Grid arithmetic is exact (decimal inputs become fractions), so 1/4 is
    hit exactly when it lies on the grid.
    """
    lo, hi, st = _as_fraction(x_min), _as_fraction(x_max), _as_fraction(step)
    if st <= 0:
        raise ValueError("step must be positive")
    if lo < 0 or hi > 1 or lo > hi:
        raise ValueError(f"bad range [{x_min}, {x_max}]")
    out = []
    i = 0
    while lo + i * st <= hi:
        x = lo + i * st
        i += 1
        if x == QUARTER:
            continue
        ub = construction_ratio(x, n_for_ub, k) if n_for_ub else None
        out.append(CurvePoint(x, f_of_x(x), branch_of(x), ub, n_for_ub))
    return out


CSV_HEADER = ("x", "branch", "fx", "ub_ratio", "ub_n")


def curve_csv(points: list[CurvePoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for p in points:
        w.writerow([
            repr(float(p.x)),
            p.branch,
            repr(p.fx),
            "" if p.ub is None else repr(p.ub),
            "" if p.ub_n is None else p.ub_n,
        ])
    return buf.getvalue()
