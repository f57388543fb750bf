from __future__ import annotations

import csv
import io
from fractions import Fraction
from math import comb, sqrt

import pytest
from hypothesis import given
from hypothesis import strategies as st

from loosepath import asymptotics as asy


def _star_split_value(x: float, r: int) -> float:
    """Independent derivation: r-1 equal stars of edge fraction a, one of fraction b.

    Stars on vertex fractions p (large) and q (small) with (r-1)p + q = 1
    carry about p^2 and q^2 of the normalizer; minimizing max(p^2) subject
    to (r-1)p^2 + q^2 = x gives the curve value p^2.
    """
    # (r-1)p^2 + (1-(r-1)p)^2 = x, take the smaller root for p
    A = (r - 1) + (r - 1) ** 2
    B = -2 * (r - 1)
    C = 1 - x
    disc = B * B - 4 * A * C
    p = (-B + sqrt(max(disc, 0))) / (2 * A)
    return p * p


class TestCurve:
    def test_known_values(self):
        assert asy.f_of_x(0.2) == 0
        assert asy.f_of_x(1) == 1
        assert asy.f_of_x(Fraction(1, 3)) == pytest.approx(1 / 9, abs=1e-15)
        assert asy.f_of_x(0.5) == pytest.approx(0.25, abs=1e-15)

    def test_branch_agreement(self):
        for b, left, right in ((asy.THIRD, "four_stars", "three_stars"), (asy.HALF, "three_stars", "two_stars")):
            assert abs(asy.branch_value(left, b) - asy.branch_value(right, b)) <= 1e-12

    def test_quarter_undefined(self):
        with pytest.raises(asy.UndefinedAtTransition):
            asy.f_of_x(0.25)
        with pytest.raises(asy.UndefinedAtTransition):
            asy.f_of_x(Fraction(1, 4))

    def test_jump(self):
        lo, hi = asy.jump_at_quarter()
        assert lo == 0 and hi == pytest.approx(1 / 16, abs=1e-15) and hi - lo > 0

    def test_outside_domain(self):
        for x in (-0.1, 1.01):
            with pytest.raises(ValueError):
                asy.f_of_x(x)
        with pytest.raises(ValueError):
            asy.branch_value("nope", 0.5)

    @pytest.mark.parametrize("x,target", [(0.75, 0.7286), (0.30, 0.0989)])
    def test_reference_numbers(self, x, target):
        assert asy.f_of_x(x) == pytest.approx(target, abs=1e-4)

    @given(st.floats(0.2501, 1.0))
    def test_matches_star_split_derivation(self, x):
        r = {"four_stars": 4, "three_stars": 3, "two_stars": 2}[asy.branch_of(x)]
        assert asy.f_of_x(x) == pytest.approx(_star_split_value(x, r), rel=1e-9, abs=1e-12)

    @given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
    def test_monotone_away_from_quarter(self, a, b):
        a, b = sorted((a, b))
        if a == 0.25 or b == 0.25:
            return
        assert asy.f_of_x(a) <= asy.f_of_x(b) + 1e-15

    @given(st.floats(0.0, 1.0))
    def test_bounded_by_x(self, x):
        if x != 0.25:
            assert 0 <= asy.f_of_x(x) <= x + 1e-15


class TestFiniteN:
    def test_degree_bounds(self):
        assert asy.degree_bounds(10, 10) == (4, 4)
        assert asy.degree_bounds(100, 1225) == (49, 49)
        with pytest.raises(ValueError):
            asy.degree_bounds(10, 11)

    def test_normalizer(self):
        assert asy.normalizer(10, 4) == comb(8, 2)
        assert asy.normalizer(10, 3) == comb(9, 2)
        with pytest.raises(ValueError):
            asy.normalizer(10, 5)

    @pytest.mark.parametrize("x", [0.30, 0.40, 0.75, 1.00])
    def test_construction_ratio_close(self, x):
        assert abs(asy.construction_ratio(x, 1000, 4) - asy.f_of_x(x)) <= 0.02 * asy.f_of_x(x)

    @pytest.mark.parametrize("x", [0.30, 0.60, 0.90])
    def test_construction_ratio_k3(self, x):
        assert abs(asy.construction_ratio(x, 600, 3) - asy.f_of_x(x)) <= 0.03 * asy.f_of_x(x)

    def test_below_quarter_is_small(self):
        assert asy.construction_ratio(0.2, 400, 4) < 0.02
        assert asy.construction_ratio(0.2, 400, 3) < 0.02


class TestEmit:
    def test_skips_quarter(self):
        pts = asy.emit_curve(0, 1, 0.05)
        xs = [p.x for p in pts]
        assert len(pts) == 20 and Fraction(1, 4) not in xs
        assert xs[0] == 0 and xs[-1] == 1

    def test_ub_column(self):
        pts = asy.emit_curve(0.75, 1, 0.25, n_for_ub=1000)
        assert pts[-1].ub == 1.0
        assert abs(pts[0].ub - pts[0].fx) <= 0.02 * pts[0].fx

    def test_csv(self):
        text = asy.curve_csv(asy.emit_curve("0.3", "0.5", "0.1"))
        rows = list(csv.reader(io.StringIO(text)))
        assert tuple(rows[0]) == asy.CSV_HEADER
        assert [r[1] for r in rows[1:]] == ["four_stars", "three_stars", "two_stars"]

    def test_bad_range(self):
        with pytest.raises(ValueError):
            asy.emit_curve(0, 1, 0)
        with pytest.raises(ValueError):
            asy.emit_curve(0.5, 0.4, 0.1)
