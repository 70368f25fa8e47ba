import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cheeger_atlas.cheeger import (ImplicitRootProblem, cheeger_constant,
                                   implicit_bound_value, smallest_crossing)
from cheeger_atlas.errors import NoRoot
from cheeger_atlas.functionals import area, diameter, inradius, measure, perimeter
from cheeger_atlas.geom import inner_parallel, inner_parallel_area
from cheeger_atlas.sampler import valtr
from conftest import random_polygons, regular_ngon

PI = math.pi


def square_t_star() -> float:
    # analytic oracle for the unit square: (1 - 2t)^2 = pi t^2
    return 1.0 / (2.0 + math.sqrt(PI))


def triangle_t_star(A: float, r: float) -> float:
    # homothetic shrinking: A (1 - t/r)^2 = pi t^2
    return math.sqrt(A) / (math.sqrt(PI) + math.sqrt(A) / r)


class TestCheegerConstant:
    def test_unit_square_analytic(self, unit_square):
        res = cheeger_constant(unit_square)
        assert res.h == pytest.approx(2.0 + math.sqrt(PI), abs=1e-9)
        assert res.t_star == pytest.approx(square_t_star(), abs=1e-12)

    def test_ball_256(self):
        res = cheeger_constant(regular_ngon(256), with_set=False)
        assert res.h == pytest.approx(2.0, abs=2e-3)
        assert res.t_star == pytest.approx(0.5, abs=1e-3)

    def test_equilateral_form_body_equality(self, equilateral):
        # form-body homothets satisfy h = 1/r + sqrt(pi/A) exactly
        res = cheeger_constant(equilateral, with_set=False)
        expect = 2 * math.sqrt(3) + 2 * math.sqrt(PI / math.sqrt(3))
        assert res.h == pytest.approx(expect, abs=1e-9)
        f = measure(equilateral)
        t = triangle_t_star(f.area, f.inradius)
        assert res.t_star == pytest.approx(t, abs=1e-12)

    def test_defining_equation(self, right_triangle):
        res = cheeger_constant(right_triangle, with_set=False)
        assert res.h * res.t_star == pytest.approx(1.0, abs=1e-12)
        core_area = area(res.inner_core)
        assert core_area == pytest.approx(PI * res.t_star ** 2, rel=1e-9)

    def test_cheeger_set_structure(self, unit_square):
        res = cheeger_constant(unit_square, arc_segments=4096)
        c = res.cheeger_set
        assert perimeter(c) / area(c) == pytest.approx(res.h, rel=1e-6)
        r, _ = inradius(c)
        assert r == pytest.approx(0.5, abs=1e-5)
        assert diameter(c)[0] <= math.sqrt(2) + 1e-9

    def test_scaling(self):
        poly = valtr(9, 123)
        h1 = cheeger_constant(poly, with_set=False).h
        for t in (0.5, 2.0):
            h2 = cheeger_constant(poly.scale(t), with_set=False).h
            assert h2 == pytest.approx(h1 / t, rel=1e-9)

    def test_monotone_under_inclusion(self):
        for poly in random_polygons(10, seed=2):
            r, _ = inradius(poly)
            inner = inner_parallel(poly, 0.3 * r)
            h_out = cheeger_constant(poly, with_set=False).h
            h_in = cheeger_constant(inner, with_set=False).h
            assert h_in >= h_out - 1e-9 * h_out

    @settings(max_examples=80, deadline=None)
    @given(seed=st.integers(0, 2**63 - 1), n=st.integers(3, 30))
    def test_inradius_bracket(self, seed, n):
        poly = valtr(n, seed)
        r, _ = inradius(poly)
        h = cheeger_constant(poly, with_set=False).h
        assert 1 / r - 1e-9 / r <= h <= 2 / r + 1e-9 / r


class TestSmallestCrossing:
    def test_symmetric_parabola(self):
        p = ImplicitRootProblem(g=lambda t: PI * (1 - t) ** 2, upper=1.0)
        assert smallest_crossing(p) == pytest.approx(0.5, abs=1e-13)
        assert implicit_bound_value(p) == pytest.approx(2.0, abs=1e-12)

    def test_square_offset_area(self, unit_square):
        p = ImplicitRootProblem(
            g=lambda t: np.asarray([inner_parallel_area(unit_square, float(x)) for x in np.atleast_1d(t)]),
            upper=0.5)
        assert smallest_crossing(p) == pytest.approx(square_t_star(), abs=1e-12)

    def test_no_root(self):
        with pytest.raises(NoRoot):
            smallest_crossing(ImplicitRootProblem(g=lambda t: -np.ones_like(t), upper=1.0))

    def test_touch_at_zero_is_vacuous(self):
        # g below pi t^2 everywhere except at t = 0 carries no information
        with pytest.raises(NoRoot):
            smallest_crossing(ImplicitRootProblem(g=lambda t: -np.asarray(t), upper=1.0))

    def test_largest_mode(self):
        # g(t) = pi*(2t - t^2) meets pi t^2 at 0 (vacuous) and crosses at 1
        g = lambda t: PI * np.maximum(2 * t - t * t, 0.0)
        p_small = ImplicitRootProblem(g=g, upper=2.0, mode="smallest")
        p_large = ImplicitRootProblem(g=g, upper=2.0, mode="largest")
        assert smallest_crossing(p_small) == pytest.approx(1.0, abs=1e-10)
        assert smallest_crossing(p_large) == pytest.approx(1.0, abs=1e-10)
