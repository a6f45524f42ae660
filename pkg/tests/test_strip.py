import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from oracles import sec_integral
from quasilines.errors import DomainError
from quasilines.strip import (
    HALF_WIDTH,
    BoundReport,
    LevelOffset,
    Theorem,
    distance_for_offset,
    harmonic_height,
    harmonic_level_bound,
    in_strip,
    level_line_bound,
    offset_for_distance,
    strip_distance,
    symmetric_level_bound,
)

SQRT2 = math.sqrt(2)


def quadrature_offset(c):
    return brentq(lambda t: sec_integral(t) - c, 0, HALF_WIDTH - 1e-9, xtol=1e-15, rtol=1e-15)


class TestOffsetForDistance:
    def test_zero(self):
        assert offset_for_distance(0) == 0

    def test_quarter(self):
        assert float(offset_for_distance(math.log(1 + SQRT2))) == pytest.approx(math.pi / 4, abs=1e-15)

    def test_c5_against_quadrature(self):
        t = float(offset_for_distance(5.0))
        assert t < HALF_WIDTH
        assert abs(t - quadrature_offset(5.0)) < 1e-9

    def test_explicit_formula(self):
        c = np.linspace(0, 10, 41)
        assert np.allclose(offset_for_distance(c).astype(float), 2 * np.arctan(np.exp(c)) - math.pi / 2, atol=1e-14)

    @pytest.mark.parametrize("bad", [-1e-9, -3.0, math.inf, math.nan])
    def test_rejects(self, bad):
        with pytest.raises(DomainError):
            offset_for_distance(bad)

    def test_rejects_complex(self):
        with pytest.raises(DomainError):
            offset_for_distance(1 + 1j)


class TestDistanceForOffset:
    def test_zero(self):
        assert distance_for_offset(0.0) == 0.0

    def test_quarter(self):
        assert distance_for_offset(math.pi / 4) == pytest.approx(0.881373587019543, abs=1e-14)

    def test_near_wall(self):
        t = HALF_WIDTH - 1e-6
        exact = math.log(math.tan(math.pi / 4 + t / 2))
        assert abs(distance_for_offset(t) - exact) / exact < 1e-8
        assert abs(distance_for_offset(t) - sec_integral(t)) / exact < 1e-8

    def test_even(self):
        assert distance_for_offset(-0.7) == distance_for_offset(0.7)

    @pytest.mark.parametrize("bad", [HALF_WIDTH, -HALF_WIDTH, 2.0, HALF_WIDTH - 1e-13, math.nan])
    def test_rejects(self, bad):
        with pytest.raises(DomainError):
            distance_for_offset(bad)

    def test_array(self):
        t = np.linspace(-1.5, 1.5, 7)
        d = distance_for_offset(t)
        assert d.dtype == np.float64 and d.shape == t.shape

    @given(st.floats(min_value=-(HALF_WIDTH - 1e-3), max_value=HALF_WIDTH - 1e-3))
    @settings(max_examples=60, deadline=None)
    def test_matches_quadrature(self, t):
        assert abs(distance_for_offset(t) - sec_integral(t)) < 1e-9

    @given(st.floats(min_value=-(HALF_WIDTH - 1e-3), max_value=HALF_WIDTH - 1e-3))
    @settings(max_examples=100, deadline=None)
    def test_roundtrip_offset(self, t):
        back = float(offset_for_distance(distance_for_offset(t)))
        assert abs(back - abs(t)) < 1e-12

    @given(st.floats(min_value=0, max_value=20))
    @settings(max_examples=100, deadline=None)
    def test_roundtrip_distance(self, c):
        assert abs(distance_for_offset(offset_for_distance(c)) - c) < 1e-10

    @given(
        st.floats(min_value=0, max_value=HALF_WIDTH - 1e-3),
        st.floats(min_value=0, max_value=HALF_WIDTH - 1e-3),
    )
    def test_monotone(self, s, t):
        if s < t:
            assert distance_for_offset(s) <= distance_for_offset(t)


class TestLevelOffset:
    def test_pairing_signs(self):
        lo = LevelOffset.from_offset(-0.5)
        assert lo.c < 0 and lo.t == -0.5
        assert LevelOffset.from_offset(0.0).c == 0
        hi = LevelOffset.from_distance(1.0)
        assert hi.t > 0


class TestStripDistance:
    def test_same_point(self):
        assert strip_distance(0.3 + 0.2j, 0.3 + 0.2j) == 0

    def test_vertical_against_quadrature(self):
        # the imaginary axis is a geodesic, so the distance is the sec integral
        assert strip_distance(0, 1j * math.pi / 4) == pytest.approx(math.log(1 + SQRT2), abs=1e-13)
        for t in (0.3, 1.0, 1.5):
            assert strip_distance(0, 1j * t) == pytest.approx(sec_integral(t), abs=1e-11)

    def test_real_axis_is_euclidean(self):
        for x in (0.1, 1.0, 3.5):
            assert strip_distance(0, x) == pytest.approx(x, abs=1e-12)

    def test_dominates_line_distance(self):
        # from a real point to a point above, at least the distance between the two lines
        for z in (1 + 0.5j, -2 + 1.2j):
            assert strip_distance(0, z) >= distance_for_offset(z.imag) - 1e-12

    def test_rejects_boundary(self):
        with pytest.raises(DomainError):
            strip_distance(0, 2j)

    @given(
        st.complex_numbers(max_magnitude=3).filter(lambda z: abs(z.imag) < 1.4),
        st.complex_numbers(max_magnitude=3).filter(lambda z: abs(z.imag) < 1.4),
        st.complex_numbers(max_magnitude=3).filter(lambda z: abs(z.imag) < 1.4),
    )
    def test_triangle_inequality(self, a, b, c):
        assert strip_distance(a, c) <= strip_distance(a, b) + strip_distance(b, c) + 1e-9

    @given(st.complex_numbers(max_magnitude=3).filter(lambda z: abs(z.imag) < 1.4), st.floats(-5, 5))
    def test_translation_invariant(self, z, s):
        assert strip_distance(0.1j, z) == pytest.approx(strip_distance(0.1j + s, z + s), abs=1e-9)


def test_in_strip():
    assert in_strip(1.5j) and not in_strip(1.6j)
    assert not in_strip(1.5j, margin=0.1)


class TestBounds:
    def test_level_line(self):
        assert level_line_bound(0).K == 1
        for n in range(1, 5):
            assert level_line_bound(n).K == math.exp(n)
        assert level_line_bound(math.log(1 + SQRT2)).K == pytest.approx(1 + SQRT2, abs=1e-14)
        assert level_line_bound(1.0).theorem is Theorem.LEVEL_LINE

    def test_level_line_rejects_negative(self):
        with pytest.raises(DomainError):
            level_line_bound(-0.1)

    def test_harmonic(self):
        assert harmonic_level_bound(0.3, 0.3).K == 1
        assert harmonic_level_bound(0.25, 0.5).K == pytest.approx(1 + SQRT2, abs=1e-14)
        assert harmonic_level_bound(0.25, 0.5).theorem is Theorem.HARMONIC_LEVEL

    @pytest.mark.parametrize("a,b", [(0.6, 0.5), (0.0, 0.5), (0.5, 1.0), (-0.1, 0.2), (0.2, 1.3)])
    def test_harmonic_rejects(self, a, b):
        with pytest.raises(DomainError):
            harmonic_level_bound(a, b)

    def test_harmonic_matches_line_distance(self):
        for a, b in [(0.1, 0.9), (0.3, 0.4), (0.05, 0.2)]:
            d = sec_integral(harmonic_height(b)) * np.sign(b - 0.5) - sec_integral(harmonic_height(a)) * np.sign(a - 0.5)
            assert harmonic_level_bound(a, b).K == pytest.approx(math.exp(d), rel=1e-10)

    @given(st.floats(0.01, 0.99), st.floats(0.01, 0.99), st.floats(0.01, 0.99))
    def test_harmonic_telescopes(self, a, b, c):
        a, b, c = sorted((a, b, c))
        lhs = harmonic_level_bound(a, b).K * harmonic_level_bound(b, c).K
        assert lhs == pytest.approx(harmonic_level_bound(a, c).K, rel=1e-12)

    def test_symmetric(self):
        assert symmetric_level_bound(0.5).K == 1
        assert symmetric_level_bound(0.75).K == pytest.approx(1 + SQRT2, abs=1e-14)
        assert symmetric_level_bound(15 / 20).K == math.tan(15 * math.pi / 40)
        assert "quasiline" in symmetric_level_bound(0.6).tags

    @pytest.mark.parametrize("b", [0.49, 1.0, 1.2])
    def test_symmetric_rejects(self, b):
        with pytest.raises(DomainError):
            symmetric_level_bound(b)

    @given(st.floats(0.5, 0.999), st.floats(0.5, 0.999))
    def test_symmetric_monotone(self, s, t):
        if s + 1e-9 < t:
            assert symmetric_level_bound(s).K < symmetric_level_bound(t).K

    @given(st.floats(0, 30), st.floats(0, 30))
    def test_level_monotone(self, s, t):
        if s + 1e-9 < t:
            assert level_line_bound(s).K < level_line_bound(t).K

    def test_report_validation(self):
        with pytest.raises(DomainError):
            BoundReport(0.5, Theorem.LEVEL_LINE)
        r = BoundReport(math.inf, Theorem.OBSTACLE)
        assert r.unbounded
        d = level_line_bound(1.0).to_dict()
        assert d["theorem"] == "LevelLine" and d["inputs"] == {"c": 1.0}
