"""Curve codec: conventions, coverage, adjacency, nesting, round trips."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from surjkit import (
    CurveParam,
    DomainError,
    PlanePoint,
    ResourceError,
    curve_trace,
    hilbert_decode,
    hilbert_encode,
    modulus_bound,
)
from oracles import recursion_trace

# depth-1 traversal expanded by hand: lower-left, upper-left, upper-right,
# lower-right, entering at the origin corner and exiting at the right corner
DEPTH1_ORDER = [(0, 0), (0, 1), (1, 1), (1, 0)]


class TestCurveParam:
    def test_equal_value_compares_equal_across_depths(self):
        assert CurveParam(1, 1) == CurveParam(4, 2) == CurveParam(16, 3)
        assert CurveParam(3, 2) != CurveParam(3, 3)

    def test_value(self):
        assert CurveParam(3, 2).value == Fraction(3, 16)
        assert CurveParam(0, 5).value == 0
        assert CurveParam(4**3, 3).value == 1

    @pytest.mark.parametrize("num,dep", [(-1, 2), (17, 2), (1, -1)])
    def test_out_of_range_rejected(self, num, dep):
        with pytest.raises(DomainError):
            CurveParam(num, dep)


class TestEncode:
    @pytest.mark.parametrize("k", [0, 1, 3, 6])
    def test_zero_maps_to_origin_cell(self, k):
        cell, point = hilbert_encode(0, k)
        assert (cell.col, cell.row) == (0, 0)
        half = Fraction(1, 2 ** (k + 1))
        assert (point.x, point.y) == (half, half)

    @pytest.mark.parametrize("k", [0, 1, 3, 6])
    def test_one_maps_to_bottom_right_cell(self, k):
        cell, _ = hilbert_encode(1, k)
        assert (cell.col, cell.row) == (2**k - 1, 0)

    def test_quarter_hits_upper_left_quadrant(self):
        cell, _ = hilbert_encode(Fraction(1, 4), 1)
        assert (cell.col, cell.row) == (0, 1)

    def test_depth1_order_is_the_hand_expansion(self):
        order = [hilbert_encode(Fraction(i, 4), 1)[0] for i in range(4)]
        assert [(c.col, c.row) for c in order] == DEPTH1_ORDER

    def test_outside_unit_interval_rejected(self):
        with pytest.raises(DomainError):
            hilbert_encode(1.5, 3)
        with pytest.raises(DomainError):
            hilbert_encode(-0.25, 3)

    @pytest.mark.parametrize("k", range(1, 7))
    def test_matches_quadrant_recursion_oracle(self, k):
        oracle = recursion_trace(k)
        for i in range(4**k):
            cell, _ = hilbert_encode(Fraction(i, 4**k), k)
            assert (cell.col, cell.row) == (oracle[i, 0], oracle[i, 1])

    @pytest.mark.parametrize("k", range(1, 7))
    def test_exhaustive_coverage(self, k):
        cells = {hilbert_encode(Fraction(i, 4**k), k)[0] for i in range(4**k)}
        assert len(cells) == 4**k

    def test_nesting(self):
        rng = random.Random(7)
        for _ in range(300):
            t = rng.random()
            for k in range(1, 8):
                outer, _ = hilbert_encode(t, k)
                inner, _ = hilbert_encode(t, k + 1)
                assert inner.col // 2 == outer.col
                assert inner.row // 2 == outer.row


class TestDecode:
    def test_origin_decodes_to_zero(self):
        for k in (0, 1, 4, 8):
            assert hilbert_decode(PlanePoint(Fraction(0), Fraction(0)), k) == CurveParam(0, k)

    def test_upper_left_center_lands_in_second_quarter(self):
        t = hilbert_decode(PlanePoint(Fraction(1, 4), Fraction(3, 4)), 1)
        assert Fraction(1, 4) <= t.value < Fraction(1, 2)

    def test_round_trip_cell_contains_point(self):
        rng = random.Random(11)
        for _ in range(500):
            p = PlanePoint(Fraction(rng.random()), Fraction(rng.random()))
            k = rng.randrange(1, 9)
            t = hilbert_decode(p, k)
            cell, _ = hilbert_encode(t, k)
            side = Fraction(1, 2**k)
            assert cell.col * side <= p.x <= (cell.col + 1) * side
            assert cell.row * side <= p.y <= (cell.row + 1) * side

    def test_dyadic_grid_round_trip(self):
        for k in range(1, 7):
            for i in range(4**k):
                _, center = hilbert_encode(Fraction(i, 4**k), k)
                assert hilbert_decode(center, k) == CurveParam(i, k)

    def test_boundary_tie_breaks_to_lower_left(self):
        # (1/2, 1/2) touches all four depth-1 cells; the lower left wins
        t = hilbert_decode(PlanePoint(Fraction(1, 2), Fraction(1, 2)), 1)
        cell, _ = hilbert_encode(t, 1)
        assert (cell.col, cell.row) == (0, 0)

    def test_outside_square_rejected(self):
        with pytest.raises(DomainError):
            hilbert_decode((1.5, 0.5), 3)


class TestTrace:
    def test_depth_zero_is_the_center(self):
        assert curve_trace(0) == [PlanePoint(Fraction(1, 2), Fraction(1, 2))]

    def test_depth_one(self):
        pts = curve_trace(1)
        assert len(pts) == 4
        for a, b in zip(pts, pts[1:]):
            assert max(abs(a.x - b.x), abs(a.y - b.y)) == Fraction(1, 2)

    @pytest.mark.parametrize("k", [2, 4, 6])
    def test_length_distinct_adjacent(self, k):
        pts = curve_trace(k)
        assert len(pts) == 4**k
        assert len(set(pts)) == 4**k
        step = Fraction(1, 2**k)
        for a, b in zip(pts, pts[1:]):
            dx, dy = abs(a.x - b.x), abs(a.y - b.y)
            assert sorted([dx, dy]) == [0, step]

    def test_depth_cap(self):
        with pytest.raises(ResourceError):
            curve_trace(13)
        assert len(curve_trace(7, depth_cap=7)) == 4**7


class TestModulus:
    def test_formula_values(self):
        assert modulus_bound(0) == 2.0
        assert modulus_bound(3) == 0.25

    @pytest.mark.parametrize("k", range(1, 9))
    def test_random_pairs_respect_bound(self, k):
        rng = random.Random(1000 + k)
        gap = 4.0**-k
        bound = Fraction(2, 2**k)
        for _ in range(2000):
            t = rng.random()
            s = t + rng.uniform(-gap, gap)
            s = min(max(s, 0.0), 1.0)
            if abs(t - s) > gap:
                continue
            _, pt = hilbert_encode(t, k)
            _, ps = hilbert_encode(s, k)
            assert max(abs(pt.x - ps.x), abs(pt.y - ps.y)) <= bound

    def test_adjacent_params_are_adjacent_cells(self):
        for k in range(1, 7):
            for i in range(4**k - 1):
                a, _ = hilbert_encode(Fraction(i, 4**k), k)
                b, _ = hilbert_encode(Fraction(i + 1, 4**k), k)
                assert abs(a.col - b.col) + abs(a.row - b.row) == 1


@given(
    num=st.integers(min_value=0, max_value=4**6),
    k=st.integers(min_value=0, max_value=8),
)
def test_encode_is_deterministic_and_total(num, k):
    t = CurveParam(num, 6)
    cell1, p1 = hilbert_encode(t, k)
    cell2, p2 = hilbert_encode(t.value, k)
    assert cell1 == cell2 and p1 == p2
    assert 0 <= cell1.col < 2**k and 0 <= cell1.row < 2**k


@given(st.integers(min_value=0, max_value=4**5 - 1))
def test_decode_inverts_encode_on_grid(i):
    k = 5
    _, center = hilbert_encode(Fraction(i, 4**k), k)
    assert hilbert_decode(center, k).value == Fraction(i, 4**k)
