from fractions import Fraction as Q

import pytest

from cara import (
    ConvexCombination, InputError, caratheodory_reduce, hull_membership,
    line_simplex_intersection, min_norm_point,
)
from cara.geometry import project
from oracles import bary_member, face_min_norm

CROSS = [(1, 0), (-1, 0), (0, 1), (0, -1)]


def test_min_norm_single_point():
    r = min_norm_point([(2, 0)])
    assert r.point == (2, 0) and r.squared_distance == 4
    assert r.support.weights == (1,)


def test_min_norm_symmetric_pair():
    r = min_norm_point([(1, 0), (0, 1)])
    assert r.point == (Q(1, 2), Q(1, 2))
    assert r.support.weights == (Q(1, 2), Q(1, 2))


def test_min_norm_edge_face():
    pts = [(1, 1), (1, -1), (3, 0)]
    r = min_norm_point(pts)
    assert r.point == (1, 0)
    assert r.support.indices == (0, 1) and r.support.weights == (Q(1, 2), Q(1, 2))
    assert face_min_norm(pts) == (r.point, r.squared_distance)


def test_min_norm_origin_inside():
    r = min_norm_point(CROSS)
    assert r.squared_distance == 0
    assert r.support.evaluate([tuple(map(Q, p)) for p in CROSS]) == (0, 0)


def test_min_norm_dimension_mismatch():
    with pytest.raises(InputError):
        min_norm_point([(1, 0), (1, 0, 0)])


def test_floats_are_converted_exactly():
    r = min_norm_point([(0.5, 0), (0.5, 1)])
    assert r.point == (Q(1, 2), 0) and r.squared_distance == Q(1, 4)


def test_hull_membership_center():
    res = hull_membership((0, 0), CROSS)
    assert res.member and res.combination.evaluate([tuple(map(Q, p)) for p in CROSS]) == (0, 0)


def test_hull_membership_separator():
    res = hull_membership((2, 0), CROSS)
    assert not res.member
    assert res.normal == (1, 0) and res.margin == 1
    for x in CROSS:
        assert sum(a * b for a, b in zip(res.normal, x)) <= 2 - res.margin


def test_hull_membership_vertex():
    res = hull_membership((1, 0), CROSS)
    assert res.member and res.combination.weights == (1,)


def test_hull_membership_empty():
    with pytest.raises(InputError):
        hull_membership((0, 0), [])


def test_reduce_square_average():
    sq = [(1, 1), (-1, 1), (-1, -1), (1, -1)]
    red = caratheodory_reduce((0, 0), sq, ConvexCombination((0, 1, 2, 3), (Q(1, 4),) * 4))
    assert len(red) == 2
    assert red.evaluate([tuple(map(Q, p)) for p in sq]) == (0, 0)


def test_reduce_identity_cases():
    one = ConvexCombination((0,), (1,))
    assert caratheodory_reduce((3, 4), [(3, 4)], one) == one
    tri = [(0, 0), (1, 0), (0, 1)]
    c = ConvexCombination((0, 1, 2), (Q(1, 3),) * 3)
    assert caratheodory_reduce((Q(1, 3), Q(1, 3)), tri, c) == c


def test_reduce_rejects_wrong_combination():
    with pytest.raises(InputError):
        caratheodory_reduce((1, 1), [(0, 0), (1, 0)], ConvexCombination((0, 1), (Q(1, 2),) * 2))


def test_line_segment_point():
    iv = line_simplex_intersection((0, 0), (1, 0), [(1, -1), (1, 1)])
    assert (iv.lo, iv.hi) == (1, 1)


def test_line_segment_miss():
    assert line_simplex_intersection((0, 0), (0, 1), [(1, -1), (1, 1)]).empty


def test_line_triangle_interval():
    iv = line_simplex_intersection((0, 0), (1, 1), [(1, 0), (0, 1), (2, 2)])
    assert (iv.lo, iv.hi) == (Q(1, 2), 2) and not iv.degenerate


def test_line_degenerate_flagged():
    iv = line_simplex_intersection((0, 0), (1, 0), [(1, 0), (2, 0), (3, 0)])
    assert iv.degenerate and (iv.lo, iv.hi) == (1, 3)


def test_project():
    assert project([(1, 2), (3, 4)], [(1, 0)]) == [(1,), (3,)]
    assert project([(1, 2)], [(1, 0), (0, 1)]) == [(1, 2)]
    pts = [(1, 2, 3), (-1, 0, 5), (2, 2, 2)]
    row = (Q(1, 3), -2, 7)
    assert project(pts, [row]) == [(sum(a * b for a, b in zip(row, p)),) for p in pts]
    with pytest.raises(InputError):
        project(pts, [(1, 0)])


def test_membership_agrees_with_barycentric_oracle():
    pts = [(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4), (1, 1, 1)]
    for p in [(1, 1, 1), (2, 2, 0), (2, 2, 1), (Q(4, 3), Q(4, 3), Q(4, 3)), (-1, 0, 0)]:
        assert bool(hull_membership(p, pts)) == bary_member(p, pts)
