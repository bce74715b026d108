from fractions import Fraction as Q
from itertools import combinations

import pytest

from cara import (
    Family, InputError, KappaConfig, VPolytope, caratheodory_number_pointset,
    convm_membership, coverage_check_2d, curve_convm_membership,
    family_caratheodory_number, join_membership, verify_kappa_witness,
)
from cara.coverage import interval_coverage
from cara.generators import square_edges
from cara.joins import ResourceError
from oracles import bary_member

SQUARE = [(1, 1), (-1, 1), (-1, -1), (1, -1)]
TRI = [(0, 0), (1, 0), (0, 1)]
UNIT = [(0, 0), (1, 0), (1, 1), (0, 1)]


def _subset_oracle(p, X, m):
    return any(bary_member(p, S) for k in range(1, m + 1) for S in combinations(X, k))


def test_convm_square_diagonal():
    v = convm_membership((0, 0), SQUARE, 2)
    assert v.member and len(v.combination) == 2
    assert v.combination.weights == (Q(1, 2), Q(1, 2))
    pts = [tuple(map(Q, p)) for p in SQUARE]
    assert v.combination.evaluate(pts) == (0, 0)
    assert not convm_membership((0, 0), SQUARE, 1)


def test_convm_triangle_interior():
    p = (Q(1, 3), Q(1, 3))
    v2 = convm_membership(p, TRI, 2)
    assert not v2 and v2.exhaustive
    assert convm_membership(p, TRI, 3)
    assert _subset_oracle(p, TRI, 2) is False and _subset_oracle(p, TRI, 3)


def test_convm_outside_hull_is_refuted_at_once():
    v = convm_membership((5, 5), TRI, 3)
    assert not v and v.exhaustive and v.subsets_tested == 0


def test_convm_bad_m():
    with pytest.raises(InputError):
        convm_membership((0, 0), TRI, 0)


def test_curve_convm_uses_edges():
    # a zigzag whose hull centre needs the join of two edges
    W = [(0, 0), (2, 0), (0, 2), (2, 2)]
    v = curve_convm_membership((1, 1), W, 1)
    assert v.member        # (1,1) is on the middle edge
    v = curve_convm_membership((Q(1, 2), Q(1, 4)), W, 1)
    assert not v
    v = curve_convm_membership((Q(1, 2), Q(1, 4)), W, 2)
    assert v.member and len(v.groups) <= 2


def test_join_opposite_points():
    v = join_membership((0, 0), [[(1, 0)], [(-1, 0)]])
    assert v.member and v.weights == (Q(1, 2), Q(1, 2))
    assert not join_membership((0, 2), [[(1, 0)], [(-1, 0)]])


def test_join_picks_a_valid_pair():
    sets = [[(1, 1), (2, 0)], [(-1, -1), (0, -3)]]
    v = join_membership((0, 0), sets)
    assert v.member
    a, b = sets[0][v.choice[0]], sets[1][v.choice[1]]
    assert (a, b) == ((1, 1), (-1, -1))
    assert tuple(v.weights[0] * x + v.weights[1] * y for x, y in zip(a, b)) == (0, 0)


def test_join_budget():
    with pytest.raises(ResourceError):
        join_membership((0, 0), [[(1, 0)] * 10] * 3, budget=100)


def test_kappa_pointset():
    assert caratheodory_number_pointset([(3, 3)]).upper == 1
    b = caratheodory_number_pointset(TRI)
    assert (b.lower, b.upper, b.status) == (3, 3, "exact")
    b = caratheodory_number_pointset(SQUARE)
    assert (b.lower, b.upper) == (3, 3)
    assert b.witness_point is not None and not convm_membership(b.witness_point, SQUARE, 2)


def test_kappa_collinear():
    b = caratheodory_number_pointset([(0, 0), (1, 1), (3, 3)])
    assert (b.lower, b.upper) == (2, 2)


def test_kappa_family_examples():
    one = Family((VPolytope(tuple(UNIT)),), 2)
    assert family_caratheodory_number(one).upper == 1
    F = square_edges()
    b = family_caratheodory_number(F)
    assert (b.lower, b.upper, b.status) == (2, 2, "exact")
    assert verify_kappa_witness(F, b)
    pts = Family(tuple(VPolytope((p,)) for p in [(0, 0), (100, 0), (0, 100)]), 2)
    b = family_caratheodory_number(pts)
    assert (b.lower, b.upper) == (3, 3) and verify_kappa_witness(pts, b)


def test_kappa_family_budget():
    F = Family(tuple(VPolytope(((i, 0),)) for i in range(6)), 2)
    b = family_caratheodory_number(F, KappaConfig(max_subfamilies=10))
    assert b.status == "partial" and b.upper is None


def test_coverage_examples():
    assert coverage_check_2d(UNIT, [UNIT]).covered
    assert coverage_check_2d(UNIT, [[(0, 0), (1, 0), (1, 1)], [(0, 0), (1, 1), (0, 1)]]).covered
    segs = [list(s) for s in combinations(UNIT, 2)]
    res = coverage_check_2d(UNIT, segs)
    assert not res.covered
    w = res.witness
    assert 0 < w[0] < 1 and 0 < w[1] < 1
    assert not any(bary_member(w, s) for s in segs)


def test_coverage_triangle_by_edges():
    res = coverage_check_2d(TRI, [list(s) for s in combinations(TRI, 2)])
    assert not res.covered and bary_member(res.witness, TRI)


def test_interval_coverage():
    assert interval_coverage([(0, Q(1, 2)), (Q(1, 2), 1)])[0]
    ok, gap = interval_coverage([(0, Q(1, 3)), (Q(1, 2), 1)])
    assert not ok and Q(1, 3) < gap < Q(1, 2)
