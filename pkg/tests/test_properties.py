from fractions import Fraction as Q

from hypothesis import given, settings, strategies as st

from cara import (
    ColorSystem, ConvexCombination, caratheodory_reduce, colorful_caratheodory, hull_membership,
    min_norm_point, verify_colorful,
)
from cara.rational import affinely_independent, qstr
from oracles import face_min_norm

coord = st.integers(-6, 6)


def pts(dim, lo=1, hi=6):
    return st.lists(st.tuples(*[coord] * dim), min_size=lo, max_size=hi)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(pts))
def test_min_norm_matches_faces(P):
    r = min_norm_point(P)
    assert (r.point, r.squared_distance) == face_min_norm(P)
    assert affinely_independent([tuple(map(Q, P[i])) for i in r.support.indices])
    assert all(w > 0 for w in r.support.weights)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(pts), st.data())
def test_membership_certificates(P, data):
    p = data.draw(st.tuples(*[coord] * len(P[0])))
    res = hull_membership(p, P)
    if res:
        assert res.combination.evaluate([tuple(map(Q, x)) for x in P]) == p
    else:
        rhs = sum(a * b for a, b in zip(res.normal, p)) - res.margin
        assert res.margin > 0
        assert all(sum(a * b for a, b in zip(res.normal, x)) <= rhs for x in P)


@settings(max_examples=40, deadline=None)
@given(pts(2, 3, 6), st.lists(st.integers(1, 5), min_size=6, max_size=6))
def test_reduce_keeps_point(P, w):
    w = w[:len(P)]
    tot = sum(w)
    comb = ConvexCombination(tuple(range(len(P))), tuple(Q(x, tot) for x in w))
    p = comb.evaluate([tuple(map(Q, x)) for x in P])
    red = caratheodory_reduce(p, P, comb)
    assert red.evaluate([tuple(map(Q, x)) for x in P]) == p and len(red) <= 3


@settings(max_examples=30, deadline=None)
@given(st.lists(pts(2, 3, 4), min_size=3, max_size=3))
def test_colorful_certificates_verify(colors):
    # shift each color so its centroid sits at the origin
    shifted = []
    for c in colors:
        cx = [Q(sum(x[k] for x in c), len(c)) for k in range(2)]
        shifted.append([tuple(Q(x[k]) - cx[k] for k in range(2)) for x in c])
    system = ColorSystem(tuple(shifted))
    cert = colorful_caratheodory(system)
    assert verify_colorful(system, cert)


@given(st.fractions())
def test_qstr_canonical(x):
    s = qstr(x)
    num, den = s.split("/")
    assert int(den) > 0 and Q(int(num), int(den)) == x
    assert Q(s) == x
