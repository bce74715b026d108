from fractions import Fraction as Q

from cara import hull_membership
from cara.generators import (
    GENERATORS, moment_curve, moment_curve_sample, pl_loop, polytope_skeleton,
    random_pl_curve, singleton_family, sphere_point, sphere_points, square_edges, veronese,
    veronese_sphere,
)
from cara.svg import render_family, render_points
from cara import tverberg_partition


def test_moment_curve():
    assert moment_curve(2, [0, Q(1, 2), 1]) == [(0, 0), (Q(1, 2), Q(1, 4)), (1, 1)]
    pts = moment_curve_sample(4, 5)
    assert pts[1] == (Q(1, 4), Q(1, 16), Q(1, 64), Q(1, 256))


def test_veronese_rational_circle_point():
    assert veronese((Q(3, 5), Q(4, 5))) == (Q(9, 25), Q(12, 25), Q(16, 25))


def test_sphere_points_are_exact():
    for x in sphere_points(3, 20, seed=5):
        assert sum(c * c for c in x) == 1
    assert sphere_point([Q(1, 2)]) == (Q(4, 5), Q(-3, 5))
    # trace of v2 is |x|^2 = 1 on the sphere
    for v in veronese_sphere(3, 5, seed=1):
        assert v[0] + v[3] + v[5] == 1


def test_singleton_family_replayable():
    a, b = singleton_family(2, 7, seed=1), singleton_family(2, 7, seed=1)
    assert a == b and len(a) == 7 and all(len(C.vertices) == 1 for C in a.members)
    assert singleton_family(2, 7, seed=2) != a


def test_skeletons():
    assert len(polytope_skeleton("cross", 3, 1)) == 12
    assert len(polytope_skeleton("simplex", 3, 1)) == 6
    assert len(square_edges(center=True)) == 5


def test_curves():
    W = random_pl_curve(3, 5, seed=2, around=(0, 0, 0))
    assert hull_membership((0, 0, 0), W)
    L = pl_loop(2, 6, seed=0)
    assert L[0] == L[-1] and len(L) == 7


def test_generator_table():
    inst = GENERATORS["momentCurve"]({"n": 2, "ts": [0, "1/2", 1]}, 0)
    assert inst["points"][1] == (Q(1, 2), Q(1, 4))


def test_svg_is_deterministic():
    F = square_edges(center=True)
    cert = tverberg_partition(F, 2, 2)
    a, b = render_family(F, cert), render_family(F, cert)
    assert a == b and a.startswith("<svg") and a.count("<polyline") == 4
    assert render_points([(0, 0), (1, 2)]) == render_points([(0, 0), (1, 2)])
