"""Seeded instance generators.  Every output is exact and replayable."""

import random
from fractions import Fraction
from itertools import combinations, product

from .geometry import hull_membership
from .joins import Family, VPolytope
from .rational import ZERO, ONE, InputError, point

__all__ = [
    "random_points", "moment_curve", "moment_curve_sample", "sphere_point",
    "sphere_points", "veronese", "veronese_sphere", "polytope_skeleton",
    "random_pl_curve", "pl_loop", "singleton_family", "edge_family",
    "square_edges", "GENERATORS",
]


def _rng(seed):
    return random.Random(seed)


def random_points(n, count, seed=0, lo=-10, hi=10):
    rng = _rng(seed)
    return [tuple(Fraction(rng.randint(lo, hi)) for _ in range(n)) for _ in range(count)]


def moment_curve(n, ts):
    """Points (t, t^2, ..., t^n)."""
    return [tuple(Fraction(t) ** e for e in range(1, n + 1)) for t in ts]


def moment_curve_sample(n, count, lo=0, hi=1):
    """``count`` equally spaced parameters in [lo, hi]."""
    if count < 2:
        raise InputError("count must be at least 2")
    lo, hi = Fraction(lo), Fraction(hi)
    return moment_curve(n, [lo + (hi - lo) * Fraction(j, count - 1) for j in range(count)])


def sphere_point(u):
    """Inverse stereographic image of u in R^(n-1): a rational point of S^(n-1)."""
    u = point(u)
    s = sum((x * x for x in u), ZERO)
    return tuple(2 * x / (s + 1) for x in u) + ((s - 1) / (s + 1),)


def sphere_points(n, count, seed=0, density=8):
    """Rational points on S^(n-1); parameters have denominator ``density``."""
    rng = _rng(seed)
    out = []
    for _ in range(count):
        u = [Fraction(rng.randint(-4 * density, 4 * density), density) for _ in range(n - 1)]
        out.append(sphere_point(u))
    return out


def veronese(x):
    """All degree-2 monomials x_i x_j, i <= j, in lexicographic order."""
    x = point(x)
    return tuple(x[i] * x[j] for i in range(len(x)) for j in range(i, len(x)))


def veronese_sphere(n, count, seed=0, density=8):
    return [veronese(x) for x in sphere_points(n, count, seed, density)]


def _cross_vertices(n):
    out = []
    for i in range(n):
        for sgn in (ONE, -ONE):
            out.append(tuple(sgn if j == i else ZERO for j in range(n)))
    return out


def polytope_skeleton(kind, n, k):
    """k-faces of the standard crosspolytope or simplex, as vertex lists.

    The crosspolytope has vertices +-e_i; its k-faces pick k+1 distinct axes
    and a sign for each.  The simplex is conv(0, e_1, ..., e_n).
    """
    if not 0 <= k < n:
        raise InputError("need 0 <= k < n")
    if kind == "cross":
        faces = []
        for axes in combinations(range(n), k + 1):
            for signs in product((ONE, -ONE), repeat=k + 1):
                faces.append([tuple(s if j == a else ZERO for j in range(n))
                              for a, s in zip(axes, signs)])
        return faces
    if kind == "simplex":
        verts = [tuple(ZERO for _ in range(n))] + [
            tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]
        return [list(f) for f in combinations(verts, k + 1)]
    raise InputError(f"unknown polytope kind {kind!r}")


def random_pl_curve(dim, count, seed=0, lo=-9, hi=9, around=None, max_tries=10_000):
    """Random waypoints; with ``around`` the hull is forced to contain that point."""
    rng = _rng(seed)
    for _ in range(max_tries):
        w = [tuple(Fraction(rng.randint(lo, hi)) for _ in range(dim)) for _ in range(count)]
        if len(set(w)) < 2:
            continue
        if around is None or hull_membership(around, w):
            return w
    raise InputError("could not draw a curve around the requested point")


def pl_loop(dim, count, seed=0, radius=8, jitter=2):
    """Closed polygon through ``count`` jittered points of a circle-like loop."""
    rng = _rng(seed)
    pts = []
    for j in range(count):
        base = sphere_point([Fraction(2 * j - count + 1, count)])  # a point on S^1
        x = [radius * base[0], radius * base[1]] + [ZERO] * (dim - 2)
        x = [c + Fraction(rng.randint(-jitter, jitter)) for c in x]
        pts.append(tuple(x))
    return pts + [pts[0]]


def singleton_family(n, count, seed=0, lo=-10, hi=10):
    return Family(tuple(VPolytope((p,)) for p in random_points(n, count, seed, lo, hi)), n)


def square_edges(side=1, center=False):
    """The four edges of the square [0, side]^2, optionally plus its center."""
    s = Fraction(side)
    c = [(ZERO, ZERO), (s, ZERO), (s, s), (ZERO, s)]
    members = [VPolytope((c[i], c[(i + 1) % 4])) for i in range(4)]
    if center:
        members.append(VPolytope(((s / 2, s / 2),)))
    return Family(tuple(members), 2)


def edge_family(kind="square", n=2, k=1, center=False):
    if kind == "square":
        return square_edges(center=center)
    return Family(tuple(VPolytope(f) for f in polytope_skeleton(kind, n, k)), n)


GENERATORS = {
    "randomPoints": lambda p, seed: {"points": random_points(p["n"], p["count"], seed,
                                                             p.get("lo", -10), p.get("hi", 10))},
    "momentCurve": lambda p, seed: {"points": moment_curve(p["n"], p["ts"]) if "ts" in p
                                    else moment_curve_sample(p["n"], p["count"])},
    "veroneseSphere": lambda p, seed: {"points": veronese_sphere(p["n"], p["count"], seed,
                                                                 p.get("density", 8))},
    "polytopeSkeleton": lambda p, seed: {"faces": polytope_skeleton(p.get("polytope", "cross"),
                                                                    p["n"], p["k"])},
    "plLoop": lambda p, seed: {"waypoints": pl_loop(p.get("n", 2), p["count"], seed)},
    "singletonFamily": lambda p, seed: {"family": singleton_family(
        p["n"], p["count"], seed, p.get("lo", -10), p.get("hi", 10))},
    "edgeFamily": lambda p, seed: {"family": edge_family(
        p.get("polytope", "square"), p.get("n", 2), p.get("k", 1), p.get("center", False))},
}
