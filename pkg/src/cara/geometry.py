"""Exact convex-geometry primitives.

Everything here works over :class:`~fractions.Fraction`: minimum-norm points
(Wolfe's method), hull membership with two-sided certificates, Caratheodory
reduction, line/simplex intersection and linear projection.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .rational import (
    ZERO, ONE, Fraction, InputError, affinely_independent, dot, lincomb,
    norm2, nullspace, point, point_to_json, qstr, rank, solve_linear, sub,
)

__all__ = [
    "ConvexCombination", "MinNormResult", "Hyperplane", "Membership",
    "LineInterval", "min_norm_point", "hull_membership",
    "caratheodory_reduce", "line_simplex_intersection", "project",
    "affine_minimizer", "check_points",
]


@dataclass(frozen=True)
class ConvexCombination:
    """Positive exact weights on distinct indices of a ground point list."""

    indices: tuple
    weights: tuple

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        w = tuple(Fraction(x) for x in self.weights)
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "weights", w)
        if len(idx) != len(w):
            raise InputError("indices and weights differ in length")
        if len(set(idx)) != len(idx):
            raise InputError("indices must be distinct")
        if any(x <= 0 for x in w):
            raise InputError("weights must be strictly positive")
        if sum(w, ZERO) != 1:
            raise InputError("weights must sum to exactly 1")

    def __len__(self):
        return len(self.indices)

    def evaluate(self, points):
        return lincomb(self.weights, [points[i] for i in self.indices])

    def as_dict(self):
        return dict(zip(self.indices, self.weights))

    def to_json(self):
        return {"indices": list(self.indices),
                "weights": [qstr(w) for w in self.weights]}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(data["indices"]), tuple(Fraction(w) for w in data["weights"]))

    @classmethod
    def from_pairs(cls, pairs):
        """Build from (index, weight) pairs, merging repeats and dropping zeros."""
        acc = {}
        for i, w in pairs:
            acc[i] = acc.get(i, ZERO) + Fraction(w)
        items = sorted((i, w) for i, w in acc.items() if w != 0)
        return cls(tuple(i for i, _ in items), tuple(w for _, w in items))


@dataclass(frozen=True)
class MinNormResult:
    point: tuple
    support: ConvexCombination
    squared_distance: Fraction


@dataclass(frozen=True)
class Hyperplane:
    """The set {x : <normal, x> = offset}."""

    normal: tuple
    offset: Fraction = ZERO

    def __post_init__(self):
        object.__setattr__(self, "normal", point(self.normal))
        object.__setattr__(self, "offset", Fraction(self.offset))
        if all(c == 0 for c in self.normal):
            raise InputError("hyperplane normal must be nonzero")

    def value(self, x):
        return dot(self.normal, x) - self.offset


@dataclass(frozen=True)
class Membership:
    """Verdict of a hull-membership query.

    ``member`` carries a combination; otherwise ``normal``/``margin`` certify
    ``<normal, x> <= <normal, p> - margin`` for every input point ``x``.
    """

    member: bool
    combination: Optional[ConvexCombination] = None
    normal: Optional[tuple] = None
    margin: Optional[Fraction] = None

    def __bool__(self):
        return self.member

    def to_json(self):
        if self.member:
            return {"member": True, "combination": self.combination.to_json()}
        return {"member": False, "normal": point_to_json(self.normal),
                "margin": qstr(self.margin)}


@dataclass(frozen=True)
class LineInterval:
    """Parameter interval of {origin + t * direction} inside a simplex.

    ``lo``/``hi`` are ``None`` for an empty intersection.  ``degenerate`` flags
    an affinely dependent vertex list; the interval is still exact in that case.
    """

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    degenerate: bool = False

    @property
    def empty(self):
        return self.lo is None


def check_points(points, dim=None):
    pts = [point(p) for p in points]
    if not pts:
        raise InputError("point list is empty")
    d = len(pts[0]) if dim is None else dim
    for p in pts:
        if len(p) != d:
            raise InputError(f"dimension mismatch: expected {d}, got {len(p)}")
    return pts


def affine_minimizer(pts):
    """Weights v (summing to 1) of the point of aff(pts) nearest the origin.

    ``pts`` must be affinely independent.
    """
    s = len(pts)
    if s == 1:
        return [ONE]
    base = pts[0]
    diffs = [sub(p, base) for p in pts[1:]]
    # normal equations: (D^T D) mu = -D^T base
    gram = [[dot(a, b) for b in diffs] for a in diffs]
    rhs = [-dot(a, base) for a in diffs]
    sol = solve_linear(gram, rhs)
    if sol is None or sol[1]:
        raise ArithmeticError("affinely dependent support in affine_minimizer")
    mu = sol[0]
    return [ONE - sum(mu, ZERO)] + list(mu)


def min_norm_point(points):
    """Nearest point of conv(points) to the origin (Wolfe's method, exact).

    Minor cycles drop the lowest-index blocking point.  The returned support
    is a corral: affinely independent, all weights positive.
    """
    pts = check_points(points)
    norms = [norm2(p) for p in pts]
    j = min(range(len(pts)), key=lambda i: (norms[i], i))
    S = [j]
    w = [ONE]
    x = pts[j]
    while True:
        xx = norm2(x)
        if xx == 0:
            break
        best, best_val = None, None
        for i, p in enumerate(pts):
            v = dot(x, p)
            if v < xx and (best_val is None or v < best_val):
                best, best_val = i, v
        if best is None or best in S:
            break
        S.append(best)
        w.append(ZERO)
        while True:
            v = affine_minimizer([pts[i] for i in S])
            if all(vi > 0 for vi in v):
                w = v
                x = lincomb(w, [pts[i] for i in S])
                break
            theta, block = None, None
            for pos, (wi, vi) in enumerate(zip(w, v)):
                if vi <= 0:
                    den = wi - vi
                    ratio = wi / den if den != 0 else ZERO
                    if (theta is None or ratio < theta
                            or (ratio == theta and S[pos] < S[block])):
                        theta, block = ratio, pos
            w = [theta * vi + (ONE - theta) * wi for wi, vi in zip(w, v)]
            w[block] = ZERO
            del S[block]
            del w[block]
            x = lincomb(w, [pts[i] for i in S])
    order = sorted(range(len(S)), key=lambda k: S[k])
    support = ConvexCombination(tuple(S[k] for k in order), tuple(w[k] for k in order))
    return MinNormResult(x, support, norm2(x))


def hull_membership(p, points):
    """Decide p in conv(points); certificate either way."""
    p = point(p)
    pts = check_points(points, len(p))
    shifted = [sub(x, p) for x in pts]
    res = min_norm_point(shifted)
    if res.squared_distance == 0:
        return Membership(True, combination=res.support)
    normal = tuple(-c for c in res.point)
    return Membership(False, normal=normal, margin=res.squared_distance)


def caratheodory_reduce(p, points, comb):
    """Shrink a convex combination for p to an affinely independent support."""
    p = point(p)
    pts = check_points(points, len(p))
    if not isinstance(comb, ConvexCombination):
        comb = ConvexCombination(*comb)
    if comb.evaluate(pts) != p:
        raise InputError("combination does not reproduce p")
    idx = list(comb.indices)
    w = list(comb.weights)
    while len(idx) > 1:
        sub_pts = [pts[i] for i in idx]
        if affinely_independent(sub_pts):
            break
        # affine dependence: sum lam_i x_i = 0 and sum lam_i = 0
        rows = [[x[c] for x in sub_pts] for c in range(len(p))]
        rows.append([ONE] * len(idx))
        lam = nullspace(rows)[0]
        if not any(l > 0 for l in lam):
            lam = tuple(-l for l in lam)
        t, drop = None, None
        for k, l in enumerate(lam):
            if l > 0:
                r = w[k] / l
                if t is None or r < t:
                    t, drop = r, k
        w = [wk - t * lk for wk, lk in zip(w, lam)]
        keep = [k for k in range(len(idx)) if w[k] != 0 and k != drop]
        idx = [idx[k] for k in keep]
        w = [w[k] for k in keep]
    out = ConvexCombination.from_pairs(zip(idx, w))
    assert out.evaluate(pts) == p
    return out


def _interval_independent(origin, direction, verts):
    k = len(verts)
    d = len(origin)
    A = [[v[c] for v in verts] + [-direction[c]] for c in range(d)]
    A.append([ONE] * k + [ZERO])
    b = list(origin) + [ONE]
    sol = solve_linear(A, b)
    if sol is None:
        return None, None
    x0, basis = sol
    if not basis:
        if all(l >= 0 for l in x0[:k]):
            return x0[k], x0[k]
        return None, None
    (nv,) = basis
    t0, t1 = x0[k], nv[k]
    # lambda(t) = lam0 + (t - t0)/t1 * lam1
    lo, hi = None, None
    for l0, l1 in zip(x0[:k], nv[:k]):
        a = l1 / t1                    # slope in t
        c = l0 - a * t0                # value at t = 0
        if a == 0:
            if c < 0:
                return None, None
            continue
        bound = -c / a
        if a > 0:
            lo = bound if lo is None else max(lo, bound)
        else:
            hi = bound if hi is None else min(hi, bound)
    # slopes sum to zero, so a bounded simplex gives both bounds
    if lo > hi:
        return None, None
    return lo, hi


def line_simplex_intersection(origin, direction, vertices):
    """Exact parameter interval of the line origin + t*direction in conv(vertices)."""
    origin = point(origin)
    direction = point(direction)
    verts = check_points(vertices, len(origin))
    if all(c == 0 for c in direction):
        raise InputError("direction must be nonzero")
    if affinely_independent(verts):
        lo, hi = _interval_independent(origin, direction, verts)
        return LineInterval(lo, hi, False)
    # union over maximal affinely independent subsets covers conv(verts)
    r = rank([sub(v, verts[0]) for v in verts[1:]]) + 1
    lo, hi = None, None
    for subset in combinations(verts, r):
        if not affinely_independent(subset):
            continue
        a, b = _interval_independent(origin, direction, list(subset))
        if a is None:
            continue
        lo = a if lo is None else min(lo, a)
        hi = b if hi is None else max(hi, b)
    return LineInterval(lo, hi, True)


def project(points, matrix):
    """Apply a k x n rational matrix to every point."""
    mat = [point(row) for row in matrix]
    if not mat:
        raise InputError("empty projection matrix")
    n = len(mat[0])
    if any(len(row) != n for row in mat):
        raise InputError("ragged projection matrix")
    pts = [point(p) for p in points]
    for p in pts:
        if len(p) != n:
            raise InputError(f"matrix expects dimension {n}, point has {len(p)}")
    return [tuple(dot(row, p) for row in mat) for p in pts]
