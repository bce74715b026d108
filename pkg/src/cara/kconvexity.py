"""Finite representations of compacta and k-convexity tools.

Sampling and hill climbing run in floats; every counterexample and every
flat certificate is re-derived in exact arithmetic before it is returned.
"""

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from . import kernels
from .geometry import Hyperplane, check_points, hull_membership, min_norm_point
from .joins import VPolytope, convm_membership, curve_convm_membership, union_hull_search
from .rational import (
    ZERO, ONE, InputError, add, dot, norm2, nullspace, point, point_from_json,
    point_to_json, qstr, rank, scale, solve_linear, sub,
)

__all__ = [
    "PLCurve", "OracleCompactum", "CompactumRep", "FlatCertificate",
    "KConvexityVerdict", "FlatSearchResult", "CapabilityError",
    "PreconditionWarning", "check_k_convexity", "hyperplane_curve_intersection",
    "curve_crossing", "curve_crossings", "find_avoiding_flat", "box_boundary_oracle",
    "segment_distance_sq", "rationalize",
]


class CapabilityError(TypeError):
    """An oracle compactum lacks a query the operation needs."""


class PreconditionWarning(UserWarning):
    pass


@dataclass(frozen=True)
class PLCurve:
    """Polygonal curve through ``waypoints``; connected by construction."""

    waypoints: tuple

    def __post_init__(self):
        object.__setattr__(self, "waypoints", tuple(check_points(self.waypoints)))

    @property
    def dim(self):
        return len(self.waypoints[0])

    def segments(self):
        w = self.waypoints
        if len(w) == 1:
            return [(w[0], w[0])]
        return [(w[i], w[i + 1]) for i in range(len(w) - 1)]

    def point_at(self, seg, param):
        a, b = self.segments()[seg]
        return add(a, scale(Fraction(param), sub(b, a)))

    def locate(self, x):
        """(segment, parameter) of an exact point on the curve, or None."""
        x = point(x)
        for i, (a, b) in enumerate(self.segments()):
            d = sub(b, a)
            dd = norm2(d)
            if dd == 0:
                if x == a:
                    return i, ZERO
                continue
            t = dot(sub(x, a), d) / dd
            if 0 <= t <= 1 and add(a, scale(t, d)) == x:
                return i, t
        return None

    def subdivided(self, parts):
        """Same curve with every segment split into ``parts`` pieces."""
        out = [self.waypoints[0]]
        for a, b in self.segments():
            for j in range(1, parts + 1):
                out.append(add(a, scale(Fraction(j, parts), sub(b, a))))
        return PLCurve(tuple(out))


@dataclass
class OracleCompactum:
    """Compactum known only through callables.

    ``sample(count, rng)`` returns rational points of the set,
    ``contains(x, tol)`` tests membership, ``flat_intersection(base, dirs)``
    returns a rational point of the set on the flat or None,
    ``flat_points(base, dirs)`` optionally lists several such points, and
    ``linear_min(c, subspace)`` returns a point minimizing <c, x>.
    """

    dim: int
    sample: Optional[Callable] = None
    contains: Optional[Callable] = None
    flat_intersection: Optional[Callable] = None
    linear_min: Optional[Callable] = None
    name: str = "oracle"
    flat_points: Optional[Callable] = None

    def flat_candidates(self, base, dirs):
        """Points of the set on the flat; several when the oracle offers them."""
        if self.flat_points is not None:
            return [point(x) for x in self.flat_points(base, dirs)]
        x = self.flat_intersection(base, dirs)
        return [] if x is None else [point(x)]

    @property
    def capabilities(self):
        caps = {"sample": self.sample, "membership": self.contains,
                "flat_intersection": self.flat_intersection,
                "linear_min": self.linear_min}
        return {k for k, v in caps.items() if v is not None}

    def require(self, *caps):
        missing = [c for c in caps if c not in self.capabilities]
        if missing:
            raise CapabilityError(f"{self.name} lacks {', '.join(missing)}")


KINDS = ("pointCloud", "plCurve", "polytopeUnion", "oracle")


@dataclass(frozen=True)
class CompactumRep:
    """Tagged finite representation of a compactum.

    ``spacing`` is the covering radius of the representation relative to the
    set it stands for (0 when the representation is the set itself).
    """

    kind: str
    payload: object
    spacing: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown compactum kind {self.kind!r}")
        if self.kind == "pointCloud":
            object.__setattr__(self, "payload", tuple(check_points(self.payload)))
        elif self.kind == "plCurve" and not isinstance(self.payload, PLCurve):
            object.__setattr__(self, "payload", PLCurve(self.payload))
        elif self.kind == "polytopeUnion":
            polys = tuple(p if isinstance(p, VPolytope) else VPolytope(p)
                          for p in self.payload)
            if not polys:
                raise InputError("polytopeUnion payload is empty")
            object.__setattr__(self, "payload", polys)

    @classmethod
    def points(cls, pts, spacing=0.0):
        return cls("pointCloud", tuple(pts), spacing)

    @classmethod
    def curve(cls, waypoints):
        return cls("plCurve", PLCurve(tuple(waypoints)))

    @classmethod
    def polytopes(cls, polys):
        return cls("polytopeUnion", tuple(polys))

    @classmethod
    def oracle(cls, oracle, spacing=0.0):
        return cls("oracle", oracle, spacing)

    @property
    def dim(self):
        if self.kind == "pointCloud":
            return len(self.payload[0])
        if self.kind == "plCurve":
            return self.payload.dim
        if self.kind == "polytopeUnion":
            return self.payload[0].dim
        return self.payload.dim

    def vertices(self):
        """Finite point list whose hull equals the hull of the set."""
        if self.kind == "pointCloud":
            return list(self.payload)
        if self.kind == "plCurve":
            return list(self.payload.waypoints)
        if self.kind == "polytopeUnion":
            return [v for p in self.payload for v in p.vertices]
        raise CapabilityError("oracle compacta have no vertex list")

    def segments(self):
        """Exact 0/1-dimensional pieces (points are degenerate segments)."""
        if self.kind == "pointCloud":
            return [(x, x) for x in self.payload]
        if self.kind == "plCurve":
            return self.payload.segments()
        raise CapabilityError(f"{self.kind} is not made of segments")

    def linear_min(self, c):
        """A point of the set minimizing <c, x>."""
        if self.kind == "oracle":
            self.payload.require("linear_min")
            return point(self.payload.linear_min(point(c), None))
        verts = self.vertices()
        return min(verts, key=lambda v: dot(c, v))

    def contains_exact(self, x):
        x = point(x)
        if self.kind == "pointCloud":
            return x in self.payload
        if self.kind == "plCurve":
            return self.payload.locate(x) is not None
        if self.kind == "polytopeUnion":
            return any(hull_membership(x, p.vertices) for p in self.payload)
        self.payload.require("membership")
        return bool(self.payload.contains(x, 0))

    def to_json(self):
        if self.kind == "pointCloud":
            out = {"kind": "pointCloud", "points": [point_to_json(x) for x in self.payload]}
        elif self.kind == "plCurve":
            out = {"kind": "plCurve",
                   "waypoints": [point_to_json(x) for x in self.payload.waypoints]}
        elif self.kind == "polytopeUnion":
            out = {"kind": "polytopeUnion", "polytopes": [p.to_json() for p in self.payload]}
        else:
            raise CapabilityError("oracle compacta are in-process only")
        if self.spacing:
            out["spacing"] = self.spacing
        return out

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or "kind" not in data:
            raise InputError("compactum is missing field 'kind'")
        kind = data["kind"]
        spacing = float(data.get("spacing", 0.0))
        key = {"pointCloud": "points", "plCurve": "waypoints",
               "polytopeUnion": "polytopes"}.get(kind)
        if key is None:
            raise InputError(f"field 'kind': unsupported value {kind!r}")
        if key not in data or not data[key]:
            raise InputError(f"{kind} compactum needs nonempty field '{key}'")
        if kind == "polytopeUnion":
            return cls(kind, tuple(VPolytope.from_json(p) for p in data[key]), spacing)
        pts = tuple(point_from_json(x) for x in data[key])
        return cls(kind, pts if kind == "pointCloud" else PLCurve(pts), spacing)

    def float_samples(self, count, rng):
        """Float samples of the set for search heuristics."""
        if self.kind == "pointCloud":
            return np.array([[float(c) for c in x] for x in self.payload])
        if self.kind == "plCurve":
            segs = self.payload.segments()
            A = np.array([[float(c) for c in a] for a, _ in segs])
            B = np.array([[float(c) for c in b] for _, b in segs])
            per = max(2, count // max(1, len(segs)))
            t = np.linspace(0.0, 1.0, per)
            return (A[:, None, :] + t[None, :, None] * (B - A)[:, None, :]).reshape(-1, A.shape[1])
        if self.kind == "polytopeUnion":
            out = []
            for p in self.payload:
                V = np.array([[float(c) for c in v] for v in p.vertices])
                W = rng.dirichlet(np.ones(len(V)), size=max(1, count // len(self.payload)))
                out.append(np.vstack([V, W @ V]))
            return np.vstack(out)
        self.payload.require("sample")
        return np.array([[float(c) for c in x] for x in self.payload.sample(count, rng)])

    def exact_samples(self, count, rng):
        """Rational samples (curve: waypoints plus uniform subdivision points)."""
        if self.kind == "pointCloud":
            return list(self.payload)
        if self.kind == "plCurve":
            segs = self.payload.segments()
            per = max(1, count // max(1, len(segs)))
            return list(self.payload.subdivided(per).waypoints)
        if self.kind == "polytopeUnion":
            return self.vertices()
        self.payload.require("sample")
        return [point(x) for x in self.payload.sample(count, rng)]


def rationalize(x, den=1 << 12):
    return Fraction(int(round(float(x) * den)), den)


def segment_distance_sq(q, a, b):
    """Exact squared distance from q to the segment [a, b]."""
    d = sub(b, a)
    dd = norm2(d)
    w = sub(q, a)
    if dd == 0:
        return norm2(w)
    t = dot(w, d) / dd
    if t < 0:
        t = ZERO
    elif t > 1:
        t = ONE
    return norm2(sub(w, scale(t, d)))


def _sqrt_lower(x):
    """A positive rational lower bound on sqrt(x) for rational x > 0."""
    x = Fraction(x)
    if x <= 0:
        return ZERO
    s = 1 << 16
    while True:
        r = Fraction(math.isqrt(x.numerator * s * s // x.denominator), s)
        if r > 0:
            return r
        s <<= 8


# ---------------------------------------------------------------- k-convexity

@dataclass(frozen=True)
class KConvexityVerdict:
    counterexample: bool
    projection: Optional[tuple] = None
    hole: Optional[tuple] = None
    hole_distance_sq: Optional[Fraction] = None
    tol: float = 0.0
    trials: int = 0
    samples: int = 0
    trial_index: Optional[int] = None

    def to_json(self):
        out = {"counterexample": self.counterexample, "trials": self.trials,
               "samples": self.samples, "tol": self.tol}
        if self.counterexample:
            out.update(projection=[point_to_json(r) for r in self.projection],
                       hole=point_to_json(self.hole),
                       hole_distance_sq=qstr(self.hole_distance_sq),
                       trial=self.trial_index)
        return out


def _random_projection(k, n, rng):
    while True:
        M = rng.normal(size=(k, n))
        M /= np.linalg.norm(M, axis=1, keepdims=True)
        Mq = tuple(tuple(rationalize(x, 1 << 8) for x in row) for row in M)
        if rank(Mq) == k:
            return Mq


def _projected_distance_sq(X, Mq, hole, projected_samples):
    """Exact squared distance from ``hole`` to M(representation)."""
    if X.kind == "pointCloud":
        return min(norm2(sub(hole, y)) for y in projected_samples)
    if X.kind == "plCurve":
        best = None
        for a, b in X.payload.segments():
            pa = tuple(dot(r, a) for r in Mq)
            pb = tuple(dot(r, b) for r in Mq)
            d = segment_distance_sq(hole, pa, pb)
            if best is None or d < best:
                best = d
        return best
    if X.kind == "polytopeUnion":
        best = None
        for p in X.payload:
            img = [sub(tuple(dot(r, v) for r in Mq), hole) for v in p.vertices]
            d = min_norm_point(img).squared_distance
            if best is None or d < best:
                best = d
        return best
    # oracle: the preimage flat of the hole must miss the set
    sol = solve_linear([list(r) for r in Mq], list(hole))
    base, dirs = sol
    if X.payload.flat_intersection(base, dirs) is not None:
        return ZERO
    return min(norm2(sub(hole, y)) for y in projected_samples)


def _float_distance(X, Mf, grid, proj_samples_f):
    if X.kind == "plCurve":
        segs = X.payload.segments()
        A = np.array([[float(c) for c in a] for a, _ in segs]) @ Mf.T
        B = np.array([[float(c) for c in b] for _, b in segs]) @ Mf.T
        return kernels.point_segment_min_dist(grid, A, B)
    if X.kind == "polytopeUnion":
        out = np.full(len(grid), np.inf)
        for p in X.payload:
            V = np.array([[float(c) for c in v] for v in p.vertices]) @ Mf.T
            idx = np.arange(len(V))[None, :]
            for g, q in enumerate(grid):
                d = kernels.batch_min_norm_sq(V - q, idx, np.array([len(V)]))[0]
                out[g] = min(out[g], math.sqrt(max(d, 0.0)))
        return out
    return kernels.point_segment_min_dist(grid, proj_samples_f, proj_samples_f)


def _grid_in_hull(proj_exact, k, resolution):
    """Rational grid points of the bounding box inside the projected hull."""
    lo = [min(y[c] for y in proj_exact) for c in range(k)]
    hi = [max(y[c] for y in proj_exact) for c in range(k)]
    axes = [[lo[c] + (hi[c] - lo[c]) * Fraction(i, resolution) for i in range(1, resolution)]
            for c in range(k)]
    pts = np.array(np.meshgrid(*[[float(v) for v in ax] for ax in axes], indexing="ij"))
    pts = pts.reshape(k, -1).T
    idx = np.array(np.meshgrid(*[np.arange(len(ax)) for ax in axes], indexing="ij")).reshape(k, -1).T
    if k == 1:
        return pts, [tuple(axes[0][i] for i in row) for row in idx]
    Pf = np.array([[float(c) for c in y] for y in proj_exact])
    try:
        hull = ConvexHull(Pf)
    except QhullError:
        return np.empty((0, k)), []
    inside = np.all(pts @ hull.equations[:, :-1].T + hull.equations[:, -1] <= -1e-12, axis=1)
    exact = [tuple(axes[c][row[c]] for c in range(k)) for row in idx[inside]]
    return pts[inside], exact


def check_k_convexity(X, k, trials=20, samples_per_trial=400, tol=None, seed=0,
                      resolution=24):
    """Search for a linear image of X in R^k that is not convex.

    A counterexample is exact: a rational k x n map and a rational hole point
    inside the hull of the projected samples whose exact squared distance to
    the projected representation exceeds tol**2.
    """
    n = X.dim
    if not 1 <= k <= n:
        raise InputError(f"k must lie in [1, {n}]")
    if X.kind == "oracle":
        X.payload.require("sample", "flat_intersection")
    rng = np.random.default_rng(seed)
    samples = X.exact_samples(samples_per_trial, rng)
    S = np.array([[float(c) for c in x] for x in samples])
    used = 0
    t = tol if tol is not None else 0.0
    for trial in range(trials):
        used += 1
        Mq = _random_projection(k, n, rng)
        Mf = np.array([[float(x) for x in row] for row in Mq])
        t = tol if tol is not None else max(2.0 * X.spacing * np.linalg.norm(Mf, 2), 1e-9)
        proj = [tuple(dot(r, x) for r in Mq) for x in samples]
        proj_f = S @ Mf.T
        grid_f, grid_q = _grid_in_hull(proj, k, resolution)
        if not grid_q:
            continue
        dist = _float_distance(X, Mf, grid_f, proj_f)
        for g in np.argsort(-dist, kind="stable")[:4]:
            if dist[g] <= t:
                break
            hole = grid_q[g]
            if not hull_membership(hole, _hull_vertices(proj, proj_f)):
                continue
            dsq = _projected_distance_sq(X, Mq, hole, proj)
            if dsq > Fraction(t) ** 2:
                return KConvexityVerdict(True, Mq, hole, dsq, t, used, len(samples), trial)
    return KConvexityVerdict(False, tol=float(t), trials=used, samples=len(samples))


def _hull_vertices(proj, proj_f):
    if proj_f.shape[1] == 1:
        lo = min(range(len(proj)), key=lambda i: proj[i])
        hi = max(range(len(proj)), key=lambda i: proj[i])
        return [proj[lo], proj[hi]]
    try:
        return [proj[i] for i in ConvexHull(proj_f).vertices]
    except QhullError:
        return proj


# ------------------------------------------------------ hyperplane crossings

def curve_crossing(curve, h):
    """First (segment, parameter, point) where the curve meets h, or None."""
    if not isinstance(curve, PLCurve):
        curve = PLCurve(curve)
    segs = curve.segments()
    vals = [h.value(curve.waypoints[0])] + [h.value(b) for _, b in segs]
    for i, (a, b) in enumerate(segs):
        va, vb = vals[i], vals[i + 1]
        if va == 0:
            return i, ZERO, a
        if (va < 0 < vb) or (vb < 0 < va):
            t = va / (va - vb)
            return i, t, add(a, scale(t, sub(b, a)))
        if vb == 0:
            return i, ONE, b
    return None


def curve_crossings(curve, h):
    """Every (segment, parameter, point) where the curve meets h.

    Segments lying inside h contribute both endpoints; shared waypoints are
    reported once.
    """
    if not isinstance(curve, PLCurve):
        curve = PLCurve(curve)
    segs = curve.segments()
    vals = [h.value(curve.waypoints[0])] + [h.value(b) for _, b in segs]
    out, seen = [], set()
    for i, (a, b) in enumerate(segs):
        va, vb = vals[i], vals[i + 1]
        hits = []
        if va == 0:
            hits.append((ZERO, a))
        if (va < 0 < vb) or (vb < 0 < va):
            t = va / (va - vb)
            hits.append((t, add(a, scale(t, sub(b, a)))))
        if vb == 0:
            hits.append((ONE, b))
        for t, x in hits:
            if x not in seen:
                seen.add(x)
                out.append((i, t, x))
    return out


def hyperplane_curve_intersection(curve, h):
    """An exact point of the curve on the hyperplane h, or None."""
    hit = curve_crossing(curve, h)
    return None if hit is None else hit[2]


# -------------------------------------------------------------- avoiding flats

@dataclass(frozen=True)
class FlatCertificate:
    base_point: tuple
    directions: tuple
    clearance_sq: Fraction
    clearance: Fraction

    def to_json(self):
        return {"base_point": point_to_json(self.base_point),
                "directions": [point_to_json(d) for d in self.directions],
                "clearance_sq": qstr(self.clearance_sq),
                "clearance_lower_bound": qstr(self.clearance)}

    def verify(self, sets):
        if self.directions and rank(self.directions) != len(self.directions):
            return False
        c = flat_clearance_sq(self.base_point, self.directions, sets)
        return c > 0 and c == self.clearance_sq and self.clearance ** 2 <= c


@dataclass(frozen=True)
class FlatSearchResult:
    success: bool
    certificate: Optional[FlatCertificate] = None
    precondition_ok: Optional[bool] = None
    report: dict = field(default_factory=dict)

    def __bool__(self):
        return self.success


class _Complement:
    """Exact orthogonal projection onto span(dirs)^perp."""

    def __init__(self, dirs):
        self.dirs = [point(d) for d in dirs]
        k = len(self.dirs)
        if k:
            gram = [[dot(a, b) for b in self.dirs] for a in self.dirs]
            self.inv_cols = []
            for j in range(k):
                e = [ONE if i == j else ZERO for i in range(k)]
                self.inv_cols.append(solve_linear(gram, e)[0])
            self.ginv = [[self.inv_cols[j][i] for j in range(k)] for i in range(k)]

    def __call__(self, v):
        if not self.dirs:
            return v
        c = [dot(d, v) for d in self.dirs]
        coef = [sum((g * x for g, x in zip(row, c)), ZERO) for row in self.ginv]
        out = v
        for a, d in zip(coef, self.dirs):
            out = sub(out, scale(a, d))
        return out


def flat_clearance_sq(p, dirs, sets):
    """Exact squared distance from the flat p + span(dirs) to every set."""
    p = point(p)
    proj = _Complement(dirs)
    best = None
    for X in sets:
        if X.kind in ("pointCloud", "plCurve"):
            for a, b in X.segments():
                pa, pb = proj(sub(a, p)), proj(sub(b, p))
                d = segment_distance_sq(tuple(ZERO for _ in p), pa, pb)
                if best is None or d < best:
                    best = d
        elif X.kind == "polytopeUnion":
            for poly in X.payload:
                d = min_norm_point([proj(sub(v, p)) for v in poly.vertices]).squared_distance
                if best is None or d < best:
                    best = d
        else:
            raise CapabilityError("flat clearance needs a PL representation")
    return best


def _float_clearance(p, D, sets_f):
    # orthonormal complement projection in floats
    Qm = np.linalg.qr(D)[0] if D.shape[1] else np.zeros((len(p), 0))
    best = np.inf
    for kind, data in sets_f:
        if kind == "seg":
            A, B = data
            A = A - p
            B = B - p
            A = A - (A @ Qm) @ Qm.T
            B = B - (B @ Qm) @ Qm.T
            d = kernels.point_segment_min_dist(np.zeros((1, len(p))), A, B)[0]
        else:
            V = data - p
            V = V - (V @ Qm) @ Qm.T
            d = math.sqrt(max(kernels.batch_min_norm_sq(
                V, np.arange(len(V))[None, :], np.array([len(V)]))[0], 0.0))
        best = min(best, d)
    return best


def _precondition(p, X, k):
    if X.kind == "pointCloud":
        return not convm_membership(p, list(X.payload), k + 1)
    if X.kind == "plCurve":
        return not curve_convm_membership(p, list(X.payload.waypoints), k + 1)
    if X.kind == "polytopeUnion":
        verts, groups = [], []
        for poly in X.payload:
            groups.append(list(range(len(verts), len(verts) + len(poly.vertices))))
            verts.extend(poly.vertices)
        hit, _, _ = union_hull_search(p, verts, groups, k + 1)
        return hit is None
    return None


def find_avoiding_flat(p, sets, k, restarts=12, steps=150, seed=0, den=1 << 12,
                       check_precondition=True):
    """Search for an affine k-flat through p missing every set.

    Success carries a certificate whose clearance is exact against the PL
    representations.  Failure is a budget report, never a disproof.
    """
    p = point(p)
    n = len(p)
    if not 0 <= k < n:
        raise InputError(f"need 0 <= k < {n}, got k={k}")
    for X in sets:
        if X.kind == "oracle":
            raise CapabilityError("avoiding-flat search needs PL or point representations")
        if X.dim != n:
            raise InputError("set dimension differs from the point's")
    pre = None
    if check_precondition:
        pre = all(_precondition(p, X, k) for X in sets)
        if not pre:
            warnings.warn(f"p lies in conv_{k + 1} of some set; search may fail",
                          PreconditionWarning, stacklevel=2)
    rng = np.random.default_rng(seed)
    pf = np.array([float(c) for c in p])
    sets_f = []
    for X in sets:
        if X.kind == "polytopeUnion":
            for poly in X.payload:
                sets_f.append(("poly", np.array([[float(c) for c in v] for v in poly.vertices])))
        else:
            segs = X.segments()
            sets_f.append(("seg", (np.array([[float(c) for c in a] for a, _ in segs]),
                                   np.array([[float(c) for c in b] for _, b in segs]))))
    candidates = []
    for r in range(restarts):
        D = rng.normal(size=(n, k))
        best = _float_clearance(pf, D, sets_f)
        sigma = 0.5
        for _ in range(steps if k else 0):
            trial = D + sigma * rng.normal(size=D.shape)
            val = _float_clearance(pf, trial, sets_f)
            if val > best:
                D, best = trial, val
            else:
                sigma *= 0.97
        candidates.append((best, r, D))
    candidates.sort(key=lambda c: (-c[0], c[1]))
    tried = 0
    for best, r, D in candidates:
        if best <= 0:
            break
        tried += 1
        Dn = D / np.max(np.abs(D), axis=0, keepdims=True) if k else D
        dirs = tuple(tuple(rationalize(Dn[i, j], den) for i in range(n)) for j in range(k))
        if k and rank(dirs) != k:
            continue
        c = flat_clearance_sq(p, dirs, sets)
        if c > 0:
            cert = FlatCertificate(p, dirs, c, _sqrt_lower(c))
            return FlatSearchResult(True, cert, pre, {"restarts": restarts,
                                                      "float_clearance": float(best),
                                                      "exactified": tried})
    return FlatSearchResult(False, None, pre, {
        "restarts": restarts, "steps": steps, "exactified": tried,
        "best_float_clearance": float(candidates[0][0]) if candidates else 0.0})


# ------------------------------------------------------------- box boundaries

def box_boundary_oracle(lo, hi):
    """Boundary of the axis box [lo, hi] as an oracle compactum.

    The boundary of a convex body in R^n is (n-1)-convex.  Flat queries are
    answered exactly for lines and hyperplanes.
    """
    lo, hi = point(lo), point(hi)
    n = len(lo)

    def vertices():
        out = []
        for mask in range(1 << n):
            out.append(tuple(hi[i] if mask >> i & 1 else lo[i] for i in range(n)))
        return out

    def edges():
        out = []
        for v in vertices():
            for i in range(n):
                if v[i] == lo[i]:
                    w = list(v)
                    w[i] = hi[i]
                    out.append((v, tuple(w)))
        return out

    def contains(x, tol=0):
        x = point(x)
        tol = Fraction(tol)
        inside = all(lo[i] - tol <= x[i] <= hi[i] + tol for i in range(n))
        on = any(abs(x[i] - lo[i]) <= tol or abs(x[i] - hi[i]) <= tol for i in range(n))
        return inside and on

    def hyperplane_points(base, dirs):
        normal = nullspace([list(d) for d in dirs], n)[0]
        h = Hyperplane(normal, dot(normal, base))
        pts = []
        for a, b in edges():
            va, vb = h.value(a), h.value(b)
            if va == 0:
                pts.append(a)
            elif vb == 0:
                pts.append(b)
            elif (va < 0) != (vb < 0):
                t = va / (va - vb)
                pts.append(add(a, scale(t, sub(b, a))))
        return pts

    def flat_points(base, dirs):
        base = point(base)
        dirs = [point(d) for d in dirs]
        if len(dirs) == 1:
            d = dirs[0]
            t0, t1 = None, None
            for i in range(n):
                if d[i] == 0:
                    if not lo[i] <= base[i] <= hi[i]:
                        return None
                    continue
                a, b = (lo[i] - base[i]) / d[i], (hi[i] - base[i]) / d[i]
                a, b = min(a, b), max(a, b)
                t0 = a if t0 is None else max(t0, a)
                t1 = b if t1 is None else min(t1, b)
            if t0 is None or t0 > t1:
                return []
            return [add(base, scale(t, d)) for t in sorted({t0, t1})]
        if len(dirs) == n - 1:
            return hyperplane_points(base, dirs)
        raise CapabilityError("box oracle answers only line and hyperplane queries")

    def flat_intersection(base, dirs):
        pts = flat_points(base, dirs)
        return pts[-1] if pts else None

    def linear_min(c, subspace=None):
        c = point(c)
        if subspace is None:
            return tuple(lo[i] if c[i] > 0 else hi[i] for i in range(n))
        pts = hyperplane_points(tuple(ZERO for _ in range(n)), subspace)
        return min(pts, key=lambda x: dot(c, x)) if pts else None

    def sample(count, rng):
        verts = vertices()
        out = list(verts)
        per = max(1, count // max(1, len(edges())))
        for a, b in edges():
            for j in range(1, per + 1):
                out.append(add(a, scale(Fraction(j, per + 1), sub(b, a))))
        return out

    return OracleCompactum(n, sample=sample, contains=contains,
                           flat_intersection=flat_intersection, linear_min=linear_min,
                           name=f"box_boundary({lo}, {hi})", flat_points=flat_points)
