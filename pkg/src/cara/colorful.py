"""Colorful Caratheodory local search, classic and k-convex.

Both solvers keep one representative per color and drive the exact distance
from the target to the hull of the representatives strictly down.  A color
that drops out of the minimum-norm support is swapped for its point with the
smallest inner product against the current nearest point; when every color
carries positive weight the k-convex solver instead moves to a facet of the
crosspolytope join {x_1, y_1} * ... * {x_m, y_m} that the line through the
target and the nearest point meets strictly before the nearest point.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from .geometry import (
    ConvexCombination, Hyperplane, MinNormResult, hull_membership,
    line_simplex_intersection, min_norm_point,
)
from .kconvexity import CapabilityError, CompactumRep, curve_crossings
from .rational import (
    ZERO, ONE, InputError, add, dot, norm2, point, point_from_json, point_to_json,
    qstr, scale, sub,
)

__all__ = [
    "ColorSystem", "RepresentativeState", "ColorfulCertificate",
    "PreconditionError", "DescentError", "DegeneracyError", "ConsistencyError",
    "colorful_caratheodory", "parity_descent_step", "kconv_colorful",
    "verify_colorful",
]


class PreconditionError(InputError):
    """A color's hull misses the target; carries the separating functional."""

    def __init__(self, color, membership):
        self.color = color
        self.membership = membership
        super().__init__(f"target is not in the hull of color {color} "
                         f"(separator normal {membership.normal}, margin {membership.margin})")


class DescentError(AssertionError):
    pass


class DegeneracyError(RuntimeError):
    """No crosspolytope facet improves; ``table`` lists every facet tried."""

    def __init__(self, message, table):
        super().__init__(message)
        self.table = table


class ConsistencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class ColorSystem:
    colors: tuple
    target: Optional[tuple] = None

    def __post_init__(self):
        cols = tuple(c if isinstance(c, CompactumRep) else CompactumRep.points(c)
                     for c in self.colors)
        if not cols:
            raise InputError("need at least one color")
        object.__setattr__(self, "colors", cols)
        dim = cols[0].dim
        if any(c.dim != dim for c in cols):
            raise InputError("colors differ in dimension")
        tgt = tuple(ZERO for _ in range(dim)) if self.target is None else point(self.target)
        if len(tgt) != dim:
            raise InputError("target dimension differs from the colors'")
        object.__setattr__(self, "target", tgt)

    @property
    def dim(self):
        return len(self.target)

    def check(self):
        """Raise PreconditionError unless the target is in every color's hull."""
        for i, c in enumerate(self.colors):
            if c.kind == "oracle":
                continue
            res = hull_membership(self.target, c.vertices())
            if not res:
                raise PreconditionError(i, res)

    def to_json(self):
        return {"target": point_to_json(self.target),
                "colors": [c.to_json() for c in self.colors]}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or "colors" not in data:
            raise InputError("color system is missing field 'colors'")
        cols = []
        for i, c in enumerate(data["colors"]):
            try:
                if isinstance(c, list):
                    cols.append(CompactumRep.points([point_from_json(x) for x in c]))
                else:
                    cols.append(CompactumRep.from_json(c))
            except InputError as exc:
                raise InputError(f"colors[{i}]: {exc}") from None
        tgt = data.get("target")
        return cls(tuple(cols), None if tgt is None else point_from_json(tgt))


@dataclass(frozen=True)
class RepresentativeState:
    reps: tuple                 # one exact point per color
    min_norm: MinNormResult     # of reps shifted by -target
    locations: tuple = ()       # per color: vertex index, (segment, param) or None

    @property
    def squared_distance(self):
        return self.min_norm.squared_distance


@dataclass(frozen=True)
class ColorfulCertificate:
    reps: tuple
    combination: ConvexCombination
    locations: tuple = ()
    trace: tuple = ()

    @property
    def iterations(self):
        return len(self.trace)

    def to_json(self):
        locs = []
        for loc in self.locations:
            if loc is None:
                locs.append(None)
            elif isinstance(loc, tuple):
                locs.append({"segment": loc[0], "param": qstr(loc[1])})
            else:
                locs.append({"vertex": loc})
        return {"reps": [point_to_json(r) for r in self.reps],
                "combination": self.combination.to_json(),
                "locations": locs,
                "trace": [qstr(d) for d in self.trace],
                "trace_approx": [float(d) for d in self.trace]}


def _certificate(state, trace, target):
    comb = state.min_norm.support
    assert comb.evaluate(state.reps) == target
    return ColorfulCertificate(state.reps, comb, state.locations, tuple(trace))


def _state(reps, locations, target):
    mn = min_norm_point([sub(r, target) for r in reps])
    return RepresentativeState(tuple(reps), mn, tuple(locations))


def _argmin(values):
    return min(range(len(values)), key=lambda i: (values[i], i))


def colorful_caratheodory(system, max_iter=100_000):
    """Certificate that the target lies in X_1 * ... * X_{n+1} (finite colors)."""
    if not isinstance(system, ColorSystem):
        system = ColorSystem(tuple(system))
    n = system.dim
    if len(system.colors) != n + 1:
        raise InputError(f"need n + 1 = {n + 1} colors, got {len(system.colors)}")
    system.check()
    t = system.target
    colors = [c.vertices() for c in system.colors]
    shifted = [[sub(x, t) for x in c] for c in colors]
    idx = [_argmin([norm2(x) for x in c]) for c in shifted]
    state = _state([colors[i][j] for i, j in enumerate(idx)], idx, t)
    trace = []
    for _ in range(max_iter):
        d = state.squared_distance
        if trace and d >= trace[-1]:
            raise DescentError(f"distance did not decrease: {trace[-1]} -> {d}")
        trace.append(d)
        if d == 0:
            return _certificate(state, trace, t)
        z = state.min_norm.point
        absent = [i for i in range(len(colors)) if i not in state.min_norm.support.indices]
        if not absent:
            raise ConsistencyError("full-dimensional corral with nonzero distance")
        i = absent[0]
        j = _argmin([dot(x, z) for x in shifted[i]])
        if not dot(shifted[i][j], z) <= 0 < norm2(z):
            raise ConsistencyError("swap point is separated from the target")
        idx[i] = j
        state = _state([colors[c][k] for c, k in enumerate(idx)], idx, t)
    raise RuntimeError(f"no certificate within {max_iter} iterations")


def parity_descent_step(state, y_reps, target=None):
    """Move to a facet of {x_1,y_1} * ... * {x_m,y_m} closer to the target.

    Every facet picks x_i or y_i per color.  The facet whose intersection with
    the line through the target and the nearest point z starts at the smallest
    parameter t < 1 wins (t = 1 is z itself).
    """
    reps = state.reps
    m = len(reps)
    target = tuple(ZERO for _ in reps[0]) if target is None else point(target)
    ys = [point(y) for y in y_reps]
    if len(ys) != m:
        raise InputError("need one y per color")
    mn = state.min_norm
    if mn.squared_distance == 0:
        raise InputError("distance is already zero")
    if len(mn.support) != m:
        raise InputError("a zero corral weight calls for a swap, not a parity step")
    best, table = _facet_scan(mn.point, reps, ys, target)
    if best is None:
        raise DegeneracyError("no crosspolytope facet meets [target, z)", table)
    t, mask = best
    new = tuple(ys[i] if b else reps[i] for i, b in enumerate(mask))
    locs = state.locations or (None,) * m
    new_state = _state(new, locs, target)
    if not new_state.squared_distance < mn.squared_distance:
        raise DescentError("parity step failed to decrease the distance")
    return new_state, mask, t


def _facet_scan(z, reps, ys, target):
    origin = tuple(ZERO for _ in z)
    table = []
    best = None
    for mask in product((0, 1), repeat=len(reps)):
        if not any(mask):
            continue
        verts = [sub(ys[i] if b else reps[i], target) for i, b in enumerate(mask)]
        iv = line_simplex_intersection(origin, z, verts)
        table.append((mask, iv))
        if iv.empty:
            continue
        t = max(iv.lo, ZERO)
        if t > iv.hi or t >= 1:
            continue
        if best is None or t < best[0]:
            best = (t, mask)
    return best, table


def _nearest_on_curve(curve, target):
    best = None
    for i, (a, b) in enumerate(curve.segments()):
        d = sub(b, a)
        dd = norm2(d)
        t = ZERO if dd == 0 else min(ONE, max(ZERO, dot(sub(target, a), d) / dd))
        x = add(a, scale(t, d))
        key = (norm2(sub(x, target)), i)
        if best is None or key < best[0]:
            best = (key, x, (i, t))
    return best[1], best[2]


def _curve_linear_min(curve, c):
    verts = curve.waypoints
    j = _argmin([dot(c, v) for v in verts])
    nseg = len(curve.segments())
    return verts[j], (j, ZERO) if j < nseg else (nseg - 1, ONE)


def _perturb(curve, loc, eps):
    seg, t = loc
    for cand in (t + eps, t - eps):
        if 0 <= cand <= 1:
            return curve.point_at(seg, cand), (seg, cand)
    return curve.point_at(seg, t), loc


def kconv_colorful(system, k=None, subspace=None, max_iter=10_000,
                   perturb_eps=Fraction(1, 1 << 20), max_combos=256):
    """Certificate that the target lies in X_1 * ... * X_{k+1}.

    Colors must be (n-k)-convex.  k = n-1 works with polygonal curves (their
    hyperplane sections are computed exactly); other k need oracle colors
    that answer flat-intersection and linear-minimization queries.  With
    ``subspace`` (a basis of a (k+1)-dimensional linear subspace through the
    target) representatives are kept inside it.
    """
    if not isinstance(system, ColorSystem):
        system = ColorSystem(tuple(system))
    n = system.dim
    m = len(system.colors)
    k = m - 1 if k is None else k
    if m != k + 1:
        raise InputError(f"need k + 1 = {k + 1} colors, got {m}")
    if not 0 <= k <= n:
        raise InputError("k must lie in [0, n]")
    tgt = system.target
    if k == 0:
        X = system.colors[0]
        if not X.contains_exact(tgt):
            raise InputError("with k = 0 the target must lie on the color itself")
        state = _state([tgt], [_locate(X, tgt)], tgt)
        return _certificate(state, [ZERO], tgt)
    if k == n:
        finite = ColorSystem(tuple(CompactumRep.points(c.vertices()) for c in system.colors), tgt)
        cert = colorful_caratheodory(finite)
        locs = tuple(_locate(X, r) for X, r in zip(system.colors, cert.reps))
        return ColorfulCertificate(cert.reps, cert.combination, locs, cert.trace)
    for X in system.colors:
        if X.kind == "plCurve":
            if k != n - 1:
                raise CapabilityError("curve colors need k = n - 1; use oracle colors otherwise")
        elif X.kind == "oracle":
            X.payload.require("flat_intersection", "linear_min")
        else:
            raise InputError(f"{X.kind} colors are not supported by the k-convex solver")
    system.check()
    reps, locs = [], []
    for X in system.colors:
        if X.kind == "plCurve":
            x, loc = _nearest_on_curve(X.payload, tgt)
        elif subspace is not None:
            x = X.payload.flat_intersection(tgt, subspace)
            if x is None:
                raise ConsistencyError("oracle color misses the working subspace")
            x, loc = point(x), None
        else:
            x = min((point(s) for s in X.payload.sample(1, None)),
                    key=lambda s: norm2(sub(s, tgt)))
            loc = None
        reps.append(x)
        locs.append(loc)
    state = _state(reps, locs, tgt)
    curves = all(X.kind == "plCurve" for X in system.colors)
    trace = []
    for _ in range(max_iter):
        d = state.squared_distance
        if trace and d >= trace[-1]:
            raise DescentError(f"distance did not decrease: {trace[-1]} -> {d}")
        trace.append(d)
        if d == 0:
            return _certificate(state, trace, tgt)
        if curves:
            done = _segment_finish(system, state, tgt)
            if done is not None:
                trace.append(ZERO)
                return _certificate(done, trace, tgt)
        z = state.min_norm.point
        support = state.min_norm.support.indices
        if len(support) < m:
            i = next(c for c in range(m) if c not in support)
            X = system.colors[i]
            if X.kind == "plCurve":
                x, loc = _curve_linear_min(X.payload, z)
            else:
                x = X.payload.linear_min(z, subspace)
                if x is None:
                    raise ConsistencyError("oracle returned no minimizer")
                x, loc = point(x), None
            if not dot(sub(x, tgt), z) <= 0:
                raise ConsistencyError(f"color {i}: every point is separated from the target")
            reps = list(state.reps)
            locs = list(state.locations)
            reps[i], locs[i] = x, loc
            state = _state(reps, locs, tgt)
            continue
        cands = _sections(system, state, tgt)
        try:
            state = _parity_multi(state, cands, tgt, max_combos)
        except DegeneracyError:
            # one retry with the curve candidates nudged along their segments
            nudged = [[_perturb(X.payload, loc, perturb_eps) if loc is not None else (y, loc)
                       for y, loc in cs] for X, cs in zip(system.colors, cands)]
            state = _parity_multi(state, nudged, tgt, max_combos)
    raise RuntimeError(f"no certificate within {max_iter} iterations")


def _segment_finish(system, state, tgt):
    """Exact finish on the segments carrying the reps and their neighbours.

    The join of segments is the hull of their endpoints, so one membership
    test per segment tuple decides whether the target is reachable with one
    rep per segment.  Without it the descent on curves can converge without
    ever landing on the target.
    """
    options = []
    for X, loc in zip(system.colors, state.locations):
        nseg = len(X.payload.segments())
        seg = loc[0]
        options.append([s for s in (seg, seg - 1, seg + 1) if 0 <= s < nseg])
    for segs in product(*options):
        ends = []
        for X, s in zip(system.colors, segs):
            ends.extend(X.payload.segments()[s])
        res = hull_membership(tgt, ends)
        if not res:
            continue
        w = res.combination.as_dict()
        reps, locs = list(state.reps), list(state.locations)
        for i, (X, s) in enumerate(zip(system.colors, segs)):
            a, b = w.get(2 * i, ZERO), w.get(2 * i + 1, ZERO)
            if a + b == 0:
                continue
            t = b / (a + b)
            reps[i], locs[i] = X.payload.point_at(s, t), (s, t)
        new = _state(reps, locs, tgt)
        if new.squared_distance == 0:
            return new
    return None


def _sections(system, state, tgt):
    """Candidates (y, location) per color on the flat through tgt parallel to aff(reps)."""
    z = state.min_norm.point
    dirs = [sub(r, state.reps[0]) for r in state.reps[1:]]
    out = []
    for i, X in enumerate(system.colors):
        if X.kind == "plCurve":
            hits = curve_crossings(X.payload, Hyperplane(z, dot(z, tgt)))
            cs = [(x, (seg, t)) for seg, t, x in hits]
        else:
            cs = [(y, None) for y in X.payload.flat_candidates(tgt, dirs)]
        if not cs:
            raise ConsistencyError(f"color {i} misses the flat parallel to the simplex")
        out.append(cs)
    return out


def _parity_multi(state, cands, tgt, max_combos):
    """Parity step over every choice of candidates; smallest t wins, ties by order."""
    per = max(1, int(max_combos ** (1 / len(cands))))
    cands = [cs[:per] for cs in cands]
    z = state.min_norm.point
    best, tables = None, []
    for choice in product(*cands):
        ys = [y for y, _ in choice]
        found, table = _facet_scan(z, state.reps, ys, tgt)
        tables.append(table)
        if found is not None and (best is None or found[0] < best[0]):
            best = (found[0], found[1], choice)
            if found[0] == 0:
                break
    if best is None:
        raise DegeneracyError("no crosspolytope facet meets [target, z)", tables)
    _, mask, choice = best
    reps = tuple(c[0] if b else x for b, x, c in zip(mask, state.reps, choice))
    locs = tuple(c[1] if b else xl for b, xl, c in zip(mask, state.locations, choice))
    new_state = _state(reps, locs, tgt)
    if not new_state.squared_distance < state.squared_distance:
        raise DescentError("parity step failed to decrease the distance")
    return new_state


def _locate(X, x):
    if X.kind == "plCurve":
        return X.payload.locate(x)
    if X.kind in ("pointCloud", "polytopeUnion"):
        verts = X.vertices()
        return verts.index(x) if x in verts else None
    return None


def verify_colorful(system, cert):
    """Exact re-check: weights reproduce the target, each rep lies on its color."""
    if len(cert.reps) != len(system.colors):
        return False
    if cert.combination.evaluate(cert.reps) != system.target:
        return False
    return all(X.contains_exact(r) for X, r in zip(system.colors, cert.reps))
