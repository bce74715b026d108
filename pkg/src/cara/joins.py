"""Joins, conv_m membership and Caratheodory numbers of point sets and families.

Subset sweeps are ranked by the float screening kernel and then decided
exactly in that order, so the float path only affects which certificate is
found first, never the verdict.
"""

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Optional

import numpy as np

from . import kernels
from .coverage import coverage_check_2d, interval_coverage
from .geometry import (
    ConvexCombination, caratheodory_reduce, check_points, hull_membership,
)
from .rational import (
    ZERO, Fraction, InputError, add, dot, point, point_from_json,
    point_to_json, rank, scale, solve_linear, sub,
)

__all__ = [
    "VPolytope", "Family", "KappaBound", "KappaConfig", "ConvmVerdict",
    "JoinVerdict", "ResourceError", "convm_membership", "curve_convm_membership",
    "join_membership", "union_hull_search", "caratheodory_number_pointset",
    "family_caratheodory_number", "verify_kappa_witness", "AffineFrame",
    "halton",
]


class ResourceError(RuntimeError):
    """An enumeration would exceed its configured budget."""


@dataclass(frozen=True)
class VPolytope:
    vertices: tuple

    def __post_init__(self):
        verts = tuple(check_points(self.vertices))
        object.__setattr__(self, "vertices", verts)

    @property
    def dim(self):
        return len(self.vertices[0])

    def to_json(self):
        return {"vertices": [point_to_json(v) for v in self.vertices]}

    @classmethod
    def from_json(cls, data):
        try:
            verts = data["vertices"]
        except (KeyError, TypeError):
            raise InputError("member is missing field 'vertices'") from None
        if not verts:
            raise InputError("field 'vertices' must be nonempty")
        return cls(tuple(point_from_json(v) for v in verts))


@dataclass(frozen=True)
class Family:
    members: tuple
    dim: int

    def __post_init__(self):
        members = tuple(m if isinstance(m, VPolytope) else VPolytope(m)
                        for m in self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise InputError("family must have at least one member")
        for i, m in enumerate(members):
            if m.dim != self.dim:
                raise InputError(f"member {i} has dimension {m.dim}, family has {self.dim}")

    def __len__(self):
        return len(self.members)

    def union_vertices(self, indices):
        out = []
        for i in indices:
            out.extend(self.members[i].vertices)
        return out

    def to_json(self):
        return {"dim": self.dim, "members": [m.to_json() for m in self.members]}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise InputError("family must be a JSON object")
        if "dim" not in data:
            raise InputError("family is missing field 'dim'")
        if "members" not in data:
            raise InputError("family is missing field 'members'")
        members = []
        for i, m in enumerate(data["members"]):
            try:
                members.append(VPolytope.from_json(m))
            except InputError as exc:
                raise InputError(f"members[{i}]: {exc}") from None
        return cls(tuple(members), int(data["dim"]))


@dataclass(frozen=True)
class KappaBound:
    """Bracket on a Caratheodory number.

    ``upper`` is None when unknown.  ``status`` is ``exact`` (lower == upper
    and both proven), ``sampled`` (upper only survived sampling), ``theorem``
    (upper from the classical n+1 bound) or ``partial`` (budget hit).
    """

    lower: int
    upper: Optional[int]
    witness_subfamily: Optional[tuple] = None
    witness_point: Optional[tuple] = None
    status: str = "exact"

    @property
    def exact(self):
        return self.status == "exact"

    def to_json(self):
        return {
            "lower": self.lower,
            "upper": "unknown" if self.upper is None else self.upper,
            "status": self.status,
            "witness": None if self.witness_point is None else {
                "subfamily": None if self.witness_subfamily is None
                else list(self.witness_subfamily),
                "point": point_to_json(self.witness_point),
            },
        }


@dataclass(frozen=True)
class KappaConfig:
    grid_points: int = 64
    max_centroid_subsets: int = 4096
    max_subfamilies: int = 4096
    samples: int = 128


@dataclass(frozen=True)
class ConvmVerdict:
    member: bool
    combination: Optional[ConvexCombination] = None
    subsets_tested: int = 0
    exhaustive: bool = False
    groups: Optional[tuple] = None

    def __bool__(self):
        return self.member


@dataclass(frozen=True)
class JoinVerdict:
    member: bool
    choice: Optional[tuple] = None       # index into each set
    weights: Optional[tuple] = None      # nonnegative, one per set, sum 1
    tuples_tested: int = 0

    def __bool__(self):
        return self.member


def halton(index, base):
    """Radical inverse of ``index`` in ``base`` as an exact Fraction."""
    r, den = ZERO, 1
    i = index
    while i > 0:
        den *= base
        i, digit = divmod(i, base)
        r += Fraction(digit, den)
    return r


_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class AffineFrame:
    """Exact affine coordinates on the affine hull of a point list."""

    def __init__(self, points):
        pts = check_points(points)
        self.base = pts[0]
        basis = []
        for p in pts[1:]:
            d = sub(p, self.base)
            if rank(basis + [d]) > len(basis):
                basis.append(d)
        self.basis = basis
        self.dim = len(basis)
        self._gram = [[dot(a, b) for b in basis] for a in basis]

    def coords(self, p):
        if self.dim == 0:
            return ()
        d = sub(point(p), self.base)
        sol = solve_linear(self._gram, [dot(b, d) for b in self.basis])
        return sol[0]

    def lift(self, c):
        out = self.base
        for ci, b in zip(c, self.basis):
            out = add(out, scale(ci, b))
        return out


def _screen_order(p, points, candidates):
    """Order candidate index-sets by float distance from p to their hull."""
    if len(candidates) <= 1:
        return list(range(len(candidates)))
    P = np.array([[float(c) for c in sub(x, p)] for x in points])
    kmax = max(len(c) for c in candidates)
    idx = np.zeros((len(candidates), kmax), dtype=np.int64)
    counts = np.empty(len(candidates), dtype=np.int64)
    for r, cand in enumerate(candidates):
        idx[r, :len(cand)] = cand
        counts[r] = len(cand)
    dist = kernels.batch_min_norm_sq(P, idx, counts)
    return sorted(range(len(candidates)), key=lambda r: (dist[r], r))


def union_hull_search(p, points, groups, size, order="screened", budget=2_000_000):
    """Find ``size`` groups whose joint vertex hull contains p.

    ``groups`` are lists of indices into ``points``.  Returns
    ``(group_subset, combination, tested)``; ``group_subset`` is None when no
    subset works (every subset was decided exactly).
    """
    p = point(p)
    size = min(size, len(groups))
    total = comb(len(groups), size)
    if total > budget:
        raise ResourceError(f"{total} subsets exceed budget {budget}")
    subsets = list(combinations(range(len(groups)), size))
    unions = [sorted(set(i for g in s for i in groups[g])) for s in subsets]
    if order == "screened":
        ranked = _screen_order(p, points, unions)
    else:
        ranked = range(len(subsets))
    tested = 0
    for r in ranked:
        tested += 1
        verts = [points[i] for i in unions[r]]
        res = hull_membership(p, verts)
        if res:
            pairs = [(unions[r][k], w) for k, w in zip(res.combination.indices,
                                                       res.combination.weights)]
            return subsets[r], ConvexCombination.from_pairs(pairs), tested
    return None, None, tested


def convm_membership(p, X, m, screen=True):
    """Is p a convex combination of at most m points of X?"""
    if m < 1:
        raise InputError("m must be at least 1")
    p = point(p)
    pts = check_points(X, len(p))
    hm = hull_membership(p, pts)
    if not hm:
        # outside conv X refutes every subset at once
        return ConvmVerdict(False, None, 0, True)
    red = caratheodory_reduce(p, pts, hm.combination)
    if len(red) <= m:
        return ConvmVerdict(True, red, 1, False)
    groups = [[i] for i in range(len(pts))]
    hit, combo, tested = union_hull_search(
        p, pts, groups, min(m, len(pts)), "screened" if screen else "lex")
    if hit is None:
        return ConvmVerdict(False, None, tested, True)
    return ConvmVerdict(True, caratheodory_reduce(p, pts, combo), tested, False)


def curve_convm_membership(p, waypoints, m, screen=True):
    """conv_m membership for the polygonal curve through ``waypoints``.

    The join of m segments is the hull of their 2m endpoints, so p lies in
    conv_m(curve) iff some m edges have p in the hull of their endpoints.
    The combination refers to waypoint indices; ``groups`` lists the edges.
    """
    if m < 1:
        raise InputError("m must be at least 1")
    p = point(p)
    pts = check_points(waypoints, len(p))
    if len(pts) == 1:
        ok = pts[0] == p
        return ConvmVerdict(ok, ConvexCombination((0,), (1,)) if ok else None, 1, True,
                            ((0,),) if ok else None)
    edges = [(i, i + 1) for i in range(len(pts) - 1)]
    hm = hull_membership(p, pts)
    if not hm:
        return ConvmVerdict(False, None, 0, True)
    red = caratheodory_reduce(p, pts, hm.combination)
    cover = _edge_cover(sorted(red.indices), len(pts))
    if len(cover) <= m:
        return ConvmVerdict(True, red, 1, False, tuple(cover))
    hit, combo, tested = union_hull_search(
        p, pts, edges, min(m, len(edges)), "screened" if screen else "lex")
    if hit is None:
        return ConvmVerdict(False, None, tested, True)
    return ConvmVerdict(True, combo, tested, False, tuple(edges[g] for g in hit))


def _edge_cover(indices, n):
    cover = []
    k = 0
    while k < len(indices):
        i = indices[k]
        if k + 1 < len(indices) and indices[k + 1] == i + 1:
            cover.append((i, i + 1))
            k += 2
        else:
            cover.append((i, i + 1) if i + 1 < n else (i - 1, i))
            k += 1
    return cover


def join_membership(p, sets, budget=200_000, screen=True):
    """Is p = sum t_j a_j with one a_j from each set (t on the simplex)?"""
    p = point(p)
    sets = [check_points(s, len(p)) for s in sets]
    total = 1
    for s in sets:
        total *= len(s)
    if total > budget:
        raise ResourceError(f"{total} colorful tuples exceed budget {budget}")
    flat = [x for s in sets for x in s]
    offsets = np.cumsum([0] + [len(s) for s in sets[:-1]])
    tuples = list(product(*[range(len(s)) for s in sets]))
    cands = [[int(offsets[j]) + c for j, c in enumerate(t)] for t in tuples]
    ranked = _screen_order(p, flat, cands) if screen else range(len(tuples))
    tested = 0
    for r in ranked:
        tested += 1
        chosen = [sets[j][c] for j, c in enumerate(tuples[r])]
        res = hull_membership(p, chosen)
        if res:
            w = [ZERO] * len(sets)
            for k, wt in zip(res.combination.indices, res.combination.weights):
                w[k] = wt
            return JoinVerdict(True, tuples[r], tuple(w), tested)
    return JoinVerdict(False, None, None, tested)


def _halton_points_in_hull(frame, reduced, count):
    """Deterministic low-discrepancy points of the bounding box inside conv."""
    d = frame.dim
    lo = [min(x[c] for x in reduced) for c in range(d)]
    hi = [max(x[c] for x in reduced) for c in range(d)]
    out = []
    i = 1
    tries = 0
    while len(out) < count and tries < 40 * count:
        tries += 1
        cand = tuple(lo[c] + (hi[c] - lo[c]) * halton(i, _PRIMES[c % len(_PRIMES)])
                     for c in range(d))
        i += 1
        if hull_membership(cand, reduced):
            out.append(cand)
    return out


def _centroids(reduced, max_subsets, max_size):
    out = []
    for size in range(max_size, 1, -1):
        for s in combinations(range(len(reduced)), size):
            if len(out) >= max_subsets:
                return out
            out.append(tuple(sum((reduced[i][c] for i in s), ZERO) / size
                             for c in range(len(reduced[0]))))
    return out


def caratheodory_number_pointset(X, config=KappaConfig()):
    """Bracket the smallest k with conv X = conv_k X."""
    pts = sorted(set(check_points(X)))
    frame = AffineFrame(pts)
    d = frame.dim
    if d == 0:
        return KappaBound(1, 1, None, None, "exact")
    reduced = [frame.coords(x) for x in pts]
    cap = min(d + 1, len(pts))
    if d == 1:
        # conv_1 is the finite set itself; any gap point needs two
        vals = sorted(c[0] for c in reduced)
        w = frame.lift(((vals[0] + vals[1]) / 2,))
        return KappaBound(2, 2, None, w, "exact")
    lower, witness = 1, None
    cands = _halton_points_in_hull(frame, reduced, config.grid_points)
    cands += _centroids(reduced, config.max_centroid_subsets, cap)
    for c in cands:
        if lower >= cap:
            break
        while lower < cap and not convm_membership(c, reduced, lower):
            lower += 1
            witness = c
    if d == 2:
        k = lower
        while k < cap:
            pieces = [[reduced[i] for i in s] for s in combinations(range(len(reduced)), k)]
            res = coverage_check_2d(reduced, pieces)
            if res.covered:
                break
            witness = res.witness
            k += 1
        lift = None if witness is None else frame.lift(witness)
        return KappaBound(k, k, None, lift, "exact")
    lift = None if witness is None else frame.lift(witness)
    return KappaBound(lower, cap, None, lift, "exact" if lower == cap else "theorem")


def _family_cover(F, G, kappa, config):
    """Is conv(union G) covered by hulls of unions of kappa-subfamilies of G?

    Returns (covered, witness, exact).
    """
    target = F.union_vertices(G)
    frame = AffineFrame(target)
    subs = list(combinations(G, kappa))
    if frame.dim == 0:
        return True, None, True
    red_target = [frame.coords(x) for x in target]
    red_pieces = [[frame.coords(x) for x in F.union_vertices(H)] for H in subs]
    if frame.dim == 1:
        vals = [c[0] for c in red_target]
        ivs = [(min(c[0] for c in pc), max(c[0] for c in pc)) for pc in red_pieces]
        ok, gap = interval_coverage(ivs, min(vals), max(vals))
        return ok, None if ok else frame.lift((gap,)), True
    if frame.dim == 2:
        res = coverage_check_2d(red_target, red_pieces)
        return res.covered, None if res.covered else frame.lift(res.witness), True
    # sampling only; refutations are still exact
    samples = _halton_points_in_hull(frame, red_target, config.samples)
    samples += _centroids(red_target, config.samples, min(frame.dim + 1, len(red_target)))
    flat = [x for pc in red_pieces for x in pc]
    offs = np.cumsum([0] + [len(pc) for pc in red_pieces[:-1]])
    cands = [list(range(int(o), int(o) + len(pc))) for o, pc in zip(offs, red_pieces)]
    for s in samples:
        order = _screen_order(s, flat, cands)
        if not any(hull_membership(s, red_pieces[r]) for r in order):
            return False, frame.lift(s), True
    return True, None, False


def family_caratheodory_number(F, config=KappaConfig()):
    """Least kappa such that every subfamily's union hull is covered at size kappa."""
    if not isinstance(F, Family):
        F = Family(*F)
    m = len(F)
    if 2 ** m - 1 > config.max_subfamilies:
        return KappaBound(1, None, None, None, "partial")
    wG, wp = None, None
    sampled = False
    for kappa in range(1, F.dim + 2):
        failed = False
        for size in range(kappa + 1, m + 1):
            for G in combinations(range(m), size):
                ok, wit, exact = _family_cover(F, G, kappa, config)
                if not exact:
                    sampled = True
                if not ok:
                    failed = True
                    wG, wp = G, wit
                    break
            if failed:
                break
        if not failed:
            return KappaBound(kappa, kappa, wG, wp, "sampled" if sampled else "exact")
    # the classical bound is n + 1, so this is unreachable for valid input
    raise AssertionError("coverage failed at kappa = n + 1")


def verify_kappa_witness(F, bound):
    """Re-check that the witness point needs more than lower - 1 members."""
    if bound.witness_point is None:
        return bound.lower == 1
    G = bound.witness_subfamily
    p = bound.witness_point
    if not hull_membership(p, F.union_vertices(G)):
        return False
    for H in combinations(G, bound.lower - 1):
        if hull_membership(p, F.union_vertices(H)):
            return False
    return True
