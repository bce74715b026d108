"""Tverberg partitions of families of polytopes through the tensor lift.

Member i is lifted to the finite color {s (x) (c, 1) : s in S, c a vertex of
C_i}, where S is a centered simplex frame.  A representative system with the
origin in its hull splits the family by tag: the parts' hulls share the point
c(s) / alpha(s).  The search drives the lifted distance to zero with two
moves, a swap for members of zero weight and a rewrite that packs each part
into at most kappa members.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Optional

from .geometry import ConvexCombination, caratheodory_reduce, hull_membership, min_norm_point
from .joins import Family, KappaConfig, family_caratheodory_number
from .rational import (
    ZERO, ONE, InputError, dot, lincomb, point, point_from_json, point_to_json,
    qstr, sub,
)

__all__ = [
    "SimplexFrame", "SarkariaLift", "TverbergCertificate", "KappaViolation",
    "BudgetExceeded", "VerifyResult", "simplex_vertices", "tensor", "lift",
    "partition_of_representatives", "sarkaria_equiv_check", "parts_intersect",
    "kappa_rewrite", "tverberg_partition", "verify_certificate",
    "recheck_coefficients",
]


class KappaViolation(RuntimeError):
    """No subfamily of size at most kappa carries q; kappa is too small."""

    def __init__(self, q, members, kappa):
        self.q, self.members, self.kappa = q, tuple(members), kappa
        super().__init__(f"{q} needs more than {kappa} of members {list(members)}")


class BudgetExceeded(RuntimeError):
    def __init__(self, message, state, trace):
        super().__init__(message)
        self.state = state
        self.trace = tuple(trace)


# ----------------------------------------------------------------- the frame

@dataclass(frozen=True)
class SimplexFrame:
    """r centered, pairwise equidistant vertices.

    For r = 2 the frame is {1, -1} on the line.  For larger r it is
    {r e_i - (1, ..., 1)}: exactly regular, lying in the hyperplane of
    coordinate sum zero of R^r (an (r-1)-dimensional space).  Rational
    regular simplices do not exist in every R^(r-1), so the extra ambient
    coordinate buys exactness.
    """

    r: int
    vertices: tuple

    @property
    def ambient_dim(self):
        return len(self.vertices[0])

    @property
    def dim(self):
        return self.r - 1

    def gram(self):
        return [[dot(a, b) for b in self.vertices] for a in self.vertices]

    def check(self):
        vs = self.vertices
        assert len(vs) == self.r
        assert all(c == 0 for c in lincomb([ONE] * self.r, vs))
        g = self.gram()
        diag = {g[i][i] for i in range(self.r)}
        off = {g[i][j] for i in range(self.r) for j in range(self.r) if i != j}
        assert len(diag) == 1 and len(off) <= 1
        return True


def simplex_vertices(r):
    if r < 2:
        raise InputError("r must be at least 2")
    if r == 2:
        vs = ((ONE,), (-ONE,))
    else:
        vs = tuple(tuple(Fraction(r if j == i else 0) - 1 for j in range(r)) for i in range(r))
    frame = SimplexFrame(r, vs)
    frame.check()
    return frame


def tensor(s, v):
    """s (x) v flattened with the frame index outermost."""
    return tuple(a * b for a in s for b in v)


@dataclass(frozen=True)
class SarkariaLift:
    frame: SimplexFrame
    family: Family
    colors: tuple       # per member: tuple of (s index, vertex index, lifted point)

    @property
    def dim(self):
        return self.frame.ambient_dim * (self.family.dim + 1)

    def point(self, s, c):
        return tensor(self.frame.vertices[s], point(c) + (ONE,))


def lift(F, r):
    if not isinstance(F, Family):
        F = Family(*F)
    frame = simplex_vertices(r)
    colors = []
    for C in F.members:
        col = []
        for j, c in enumerate(C.vertices):
            v = c + (ONE,)
            pts = [tensor(s, v) for s in frame.vertices]
            assert all(x == 0 for x in lincomb([ONE] * r, pts))
            col.extend((s, j, x) for s, x in enumerate(pts))
        colors.append(tuple(col))
    return SarkariaLift(frame, F, tuple(colors))


def partition_of_representatives(tags, r):
    """Parts P_s: indices whose tag is s.  ``tags`` holds one s per member."""
    parts = [[] for _ in range(r)]
    for i, s in enumerate(tags):
        if not 0 <= s < r:
            raise InputError(f"tag {s} of member {i} is outside the frame")
        parts[s].append(i)
    return tuple(tuple(p) for p in parts)


def parts_intersect(point_sets):
    """Do the hulls of the given point sets share a point?  (bool, point or None)

    Decided on the difference system: 0 lies in the hull of all tuples
    (a_1 - b, ..., a_{r-1} - b) with a_s from part s and b from the last part.
    """
    if any(len(ps) == 0 for ps in point_sets):
        return False, None
    sets = [[point(x) for x in ps] for ps in point_sets]
    *front, last = sets
    if not front:
        return True, last[0]
    tuples = list(product(*front, last))
    diffs = [sum((sub(a, t[-1]) for a in t[:-1]), ()) for t in tuples]
    res = hull_membership(tuple(ZERO for _ in diffs[0]), diffs)
    if not res:
        return False, None
    w = res.combination
    common = lincomb(w.weights, [tuples[i][-1] for i in w.indices])
    return True, common


def sarkaria_equiv_check(lifted, reps):
    """Compare both sides of the lift equivalence for tagged representatives.

    ``reps`` holds (s, c) per member with c a point of that member.  Returns
    (lhs, rhs): the origin in the hull of the lifted reps, and a common point
    of the part hulls of the c's.
    """
    r = lifted.frame.r
    pts = [lifted.point(s, c) for s, c in reps]
    lhs = bool(hull_membership(tuple(ZERO for _ in pts[0]), pts))
    parts = partition_of_representatives([s for s, _ in reps], r)
    rhs, _ = parts_intersect([[point(reps[i][1]) for i in P] for P in parts])
    return lhs, rhs


# -------------------------------------------------------------- kappa rewrite

@dataclass(frozen=True)
class Rewrite:
    members: tuple          # P', in increasing order
    points: tuple           # c'_i, a point of C_i per member
    combination: ConvexCombination  # over members, reproduces q
    vertex_weights: tuple   # per member: ConvexCombination over its vertices


def kappa_rewrite(q, sets, kappa):
    """Write q with at most kappa of the sets.

    ``sets`` maps member index to its vertex list.  Subsets are tried by
    increasing size, lexicographically; the first hit is reduced to an
    affinely independent support and regrouped per set.
    """
    q = point(q)
    if kappa < 1:
        raise InputError("kappa must be positive")
    keys = sorted(sets)
    for size in range(1, min(kappa, len(keys)) + 1):
        for sub_keys in combinations(keys, size):
            pts, owner = [], []
            for i in sub_keys:
                for j, v in enumerate(sets[i]):
                    pts.append(point(v))
                    owner.append((i, j))
            res = hull_membership(q, pts)
            if not res:
                continue
            comb = caratheodory_reduce(q, pts, res.combination)
            mass = {}
            for k, w in zip(comb.indices, comb.weights):
                mass.setdefault(owner[k][0], []).append((owner[k][1], w))
            members = tuple(sorted(mass))
            weights, cpts, vws = [], [], []
            for i in members:
                tot = sum((w for _, w in mass[i]), ZERO)
                vw = ConvexCombination.from_pairs((j, w / tot) for j, w in mass[i])
                weights.append(tot)
                vws.append(vw)
                cpts.append(vw.evaluate([point(v) for v in sets[i]]))
            outer = ConvexCombination(tuple(range(len(members))), tuple(weights))
            assert outer.evaluate(cpts) == q
            return Rewrite(members, tuple(cpts), outer, tuple(vws))
    raise KappaViolation(q, keys, kappa)


# ------------------------------------------------------------------- solver

@dataclass(frozen=True)
class TverbergCertificate:
    partition: tuple        # per frame vertex: sorted member indices
    witness: tuple
    coefficients: tuple     # per part: ((member, vertex, weight), ...)
    empty_parts: tuple = ()
    trace: tuple = ()
    kappa: Optional[int] = None
    kappa_status: str = "given"

    @property
    def iterations(self):
        return len(self.trace)

    def to_json(self):
        return {
            "partition": [list(p) for p in self.partition],
            "witness": point_to_json(self.witness),
            "witness_approx": [float(x) for x in self.witness],
            "coefficients": [[{"member": i, "vertex": j, "weight": qstr(w)}
                              for i, j, w in part] for part in self.coefficients],
            "empty_parts": list(self.empty_parts),
            "kappa": self.kappa,
            "kappa_status": self.kappa_status,
            "trace": [qstr(d) for d in self.trace],
            "trace_approx": [float(d) for d in self.trace],
        }

    @classmethod
    def from_json(cls, data):
        try:
            coeffs = tuple(tuple((int(c["member"]), int(c["vertex"]), Fraction(c["weight"]))
                                 for c in part) for part in data["coefficients"])
            return cls(tuple(tuple(int(i) for i in p) for p in data["partition"]),
                       point_from_json(data["witness"]), coeffs,
                       tuple(data.get("empty_parts", ())),
                       tuple(Fraction(d) for d in data.get("trace", ())),
                       data.get("kappa"), data.get("kappa_status", "given"))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"certificate is malformed: {exc}") from None


@dataclass
class _Rep:
    s: int
    c: tuple                # a point of C_i
    vw: ConvexCombination   # over vertices of C_i


def _vertex_rep(F, i, s, j):
    # member i at its vertex j with tag s
    return _Rep(s, F.members[i].vertices[j], ConvexCombination((j,), (ONE,)))


def _tag_class_optimum(F, lifted, tags):
    """Exact nearest point to the origin over all systems with these tags.

    With tags fixed, member i ranges over s_i (x) (C_i, 1), a polytope, and
    the join of polytopes is the hull of all their vertices.  The optimum is
    regrouped into one point per member; idle members keep their first vertex.
    """
    pts, owner = [], []
    for i, (C, s) in enumerate(zip(F.members, tags)):
        for j, v in enumerate(C.vertices):
            pts.append(lifted.point(s, v))
            owner.append((i, j))
    mn = min_norm_point(pts)
    mass = {}
    for k, w in zip(mn.support.indices, mn.support.weights):
        i, j = owner[k]
        mass.setdefault(i, []).append((j, w))
    reps, alpha = [], {}
    for i, (C, s) in enumerate(zip(F.members, tags)):
        if i not in mass:
            reps.append(_vertex_rep(F, i, s, 0))
            continue
        a = sum((w for _, w in mass[i]), ZERO)
        vw = ConvexCombination.from_pairs((j, w / a) for j, w in mass[i])
        reps.append(_Rep(s, vw.evaluate(C.vertices), vw))
        alpha[i] = a
    comb = ConvexCombination(tuple(sorted(alpha)), tuple(alpha[i] for i in sorted(alpha)))
    assert comb.evaluate([lifted.point(x.s, x.c) for x in reps]) == mn.point
    return reps, comb, mn


def tverberg_partition(F, r, kappa="auto", budget=None, config=KappaConfig(), init=None):
    """Partition F into r parts whose union hulls share a point.

    The state is the tag of every member.  Each round takes the exact optimum
    over all representatives with the current tags; a member of zero weight
    (one is freed by the kappa rewrite when all weights are positive) is then
    retagged by the lifted point minimizing <x, z>, which strictly lowers the
    optimum.  So no tagging repeats and the search is finite.  ``init`` sets
    the starting tags (default: member i gets tag i mod r).
    """
    if not isinstance(F, Family):
        F = Family(*F)
    m = len(F)
    status = "given"
    if kappa == "auto":
        bound = family_caratheodory_number(F, config)
        if bound.upper is None:
            raise InputError("kappa could not be bounded; pass it explicitly")
        kappa, status = bound.upper, bound.status
    kappa = int(kappa)
    if m < r * kappa + 1:
        raise InputError(f"need |F| >= r*kappa + 1 = {r * kappa + 1}, got {m}")
    lifted = lift(F, r)
    maxv = max(len(C.vertices) for C in F.members)
    budget = 10 * m * r * maxv if budget is None else budget
    tags = [i % r for i in range(m)] if init is None else [int(s) for s in init]
    if len(tags) != m or any(not 0 <= s < r for s in tags):
        raise InputError("init needs one tag in [0, r) per member")
    trace = []
    for _ in range(budget):
        reps, comb, mn = _tag_class_optimum(F, lifted, tags)
        d = mn.squared_distance
        if trace and d >= trace[-1]:
            raise AssertionError(f"lifted distance did not decrease: {trace[-1]} -> {d}")
        trace.append(d)
        if d == 0:
            return _extract(F, reps, comb, r, trace, kappa, status)
        z = mn.point
        alpha = comb.as_dict()
        zero = [i for i in range(m) if i not in alpha]
        if not zero:
            zero = _rewrite(F, reps, alpha, r, kappa)
        i = zero[0]
        best = min((dot(x, z), s, j) for s, j, x in lifted.colors[i])
        assert best[0] <= 0, "the lifted color is separated from the origin"
        assert best[1] != tags[i], "retagging kept the tag of an optimal class"
        tags[i] = best[1]
    raise BudgetExceeded(f"no certificate within {budget} iterations", list(tags), trace)


def _rewrite(F, reps, alpha, r, kappa):
    """Pack each part into at most kappa members; return indices left idle."""
    active = set()
    for s in range(r):
        P = [i for i in sorted(alpha) if reps[i].s == s]
        if not P:
            continue
        a_s = sum((alpha[i] for i in P), ZERO)
        c_s = lincomb([alpha[i] / a_s for i in P], [reps[i].c for i in P])
        rw = kappa_rewrite(c_s, {i: F.members[i].vertices for i in P}, kappa)
        for i, c, vw in zip(rw.members, rw.points, rw.vertex_weights):
            reps[i] = _Rep(s, c, vw)
            active.add(i)
    idle = [i for i in range(len(reps)) if i not in active]
    assert idle, "more than r * kappa members stayed active"
    return idle


def _extract(F, reps, support, r, trace, kappa, status):
    alpha = support.as_dict()
    parts = partition_of_representatives([x.s for x in reps], r)
    witness, coeffs, empty = None, [], []
    for s, P in enumerate(parts):
        live = [i for i in P if i in alpha]
        if not live:
            empty.append(s)
            coeffs.append(())
            continue
        a_s = sum((alpha[i] for i in live), ZERO)
        acc = {}
        for i in live:
            for j, w in zip(reps[i].vw.indices, reps[i].vw.weights):
                acc[(i, j)] = acc.get((i, j), ZERO) + alpha[i] / a_s * w
        part = tuple((i, j, w) for (i, j), w in sorted(acc.items()) if w)
        q = lincomb([w for _, _, w in part], [F.members[i].vertices[j] for i, j, _ in part])
        if witness is None:
            witness = q
        elif q != witness:
            raise AssertionError(f"part {s} reaches {q}, part 0 reaches {witness}")
        coeffs.append(part)
    return TverbergCertificate(parts, witness, tuple(coeffs), tuple(empty),
                               tuple(trace), kappa, status)


# ---------------------------------------------------------------- checking

@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    failing_part: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_certificate(F, cert):
    """Exact check from scratch: disjoint cover, witness in every part's hull."""
    m = len(F)
    seen = [i for P in cert.partition for i in P]
    if sorted(seen) != list(range(m)):
        return VerifyResult(False, None, "parts do not form a disjoint cover")
    if len(cert.witness) != F.dim:
        return VerifyResult(False, None, "witness has the wrong dimension")
    nonempty = 0
    for s, P in enumerate(cert.partition):
        if not P:
            if s not in cert.empty_parts:
                return VerifyResult(False, s, "empty part without a flag")
            continue
        nonempty += 1
        if not hull_membership(cert.witness, F.union_vertices(P)):
            return VerifyResult(False, s, "witness outside the part's hull")
    if nonempty < 2:
        return VerifyResult(False, None, "fewer than two nonempty parts")
    return VerifyResult(True)


def recheck_coefficients(F, cert):
    """Replay the stored coefficients without any hull computation."""
    for s, (P, part) in enumerate(zip(cert.partition, cert.coefficients)):
        if not P:
            continue
        if not part or any(w <= 0 for _, _, w in part):
            return VerifyResult(False, s, "missing or nonpositive weights")
        if sum((w for _, _, w in part), ZERO) != ONE:
            return VerifyResult(False, s, "weights do not sum to one")
        if any(i not in P for i, _, _ in part):
            return VerifyResult(False, s, "weight on a member outside the part")
        try:
            pts = [F.members[i].vertices[j] for i, j, _ in part]
        except IndexError:
            return VerifyResult(False, s, "vertex index out of range")
        if lincomb([w for _, _, w in part], pts) != cert.witness:
            return VerifyResult(False, s, "weights miss the witness")
    return VerifyResult(True)
