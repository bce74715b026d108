"""Exact planar coverage: is a convex polygon contained in a union of hulls?

Decided by rational polygon difference.  Convex target minus convex piece is
split along the piece's edges into convex cells, so every intermediate region
stays a list of convex polygons and no general clipper is needed.
"""

from dataclasses import dataclass
from typing import Optional

from .geometry import check_points, hull_membership, line_simplex_intersection
from .rational import ZERO, ONE, Fraction, InputError, add, point, scale, sub

__all__ = ["CoverageResult", "convex_hull_2d", "coverage_check_2d",
           "polygon_area2", "interval_coverage"]


@dataclass(frozen=True)
class CoverageResult:
    covered: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.covered


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points):
    """Counter-clockwise hull vertices, collinear points dropped."""
    pts = sorted(set(point(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull


def polygon_area2(poly):
    """Twice the signed area."""
    n = len(poly)
    if n < 3:
        return ZERO
    return sum((poly[i][0] * poly[(i + 1) % n][1] - poly[(i + 1) % n][0] * poly[i][1]
                for i in range(n)), ZERO)


def _clip(poly, a, b, keep_left):
    """Clip convex poly to the closed side of the directed line a->b."""
    out = []
    n = len(poly)
    if n == 0:
        return out
    sgn = 1 if keep_left else -1
    vals = [sgn * _cross(a, b, p) for p in poly]
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        vp, vq = vals[i], vals[(i + 1) % n]
        if vp >= 0:
            out.append(p)
        if (vp > 0 and vq < 0) or (vp < 0 and vq > 0):
            t = vp / (vp - vq)
            out.append(add(p, scale(t, sub(q, p))))
    # drop consecutive duplicates
    dedup = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def _subtract(cell, piece):
    """cell minus interior(piece) as convex cells of positive area."""
    out = []
    rest = cell
    n = len(piece)
    for k in range(n):
        a, b = piece[k], piece[(k + 1) % n]
        outside = _clip(rest, a, b, keep_left=False)
        if polygon_area2(outside) > 0:
            out.append(outside)
        rest = _clip(rest, a, b, keep_left=True)
        if polygon_area2(rest) <= 0:
            break
    return out


def _interior_candidates(cell, count):
    # barycentric weights (1, s, s^2) on a fan triangle lie on a conic, so no
    # line contains more than two of them
    v0 = cell[0]
    k = next(i for i in range(1, len(cell) - 1) if _cross(v0, cell[i], cell[i + 1]) != 0)
    v1, v2 = cell[k], cell[k + 1]
    for s in range(1, count + 1):
        w = (Fraction(1), Fraction(s), Fraction(s * s))
        tot = sum(w)
        yield tuple((w[0] * v0[c] + w[1] * v1[c] + w[2] * v2[c]) / tot for c in range(2))


def interval_coverage(intervals, lo=ZERO, hi=ONE):
    """Do closed intervals cover [lo, hi]?  Returns (covered, gap_point)."""
    reach = lo
    for a, b in sorted(intervals):
        if b < lo:
            continue
        if a > reach:
            return False, (reach + a) / 2
        reach = max(reach, b)
        if reach >= hi:
            return True, None
    return False, (reach + hi) / 2


def _segment_coverage(a, b, pieces):
    direction = sub(b, a)
    ivs = []
    for piece in pieces:
        iv = line_simplex_intersection(a, direction, piece)
        if not iv.empty:
            ivs.append((iv.lo, iv.hi))
    covered, u = interval_coverage(ivs)
    if covered:
        return CoverageResult(True)
    return CoverageResult(False, add(a, scale(u, direction)))


def coverage_check_2d(target, pieces):
    """Exact test of conv(target) inside the union of conv(piece) for pieces.

    ``target`` and each piece are vertex lists (or objects with ``vertices``)
    in the plane.  A failing result carries an uncovered rational witness.
    """
    tverts = check_points(getattr(target, "vertices", target))
    if len(tverts[0]) != 2:
        raise InputError("coverage_check_2d needs planar input")
    pverts = [check_points(getattr(pc, "vertices", pc), 2) for pc in pieces]
    hull = convex_hull_2d(tverts)
    if len(hull) == 1:
        p = hull[0]
        for pv in pverts:
            if hull_membership(p, pv):
                return CoverageResult(True)
        return CoverageResult(False, p)
    if len(hull) == 2 or polygon_area2(hull) == 0:
        return _segment_coverage(hull[0], hull[-1], pverts)
    full, thin = [], []
    for pv in pverts:
        h = convex_hull_2d(pv)
        if len(h) >= 3 and polygon_area2(h) > 0:
            full.append(h)
        else:
            thin.append(pv)
    cells = [hull]
    for piece in full:
        nxt = []
        for cell in cells:
            nxt.extend(_subtract(cell, piece))
        cells = nxt
        if not cells:
            return CoverageResult(True)
    cell = cells[0]
    for cand in _interior_candidates(cell, 2 * len(thin) + 1):
        if not any(hull_membership(cand, pv) for pv in thin):
            return CoverageResult(False, cand)
    raise AssertionError("no uncovered candidate in a positive-area cell")
