"""Brute-force oracles, written without any cara code.

Exact ones use their own Fraction elimination; the partition oracle uses a
float LP (scipy) so it shares nothing with the exact solvers it checks.
"""

from fractions import Fraction
from itertools import combinations, product

import numpy as np
from scipy.optimize import linprog


def _solve(A, b):
    """Unique solution of the square-or-tall system A x = b, or None."""
    rows = [[Fraction(v) for v in row] + [Fraction(bb)] for row, bb in zip(A, b)]
    n = len(A[0])
    r = 0
    piv = []
    for c in range(n):
        k = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if k is None:
            return None       # not full column rank
        rows[r], rows[k] = rows[k], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * bv for a, bv in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    return [rows[i][-1] for i in range(n)]


def _independent(pts):
    if len(pts) <= 1:
        return True
    d = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
    # rank via elimination on the difference vectors
    M = [list(map(Fraction, row)) for row in d]
    rank = 0
    cols = len(M[0])
    for c in range(cols):
        k = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if k is None:
            continue
        M[rank], M[k] = M[k], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank == len(d)


def face_min_norm(points):
    """Nearest point of the hull to the origin by enumerating all faces.

    For every affinely independent subset the origin is projected onto its
    affine hull; projections with nonnegative barycentric weights are hull
    points, and the true minimizer is one of them.
    """
    pts = [tuple(Fraction(c) for c in p) for p in dict.fromkeys(map(tuple, points))]
    best = None
    for size in range(1, len(pts) + 1):
        for sub in combinations(pts, size):
            if not _independent(list(sub)):
                continue
            s = len(sub)
            G = [[sum(a * b for a, b in zip(sub[i], sub[j])) for j in range(s)] + [1]
                 for i in range(s)]
            G.append([1] * s + [0])
            sol = _solve(G, [0] * s + [1])
            if sol is None:
                continue
            lam = sol[:s]
            if any(l < 0 for l in lam):
                continue
            z = tuple(sum(l * p[c] for l, p in zip(lam, sub)) for c in range(len(sub[0])))
            d = sum(c * c for c in z)
            if best is None or d < best[1]:
                best = (z, d)
    return best


def bary_member(p, points):
    """Exact p in conv(points) by barycentric solves on independent subsets."""
    p = tuple(Fraction(c) for c in p)
    pts = [tuple(Fraction(c) for c in x) for x in dict.fromkeys(map(tuple, points))]
    dim = len(p)
    for size in range(1, min(dim + 1, len(pts)) + 1):
        for sub in combinations(pts, size):
            if not _independent(list(sub)):
                continue
            A = [[x[c] for x in sub] for c in range(dim)] + [[1] * size]
            lam = _solve(A, list(p) + [1])
            if lam is not None and all(l >= 0 for l in lam):
                return True
    return False


def colorful_exists(colors, target=None):
    dim = len(colors[0][0])
    target = target or (0,) * dim
    for tup in product(*colors):
        if bary_member(target, tup):
            return True
    return False


def hulls_meet_lp(A, B):
    """Float LP: do conv(A) and conv(B) intersect?"""
    A = np.array([[float(c) for c in a] for a in A])
    B = np.array([[float(c) for c in b] for b in B])
    na, nb = len(A), len(B)
    Aeq = np.zeros((A.shape[1] + 2, na + nb))
    Aeq[:A.shape[1], :na] = A.T
    Aeq[:A.shape[1], na:] = -B.T
    Aeq[-2, :na] = 1
    Aeq[-1, na:] = 1
    beq = np.zeros(A.shape[1] + 2)
    beq[-2:] = 1
    res = linprog(np.zeros(na + nb), A_eq=Aeq, b_eq=beq, bounds=[(0, None)] * (na + nb),
                  method="highs")
    return res.status == 0


def two_partitions_with_common_point(members):
    """All 2-partitions (as index tuples of the first part) whose union hulls meet."""
    m = len(members)
    out = []
    for mask in range(1, 2 ** (m - 1)):
        P = [i for i in range(m) if mask >> i & 1]
        Q = [i for i in range(m) if not mask >> i & 1]
        A = [v for i in P for v in members[i]]
        B = [v for i in Q for v in members[i]]
        if hulls_meet_lp(A, B):
            out.append(tuple(P))
    return out


def sampled_kappa(members, samples_per_subfamily=40, seed=0):
    """Least kappa with every sampled hull point covered by a kappa-subfamily.

    Samples are random rational convex combinations plus all centroids.
    Sampling can only miss holes, so this is a lower estimate.
    """
    rng = np.random.default_rng(seed)
    m = len(members)
    pts_of = lambda G: [v for i in G for v in members[i]]
    samples = {}
    for size in range(1, m + 1):
        for G in combinations(range(m), size):
            V = pts_of(G)
            cand = [tuple(sum(Fraction(1, len(V)) * v[c] for v in V) for c in range(len(V[0])))]
            for _ in range(samples_per_subfamily):
                w = [Fraction(int(x)) for x in rng.integers(0, 6, size=len(V))]
                if sum(w) == 0:
                    continue
                tot = sum(w)
                cand.append(tuple(sum(wi * v[c] for wi, v in zip(w, V)) / tot
                                  for c in range(len(V[0]))))
            samples[G] = cand
    for kappa in range(1, len(members[0][0]) + 2):
        ok = True
        for G, cand in samples.items():
            if len(G) <= kappa:
                continue
            for q in cand:
                if not any(bary_member(q, pts_of(H)) for H in combinations(G, kappa)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return kappa
    return None
