"""Pure-Python/numpy versions of the float screening kernels.

Same signatures and semantics as the compiled ``_kernels`` extension; used
when the extension is unavailable or ``CARA_PURE_PYTHON`` is set.
"""

import numpy as np

EPS = 1e-12


def point_segment_min_dist(Q, A, B):
    """Per query row of Q, the minimum Euclidean distance to segments [A_i, B_i]."""
    Q = np.ascontiguousarray(Q, dtype=np.float64)
    A = np.ascontiguousarray(A, dtype=np.float64)
    B = np.ascontiguousarray(B, dtype=np.float64)
    out = np.empty(Q.shape[0])
    D = B - A
    dd = np.einsum("ij,ij->i", D, D)
    safe = np.where(dd > 0, dd, 1.0)
    for r in range(Q.shape[0]):
        W = Q[r] - A
        t = np.einsum("ij,ij->i", W, D) / safe
        t = np.clip(np.where(dd > 0, t, 0.0), 0.0, 1.0)
        diff = W - t[:, None] * D
        out[r] = np.sqrt(np.min(np.einsum("ij,ij->i", diff, diff)))
    return out


def _affine_min(P):
    s = P.shape[0]
    K = np.zeros((s + 1, s + 1))
    K[:s, :s] = P @ P.T
    K[:s, s] = 1.0
    K[s, :s] = 1.0
    rhs = np.zeros(s + 1)
    rhs[s] = 1.0
    try:
        sol = np.linalg.solve(K, rhs)
    except np.linalg.LinAlgError:
        return None
    return sol[:s]


def _min_norm_sq(P):
    norms = np.einsum("ij,ij->i", P, P)
    scale = max(1.0, float(norms.max()))
    j = int(np.argmin(norms))
    S = [j]
    w = np.array([1.0])
    x = P[j].copy()
    for _ in range(200):
        xx = float(x @ x)
        if xx <= EPS * scale:
            return 0.0
        vals = P @ x
        j = int(np.argmin(vals))
        if vals[j] > xx - EPS * scale or j in S:
            break
        S.append(j)
        w = np.append(w, 0.0)
        for _ in range(200):
            v = _affine_min(P[S])
            if v is None:
                return xx
            if np.all(v > EPS):
                w = v
                x = w @ P[S]
                break
            theta, block = 2.0, -1
            for pos in range(len(S)):
                if v[pos] <= EPS:
                    den = w[pos] - v[pos]
                    ratio = w[pos] / den if den > 0 else 0.0
                    if ratio < theta:
                        theta, block = ratio, pos
            w = theta * v + (1.0 - theta) * w
            keep = [k for k in range(len(S)) if k != block and w[k] > EPS]
            S = [S[k] for k in keep]
            w = w[keep]
            w = w / w.sum()
            x = w @ P[S]
    return float(x @ x)


def batch_min_norm_sq(P, idx, counts):
    """Squared distance from the origin to conv(P[idx[m, :counts[m]]]) for each m."""
    P = np.ascontiguousarray(P, dtype=np.float64)
    idx = np.asarray(idx, dtype=np.int64)
    counts = np.asarray(counts, dtype=np.int64)
    out = np.empty(idx.shape[0])
    for m in range(idx.shape[0]):
        out[m] = _min_norm_sq(P[idx[m, :counts[m]]])
    return out
