"""Deterministic SVG drawings of planar instances and certificates."""

from .coverage import convex_hull_2d
from .rational import InputError

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
           "#e377c2", "#17becf")


def _fmt(x):
    return f"{float(x):.6f}".rstrip("0").rstrip(".")


class _Canvas:
    def __init__(self, pts, size=480, pad=24):
        xs = [float(p[0]) for p in pts] or [0.0]
        ys = [float(p[1]) for p in pts] or [0.0]
        self.x0, self.y1 = min(xs), max(ys)
        span = max(max(xs) - self.x0, self.y1 - min(ys), 1e-9)
        self.k = (size - 2 * pad) / span
        self.pad, self.size = pad, size
        self.items = []

    def xy(self, p):
        return (_fmt(self.pad + (float(p[0]) - self.x0) * self.k),
                _fmt(self.pad + (self.y1 - float(p[1])) * self.k))

    def poly(self, pts, stroke, fill="none", width=2, dash=None, closed=True):
        coords = " ".join(",".join(self.xy(p)) for p in pts)
        tag = "polygon" if closed and len(pts) > 2 else "polyline"
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(f'<{tag} points="{coords}" fill="{fill}" stroke="{stroke}" '
                          f'stroke-width="{width}"{extra}/>')

    def dot(self, p, color, r=4, marker=False):
        x, y = self.xy(p)
        if marker:
            self.items.append(f'<path d="M{x} {y} m-6 -6 l12 12 m0 -12 l-12 12" '
                              f'stroke="{color}" stroke-width="2.5"/>')
        else:
            self.items.append(f'<circle cx="{x}" cy="{y}" r="{r}" fill="{color}"/>')

    def render(self):
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.size}" '
                f'height="{self.size}" viewBox="0 0 {self.size} {self.size}">')
        return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>']
                         + self.items + ["</svg>", ""])


def render_family(F, cert=None, size=480):
    """Members (colored by part when a certificate is given), overall hull, witness."""
    if F.dim != 2:
        raise InputError(f"rendering needs dim 2, got {F.dim}")
    allpts = [v for m in F.members for v in m.vertices]
    cv = _Canvas(allpts + ([cert.witness] if cert is not None else []), size)
    hull = convex_hull_2d(allpts)
    if len(hull) >= 2:
        cv.poly(hull, "#999999", width=1, dash="4 3")
    owner = {}
    if cert is not None:
        for s, P in enumerate(cert.partition):
            for i in P:
                owner[i] = s
    for i, m in enumerate(F.members):
        color = PALETTE[owner.get(i, i) % len(PALETTE)]
        verts = convex_hull_2d(m.vertices)
        if len(verts) == 1:
            cv.dot(verts[0], color, r=5)
        else:
            fill = color + "33" if len(verts) > 2 else "none"
            cv.poly(verts, color, fill=fill, width=3)
    if cert is not None:
        for s, P in enumerate(cert.partition):
            pts = [v for i in P for v in F.members[i].vertices]
            h = convex_hull_2d(pts) if pts else []
            if len(h) >= 2:
                cv.poly(h, PALETTE[s % len(PALETTE)], width=1, dash="2 2")
        cv.dot(cert.witness, "black", marker=True)
    return cv.render()


def render_points(pts, certificate_points=(), size=480):
    pts = list(pts)
    if pts and len(pts[0]) != 2:
        raise InputError(f"rendering needs dim 2, got {len(pts[0])}")
    cv = _Canvas(pts + list(certificate_points), size)
    hull = convex_hull_2d(pts)
    if len(hull) >= 2:
        cv.poly(hull, "#999999", width=1, dash="4 3")
    for p in pts:
        cv.dot(p, PALETTE[0])
    for p in certificate_points:
        cv.dot(p, "black", marker=True)
    return cv.render()


def render_curves(curves, reps=(), target=(0, 0), size=480):
    allpts = [w for c in curves for w in c]
    if allpts and len(allpts[0]) != 2:
        raise InputError("rendering needs dim 2")
    cv = _Canvas(allpts + list(reps) + [target], size)
    for i, c in enumerate(curves):
        cv.poly(list(c), PALETTE[i % len(PALETTE)], closed=False, width=3)
    if reps:
        cv.poly(list(reps), "black", width=1, dash="3 2")
        for p in reps:
            cv.dot(p, "black", r=3)
    cv.dot(target, "black", marker=True)
    return cv.render()
