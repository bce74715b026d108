"""Exact rational scalars, points and small dense linear algebra.

Points are plain tuples of :class:`fractions.Fraction`.  Nothing in this module
rounds; floats handed to :func:`q` are converted exactly.
"""

from fractions import Fraction
from numbers import Rational

__all__ = [
    "Fraction", "q", "point", "qstr", "point_to_json", "point_from_json",
    "dot", "add", "sub", "scale", "lincomb", "norm2", "rref", "solve_linear",
    "nullspace", "rank", "affinely_independent", "InputError",
]

ZERO = Fraction(0)
ONE = Fraction(1)


class InputError(ValueError):
    """Raised when arguments violate an operation's preconditions."""


def q(x):
    """Coerce ``x`` to an exact Fraction (str "a/b", int, Fraction or float)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x)
    # numpy scalars and the like
    try:
        return Fraction(x)
    except TypeError:
        return Fraction(float(x))


def point(seq):
    return tuple(q(c) for c in seq)


def qstr(x):
    """Canonical string: lowest terms, positive denominator, always ``num/den``."""
    x = q(x)
    return f"{x.numerator}/{x.denominator}"


def point_to_json(p):
    return [qstr(c) for c in p]


def point_from_json(data):
    if not isinstance(data, (list, tuple)):
        raise InputError(f"point must be a JSON array, got {type(data).__name__}")
    try:
        return tuple(q(c) for c in data)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational coordinate in {data!r}: {exc}") from None


def dot(a, b):
    return sum((x * y for x, y in zip(a, b)), ZERO)


def norm2(a):
    return sum((x * x for x in a), ZERO)


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a):
    return tuple(c * x for x in a)


def lincomb(weights, points):
    """Return sum(w * p) over paired weights and points."""
    it = iter(zip(weights, points))
    try:
        w, p = next(it)
    except StopIteration:
        raise InputError("empty linear combination") from None
    acc = [w * x for x in p]
    for w, p in it:
        if w:
            for k, x in enumerate(p):
                acc[k] += w * x
    return tuple(acc)


def rref(rows):
    """Reduced row echelon form over Q.  Returns (matrix, pivot_columns)."""
    m = [list(map(q, r)) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        row_r = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    row_i = m[i]
                    m[i] = [a - f * b for a, b in zip(row_i, row_r)]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of {x : A x = 0} as a list of tuples."""
    if not rows:
        n = ncols or 0
        return [tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n)]
    m, pivots = rref(rows)
    n = len(m[0])
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(tuple(v))
    return basis


def solve_linear(A, b):
    """Solve A x = b exactly.

    Returns ``(x0, basis)`` with the general solution ``x0 + span(basis)``, or
    ``None`` when the system is inconsistent.
    """
    if not A:
        raise InputError("empty system")
    n = len(A[0])
    aug = [list(map(q, row)) + [q(bi)] for row, bi in zip(A, b)]
    m, pivots = rref(aug)
    if n in pivots:
        return None
    x0 = [ZERO] * n
    for i, pc in enumerate(pivots):
        x0[pc] = m[i][n]
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(tuple(v))
    return tuple(x0), basis


def affinely_independent(points):
    pts = list(points)
    if len(pts) <= 1:
        return True
    base = pts[0]
    diffs = [sub(p, base) for p in pts[1:]]
    return rank(diffs) == len(diffs)
