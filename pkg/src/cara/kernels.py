"""Float screening kernels: compiled extension when importable, else numpy.

Set ``CARA_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
if not os.environ.get("CARA_PURE_PYTHON"):
    try:
        from . import _kernels as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
else:
    _impl = _kernels_py

point_segment_min_dist = _impl.point_segment_min_dist
batch_min_norm_sq = _impl.batch_min_norm_sq

__all__ = ["BACKEND", "point_segment_min_dist", "batch_min_norm_sq"]
