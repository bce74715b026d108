"""Certified Caratheodory-type solvers over exact rationals.

Geometry works on tuples of ``fractions.Fraction``; every positive answer
carries a certificate that is re-checked exactly.  Float kernels (compiled
when available, see ``cara.kernels.BACKEND``) only rank candidates.
"""

from .rational import InputError, point, qstr
from .geometry import (
    ConvexCombination, Hyperplane, LineInterval, Membership, MinNormResult,
    caratheodory_reduce, hull_membership, line_simplex_intersection, min_norm_point,
)
from .coverage import coverage_check_2d
from .joins import (
    Family, KappaBound, KappaConfig, VPolytope, caratheodory_number_pointset,
    convm_membership, curve_convm_membership, family_caratheodory_number,
    join_membership, verify_kappa_witness,
)
from .kconvexity import (
    CompactumRep, OracleCompactum, PLCurve, box_boundary_oracle, check_k_convexity,
    curve_crossing, find_avoiding_flat, hyperplane_curve_intersection,
)
from .colorful import (
    ColorSystem, ColorfulCertificate, colorful_caratheodory, kconv_colorful,
    parity_descent_step, verify_colorful,
)
from .tverberg import (
    TverbergCertificate, kappa_rewrite, lift, sarkaria_equiv_check, simplex_vertices,
    tverberg_partition, verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "InputError", "point", "qstr", "ConvexCombination", "Hyperplane", "LineInterval",
    "Membership", "MinNormResult", "caratheodory_reduce", "hull_membership",
    "line_simplex_intersection", "min_norm_point", "coverage_check_2d", "Family",
    "KappaBound", "KappaConfig", "VPolytope", "caratheodory_number_pointset",
    "convm_membership", "curve_convm_membership", "family_caratheodory_number",
    "join_membership", "verify_kappa_witness", "CompactumRep", "OracleCompactum",
    "PLCurve", "box_boundary_oracle", "check_k_convexity", "curve_crossing",
    "find_avoiding_flat", "hyperplane_curve_intersection", "ColorSystem",
    "ColorfulCertificate", "colorful_caratheodory", "kconv_colorful",
    "parity_descent_step", "verify_colorful", "TverbergCertificate", "kappa_rewrite",
    "lift", "sarkaria_equiv_check", "simplex_vertices", "tverberg_partition",
    "verify_certificate",
]
