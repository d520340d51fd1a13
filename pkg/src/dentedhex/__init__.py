"""Exact-arithmetic verification of lozenge-tiling generating functions.

Subpackages:

* exactalg: Laurent polynomials and rational functions over Q in q, X, Y
  and the abbreviation T = q^{2x}, plus q-Pochhammer helpers.
* paths:    weighted lattice paths, recursion oracle and closed forms.
* regions:  dented half/quarter hexagons, tiling enumeration, SVG.
* lgv:      determinants of path matrices versus brute-force families.
* detid:    the q-Pochhammer determinant identity and its proof apparatus.
* cli:      the ``dentedhex`` command-line tool.
"""

from .exactalg import MPoly, RatFunc, qbinom, qexp, qpoch, qpow
from .paths import WeightMode, gf_brute, gf_closed, gfone, gftwo, gfthree
from .regions import Region, RegionKind, Tiling, enumerate_tilings, tiling_gf
from .lgv import QMatrix, determinant, family_gf_brute, lgv_matrix_half
from .detid import (AdmissibleSeq, DyckPath, enumerate_admissible,
                    theorem_check, triangulating_matrix, verify_triangulization)

__all__ = [
    "MPoly", "RatFunc", "qbinom", "qexp", "qpoch", "qpow",
    "WeightMode", "gf_brute", "gf_closed", "gfone", "gftwo", "gfthree",
    "Region", "RegionKind", "Tiling", "enumerate_tilings", "tiling_gf",
    "QMatrix", "determinant", "family_gf_brute", "lgv_matrix_half",
    "AdmissibleSeq", "DyckPath", "enumerate_admissible", "theorem_check",
    "triangulating_matrix", "verify_triangulization",
]

__version__ = "0.1.0"
