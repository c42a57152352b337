"""Exact quasitriangular Hopf algebra toolkit.

Twisted braided duals, elliptic and Heisenberg doubles, braid group
representations and the SL2(Z)~ action, all over Q or Q(zeta_N) with
zero-tolerance checks.
"""

__version__ = "0.1.0"

from .exactfield import Cyclotomic, Field, ParseError, QQ
from .tensorcore import AlgebraData, LegElement, LinMap, NotInvertible
from .hopf import (
    HopfData,
    InternalConventionError,
    cyclic_group,
    dual_hopf,
    example_drinfeld_double,
    example_group_algebra,
    example_sweedler,
    regular_module,
    symmetric_group,
    trivial_R,
    validate_hopf,
)
from .quasitriangular import QTStructure, find_ribbon, validate_qt
from .braided_dual import build_braided_dual, check_k_reflection, is_factorizable
from .doubles import (
    build_Phi,
    build_T,
    build_elliptic,
    build_heisenberg,
    check_T_hexagons,
    check_elliptic_relation,
    universal_morphism,
)
from .reps import (
    build_braid_rep,
    build_mcg_action,
    check_fourier,
    check_mcg_relations,
    check_presentation,
    fourier_transform,
)
from .report import Report
from .schema import dump_hopf, load_hopf

__all__ = [
    "AlgebraData",
    "Cyclotomic",
    "Field",
    "HopfData",
    "InternalConventionError",
    "LegElement",
    "LinMap",
    "NotInvertible",
    "ParseError",
    "QQ",
    "QTStructure",
    "Report",
    "build_Phi",
    "build_T",
    "build_braid_rep",
    "build_braided_dual",
    "build_elliptic",
    "build_heisenberg",
    "build_mcg_action",
    "check_T_hexagons",
    "check_elliptic_relation",
    "check_fourier",
    "check_k_reflection",
    "check_mcg_relations",
    "check_presentation",
    "cyclic_group",
    "dual_hopf",
    "dump_hopf",
    "example_drinfeld_double",
    "example_group_algebra",
    "example_sweedler",
    "find_ribbon",
    "fourier_transform",
    "is_factorizable",
    "load_hopf",
    "regular_module",
    "symmetric_group",
    "trivial_R",
    "universal_morphism",
    "validate_hopf",
    "validate_qt",
]
