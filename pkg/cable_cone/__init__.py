"""Mapping cones for cables of the meridian in surgeries on knots"""

from .coefficients import RUMonomial, RVMonomial, UVMonomial, XPoly, embed_uv_to_x
from .knot_complex import KnotComplex, KnotGen, reflect, staircase_t2, tensor
from .local_equiv import (
    PhiTable,
    StandardComplexX,
    StandardComplexZ,
    phi_from_standard,
    standardize_x,
    standardize_z,
    to_uv_presentation,
    verify_local_equiv,
)
from .mapping_cone import (
    FilteredComplex,
    SurgerySpec,
    build_cone,
    build_cone_one_over_p,
    build_cone_plus_one,
)
from .pipeline import run_pipeline
from .reduction import ReducedComplex, d_invariant, homology_laurent, reduce
