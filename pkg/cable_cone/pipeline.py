"""Build, reduce, standardize, and extract invariants."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import StandardizationIncomplete
from .knot_complex import KnotComplex, staircase_t2
from .local_equiv import (
    PhiTable,
    Side,
    StandardComplexX,
    StandardComplexZ,
    phi_from_standard,
    standardize_x,
    standardize_z,
    to_uv_presentation,
)
from .mapping_cone import FilteredComplex, SurgerySpec, build_cone
from .reduction import ReducedComplex, d_invariant, hat_rank, reduce
from .settings import AppSettings

_LOGGER = logging.getLogger(__name__)

STATUS_OK = "ok"
STATUS_INCOMPLETE = "standardization_incomplete"
STATUS_NOT_APPLICABLE = "not_applicable"


def knot_from_spec(spec: str) -> KnotComplex:
    """Parse "torus:2,<q>" or "unknot"."""
    text = spec.strip().lower()
    if text == "unknot":
        return staircase_t2(1)

    family, _, params = text.partition(":")
    if family != "torus":
        raise ValueError(f"Unknown knot family: {spec}")

    parts = [part.strip() for part in params.split(",")]
    if (len(parts) != 2) or (parts[0] != "2"):
        raise ValueError(f"Only torus:2,<q> knots are supported: {spec}")

    try:
        q = int(parts[1])
    except ValueError as err:
        raise ValueError(f"Invalid torus knot: {spec}") from err

    return staircase_t2(q)


@dataclass
class PipelineResult:
    knot: KnotComplex
    cone: FilteredComplex
    reduced: ReducedComplex
    d_invariant: Fraction
    hat_rank: int
    presentation: KnotComplex
    standard_z: Optional[StandardComplexZ] = None
    standard_x: Optional[StandardComplexX] = None
    phi: PhiTable = field(default_factory=PhiTable)
    phi_x: PhiTable = field(default_factory=PhiTable)
    status: str = STATUS_OK
    standard_z_status: str = STATUS_OK
    """ok, not_applicable, or standardization_incomplete."""

    partial: Dict[str, List[str]] = field(default_factory=dict)

    @property
    def z_applicable(self) -> bool:
        """Standard complexes over F2[U,V]/(UV) need an L-space."""
        return self.hat_rank == 1


def run_pipeline(
    knot: KnotComplex,
    n: int,
    surgery: SurgerySpec,
    window: Optional[Tuple[int, int]] = None,
    settings: Optional[AppSettings] = None,
) -> PipelineResult:
    """Run every stage on one input.

    Raises on input errors. Standardization over F2[U,V]/(UV) is skipped
    when the surgered manifold is not an L-space. Standardization over X
    always runs, and status is standardization_incomplete only when it does
    not finish.
    """
    if settings is None:
        settings = AppSettings()

    cone = build_cone(knot, n, surgery, window=window, padding=settings.window_padding)
    reduced = reduce(cone)
    result = PipelineResult(
        knot=knot,
        cone=cone,
        reduced=reduced,
        d_invariant=d_invariant(reduced),
        hat_rank=hat_rank(reduced),
        presentation=to_uv_presentation(reduced),
    )

    if result.z_applicable:
        try:
            result.standard_z = standardize_z(
                result.presentation, settings.max_standardize_passes
            )
            result.phi = phi_from_standard(result.standard_z)
        except StandardizationIncomplete as err:
            _LOGGER.warning("Standardization over F2[U,V]/(UV) incomplete: %s", err)
            result.standard_z_status = STATUS_INCOMPLETE
            result.partial = err.partial
    else:
        _LOGGER.debug(
            "Not an L-space (hat rank %s), skipping F2[U,V]/(UV)", result.hat_rank
        )
        result.standard_z_status = STATUS_NOT_APPLICABLE

    try:
        result.standard_x = standardize_x(
            result.presentation, settings.max_standardize_passes
        )
        result.phi_x = phi_from_standard(result.standard_x, Side.U)
    except StandardizationIncomplete as err:
        _LOGGER.warning("Standardization over X incomplete: %s", err)
        result.status = STATUS_INCOMPLETE
        result.partial = err.partial

    return result
