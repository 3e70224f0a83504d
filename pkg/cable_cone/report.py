"""Machine-readable reports."""

import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml

from .cfk_format import format_cfk, load_cfk
from .knot_complex import dual
from .mapping_cone import SurgerySpec
from .pipeline import STATUS_INCOMPLETE, PipelineResult, knot_from_spec, run_pipeline
from .reduction import ReducedComplex
from .settings import AppSettings

_LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_INCOMPLETE = 2


@dataclass
class ComputeRequest:
    """Inputs of one compute run."""

    knot: Optional[str] = None
    """Built-in knot, e.g. torus:2,3."""

    cfk_path: Optional[Path] = None
    """Knot complex file (used when knot is not set)."""

    cable_n: int = 1
    surgery: SurgerySpec = field(default_factory=SurgerySpec)
    window: Optional[Tuple[int, int]] = None
    mirror: bool = False


@dataclass
class Report:
    input: Dict[str, Any]
    generators: Dict[str, int]
    reduced_differential: List[Dict[str, Any]] = field(default_factory=list)
    standard_sequence: List[int] = field(default_factory=list)
    standard_sequence_status: str = "ok"
    """not_applicable when the surgered manifold is not an L-space."""

    standard_sequence_x: List[Dict[str, Any]] = field(default_factory=list)
    phi: Dict[str, int] = field(default_factory=dict)
    phi_x: Dict[str, int] = field(default_factory=dict)
    d_invariant: str = "0"
    hat_rank: int = 0
    status: str = "ok"
    provenance_digest: str = ""
    partial: Dict[str, List[str]] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "input": self.input,
            "generators": self.generators,
            "reduced_differential": self.reduced_differential,
            "standard_sequence": self.standard_sequence,
            "standard_sequence_status": self.standard_sequence_status,
            "standard_sequence_x": self.standard_sequence_x,
            "phi": self.phi,
            "phi_x": self.phi_x,
            "d_invariant": self.d_invariant,
            "hat_rank": self.hat_rank,
            "status": self.status,
            "provenance_digest": self.provenance_digest,
            "partial": self.partial,
        }

    @staticmethod
    def from_dict(report_dict: Dict[str, Any]) -> "Report":
        return Report(
            input=report_dict["input"],
            generators=report_dict["generators"],
            reduced_differential=report_dict.get("reduced_differential", []),
            standard_sequence=report_dict.get("standard_sequence", []),
            standard_sequence_status=report_dict.get(
                "standard_sequence_status", "ok"
            ),
            standard_sequence_x=report_dict.get("standard_sequence_x", []),
            phi=report_dict.get("phi", {}),
            phi_x=report_dict.get("phi_x", {}),
            d_invariant=report_dict.get("d_invariant", "0"),
            hat_rank=report_dict.get("hat_rank", 0),
            status=report_dict.get("status", "ok"),
            provenance_digest=report_dict.get("provenance_digest", ""),
            partial=report_dict.get("partial", {}),
        )


def provenance_digest(reduced: ReducedComplex) -> str:
    hasher = hashlib.sha256()
    for cancellation in reduced.cancelled:
        hasher.update(
            f"{cancellation.source} {cancellation.target} "
            f"{cancellation.power}\n".encode("utf-8")
        )

    return hasher.hexdigest()


def build_report(result: PipelineResult, input_echo: Dict[str, Any]) -> Report:
    reduced = result.reduced
    differential = []
    for source, target, power in reduced.arrows():
        drop_i, drop_j = reduced.drop(source, target, power)
        differential.append(
            {
                "source": source,
                "target": target,
                "u_power": power,
                "drop_i": drop_i,
                "drop_j": str(drop_j),
            }
        )

    report = Report(
        input=input_echo,
        generators={"cone": len(result.cone), "reduced": len(reduced)},
        reduced_differential=differential,
        d_invariant=str(result.d_invariant),
        hat_rank=result.hat_rank,
        status=result.status,
        standard_sequence_status=result.standard_z_status,
        provenance_digest=provenance_digest(reduced),
        partial=result.partial,
    )

    if result.standard_z is not None:
        report.standard_sequence = list(result.standard_z.seq)

    if result.standard_x is not None:
        report.standard_sequence_x = [
            {"sign": edge.sign, "pair": [edge.i, edge.j]}
            for edge in result.standard_x.edges
        ]

    report.phi = {str(key): value for key, value in sorted(result.phi.values.items())}
    report.phi_x = {
        f"{key[0]},{key[1]}": value  # type: ignore[index]
        for key, value in sorted(result.phi_x.values.items())
    }

    return report


def run_compute(
    request: ComputeRequest, settings: Optional[AppSettings] = None
) -> Tuple[Report, int]:
    """Run the pipeline and return (report, exit code).

    Input errors are raised, not reported.
    """
    if request.knot:
        knot = knot_from_spec(request.knot)
    elif request.cfk_path is not None:
        knot = load_cfk(request.cfk_path)
    else:
        raise ValueError("Either a knot or a complex file is required")

    if request.mirror:
        knot = dual(knot)

    result = run_pipeline(
        knot, request.cable_n, request.surgery, request.window, settings
    )
    input_echo = {
        "knot": request.knot,
        "cfk": format_cfk(knot).splitlines(),
        "cable_n": request.cable_n,
        "surgery": str(request.surgery),
        "window": list(result.cone.meta.window),
        "mirror": request.mirror,
    }

    report = build_report(result, input_echo)
    exit_code = EXIT_INCOMPLETE if result.status == STATUS_INCOMPLETE else EXIT_OK
    return (report, exit_code)


def serialize_report(report: Report, fmt: str = "json") -> str:
    """Deterministic json or text (YAML) rendering."""
    report_dict = report.to_dict()
    if fmt == "json":
        return json.dumps(report_dict, sort_keys=True, separators=(",", ":"))

    if fmt == "text":
        return yaml.safe_dump(report_dict, sort_keys=True, allow_unicode=True)

    raise ValueError(f"Unknown report format: {fmt}")
